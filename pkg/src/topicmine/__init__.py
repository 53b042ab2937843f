"""Exact top-k high-utility itemset mining with positive and negative
utilities, plus a brute-force oracle and an ablation benchmark harness."""

from .database import (
    DatabaseError,
    InvalidParamsError,
    ItemSummary,
    MalformedLineError,
    MixedSignItemError,
    Transaction,
    TuMismatchError,
    UtilityDatabase,
    ZeroUtilityError,
    compute_item_summaries,
    generate_synthetic,
    parse_spmf,
    write_spmf,
)
from .miner import InvalidKError, MineResult, MineStats, MinerConfig, VARIANTS, mine
from .oracle import OracleResult, TooManyItemsError, enumerate_topk, utility_of
from .topk import TopKStore

__all__ = [
    "DatabaseError",
    "InvalidKError",
    "InvalidParamsError",
    "ItemSummary",
    "MalformedLineError",
    "MineResult",
    "MineStats",
    "MinerConfig",
    "MixedSignItemError",
    "OracleResult",
    "TooManyItemsError",
    "TopKStore",
    "Transaction",
    "TuMismatchError",
    "UtilityDatabase",
    "VARIANTS",
    "ZeroUtilityError",
    "compute_item_summaries",
    "enumerate_topk",
    "generate_synthetic",
    "mine",
    "parse_spmf",
    "utility_of",
    "write_spmf",
]

__version__ = "0.1.0"
