"""Command-line surface: mine, verify against the oracle, benchmark the
ablation variants, generate synthetic data, and run the oracle directly.

Exit codes: 0 success, 1 data error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .database import DatabaseError, UtilityDatabase, generate_synthetic, parse_spmf, write_spmf
from .miner import VARIANTS, MineResult, MinerConfig, mine
from .oracle import TooManyItemsError, enumerate_topk

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3


def _load(path: str, lenient: bool) -> tuple[UtilityDatabase, str]:
    with open(path, "rb") as fh:
        data = fh.read()
    db = parse_spmf(data.decode("utf-8"), strict=not lenient)
    return db, hashlib.sha256(data).hexdigest()


def _labelled(db: UtilityDatabase, itemset: tuple[int, ...]) -> list[int]:
    return sorted(db.labels[i] for i in itemset)


def _result_block(db: UtilityDatabase, result: MineResult) -> dict:
    return {
        "top_k": [
            {"items": _labelled(db, itemset), "utility": utility}
            for itemset, utility in result.top_k
        ],
        "final_min_util": result.final_min_util,
        "stats": {
            "candidates": result.stats.candidates,
            "projections": result.stats.projections,
            "merges": result.stats.merges,
            "runtime_ms": result.stats.runtime_ms,
            "peak_entries": result.stats.peak_entries,
        },
    }


def cmd_mine(args: argparse.Namespace) -> int:
    db, digest = _load(args.input, args.lenient)
    config = MinerConfig.variant(args.k, args.variant)
    result = mine(db, config)
    if args.format == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "dataset": {"path": args.input, "sha256": digest,
                        "transactions": len(db.transactions), "items": db.item_count},
            "config": {"k": args.k, "variant": args.variant},
            "result": _result_block(db, result),
        }
        print(json.dumps(report, indent=2))
    else:
        for itemset, utility in result.top_k:
            print(f"{' '.join(str(lab) for lab in _labelled(db, itemset))}\t{utility}")
        print(f"# final_min_util={result.final_min_util} "
              f"candidates={result.stats.candidates} "
              f"runtime_ms={result.stats.runtime_ms:.2f}")
    return EXIT_OK


def _as_set(pairs) -> set[tuple[frozenset[int], int]]:
    return {(frozenset(itemset), utility) for itemset, utility in pairs}


def _verify_one(db: UtilityDatabase, k_values: list[int], label: str) -> list[str]:
    failures = []
    expected_full = enumerate_topk(db, max(k_values)).top_k
    for k in k_values:
        expected = _as_set(expected_full[:k])
        for name in VARIANTS:
            got = _as_set(mine(db, MinerConfig.variant(k, name)).top_k)
            if got != expected:
                failures.append(
                    f"{label} k={k} variant={name}: "
                    f"missing={sorted(expected - got)} extra={sorted(got - expected)}"
                )
    return failures


def cmd_verify(args: argparse.Namespace) -> int:
    k_values = args.k
    failures: list[str] = []
    cases = 0
    if args.input:
        db, _ = _load(args.input, args.lenient)
        failures += _verify_one(db, k_values, args.input)
        cases += 1
    for seed in range(args.seeds):
        db = generate_synthetic(
            n_transactions=20, n_items=8, avg_len=4,
            utility_range=(1, 9), negative_fraction=0.3, seed=seed,
        )
        failures += _verify_one(db, k_values, f"seed={seed}")
        cases += 1
    if cases == 0:
        print("nothing to verify: pass --input and/or --seeds", file=sys.stderr)
        return EXIT_USAGE
    if failures:
        for line in failures:
            print(f"FAIL {line}")
        print(f"verify: {len(failures)} mismatches over {cases} databases")
        return EXIT_VERIFY_FAILED
    print(f"verify: pass ({cases} databases, k in {k_values}, all variants match oracle)")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    db, digest = _load(args.input, args.lenient)
    threads = max(1, int(os.environ.get("TOPIC_THREADS", "1")))
    jobs = [(k, name) for k in args.k for name in VARIANTS]

    def run(job):
        k, name = job
        return job, mine(db, MinerConfig.variant(k, name))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(run, jobs))
    else:
        results = dict(map(run, jobs))

    # Candidate-count invariants: merging never changes the candidate set,
    # subtree pruning never enlarges it.
    for k in args.k:
        c = {name: results[(k, name)].stats.candidates for name in VARIANTS}
        if not (c["full"] == c["subtree-only"] and c["merge-only"] == c["none"]
                and c["full"] <= c["none"]):
            print(f"bench: candidate-count invariant violated at k={k}: {c}", file=sys.stderr)
            return EXIT_VERIFY_FAILED

    rows = []
    for (k, name), result in results.items():
        rows.append({
            "k": k,
            "variant": name,
            "candidates": result.stats.candidates,
            "projections": result.stats.projections,
            "merges": result.stats.merges,
            "runtime_ms": round(result.stats.runtime_ms, 3),
            "peak_entries": result.stats.peak_entries,
            "final_min_util": result.final_min_util,
        })
    rows.sort(key=lambda r: (r["k"], r["variant"]))
    if args.format == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "dataset": {"path": args.input, "sha256": digest,
                        "transactions": len(db.transactions), "items": db.item_count},
            "rows": rows,
        }
        print(json.dumps(report, indent=2))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()) if rows else
                                ["k", "variant", "candidates", "projections", "merges",
                                 "runtime_ms", "peak_entries", "final_min_util"])
        writer.writeheader()
        writer.writerows(rows)
        print(buf.getvalue(), end="")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    db = generate_synthetic(
        n_transactions=args.transactions,
        n_items=args.items,
        avg_len=args.avg_len,
        utility_range=(args.min_utility, args.max_utility),
        negative_fraction=args.negative_fraction,
        seed=args.seed,
    )
    text = write_spmf(db)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    db, digest = _load(args.input, args.lenient)
    result = enumerate_topk(db, args.k)
    report = {
        "schema_version": SCHEMA_VERSION,
        "dataset": {"path": args.input, "sha256": digest,
                    "transactions": len(db.transactions), "items": db.item_count},
        "top_k": [
            {"items": _labelled(db, itemset), "utility": utility}
            for itemset, utility in result.top_k
        ],
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return n


def _k_list(value: str) -> list[int]:
    return [_positive_int(tok) for tok in value.split(",") if tok]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topicmine",
                                     description="Exact top-k high-utility itemset mining "
                                                 "with negative utilities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine the top-k itemsets from an SPMF file")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--variant", choices=sorted(VARIANTS), default="full")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--lenient", action="store_true",
                   help="recompute mismatched TU fields instead of rejecting")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("verify", help="check all variants against the brute-force oracle")
    p.add_argument("--input")
    p.add_argument("--k", type=_k_list, default=[1, 3, 5])
    p.add_argument("--seeds", type=int, default=0,
                   help="additionally verify this many random small databases")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run all four variants and report stats")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=_k_list, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a synthetic SPMF file")
    p.add_argument("--transactions", type=int, required=True)
    p.add_argument("--items", type=_positive_int, required=True)
    p.add_argument("--avg-len", type=_positive_int, required=True)
    p.add_argument("--min-utility", type=_positive_int, default=1)
    p.add_argument("--max-utility", type=_positive_int, default=9)
    p.add_argument("--negative-fraction", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="file path, or - for stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force top-k (small databases only)")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatabaseError, TooManyItemsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
