"""Utility transaction databases: data model, SPMF-format I/O, item summaries,
and synthetic data generation.

A database is a list of transactions where every item occurrence carries a
signed integer utility (currency units). Every item has a globally fixed sign:
it occurs either only with positive utilities or only with negative ones.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass

log = logging.getLogger(__name__)


class DatabaseError(Exception):
    """Base class for database construction/parsing errors."""


class MalformedLineError(DatabaseError):
    pass


class TuMismatchError(DatabaseError):
    pass


class MixedSignItemError(DatabaseError):
    pass


class ZeroUtilityError(DatabaseError):
    pass


class InvalidParamsError(DatabaseError):
    pass


@dataclass
class Transaction:
    """One transaction: parallel item/utility lists plus the cached total.

    ``items`` holds dense item ids sorted by the database's current item
    order; ``tu`` is always the exact sum of ``utilities``.
    """

    tid: int
    items: list[int]
    utilities: list[int]
    tu: int

    def __len__(self) -> int:
        return len(self.items)


@dataclass
class UtilityDatabase:
    """Immutable-by-convention transaction database.

    ``labels[i]`` is the raw input label of dense item id ``i``; dense ids are
    assigned in ascending raw-label order. ``positive_items`` and
    ``negative_items`` partition the set of occurring items by utility sign.
    """

    transactions: list[Transaction]
    labels: list[int]
    positive_items: frozenset[int]
    negative_items: frozenset[int]

    @property
    def item_count(self) -> int:
        return len(self.labels)

    def label_of(self, item: int) -> int:
        return self.labels[item]


@dataclass
class ItemSummary:
    """Per-item aggregates over the whole database."""

    item: int
    utility: int      # sum of U(x, T) over all transactions containing x
    twu: int          # sum of TU(T) over transactions containing x
    rtwu: int         # like twu, but TU replaced by its positive part
    support: int
    positive: bool


def _build_database(rows: list[tuple[list[int], list[int]]]) -> UtilityDatabase:
    """Assemble a database from (raw labels, utilities) rows.

    Validates global sign consistency and remaps raw labels to dense ids
    (ascending label order). Tids are assigned in row order starting at 1.
    """
    sign: dict[int, bool] = {}
    for lineno, (labels, utils) in enumerate(rows, start=1):
        for lab, u in zip(labels, utils):
            if u == 0:
                raise ZeroUtilityError(f"line {lineno}: item {lab} has utility 0")
            pos = u > 0
            if lab in sign and sign[lab] is not pos:
                raise MixedSignItemError(
                    f"line {lineno}: item {lab} occurs with both signs"
                )
            sign[lab] = pos

    label_list = sorted(sign)
    dense = {lab: i for i, lab in enumerate(label_list)}

    transactions = []
    for tid, (labels, utils) in enumerate(rows, start=1):
        pairs = sorted((dense[lab], u) for lab, u in zip(labels, utils))
        items = [p[0] for p in pairs]
        utilities = [p[1] for p in pairs]
        transactions.append(Transaction(tid, items, utilities, sum(utilities)))

    positive = frozenset(dense[lab] for lab, pos in sign.items() if pos)
    negative = frozenset(dense[lab] for lab, pos in sign.items() if not pos)
    return UtilityDatabase(transactions, label_list, positive, negative)


def parse_spmf(text: str, strict: bool = True) -> UtilityDatabase:
    """Parse the SPMF utility format: ``i1 i2 ... im:TU:u1 u2 ... um``.

    Lines starting with ``#`` or ``@`` are skipped. The declared TU field is
    validated against the sum of the utilities; in strict mode a mismatch is
    an error, otherwise it is recomputed with a warning.
    """
    rows: list[tuple[list[int], list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("@"):
            continue
        fields = line.split(":")
        if len(fields) != 3:
            raise MalformedLineError(f"line {lineno}: expected 3 ':'-fields, got {len(fields)}")
        try:
            labels = [int(tok) for tok in fields[0].split()]
            declared_tu = int(fields[1])
            utils = [int(tok) for tok in fields[2].split()]
        except ValueError as exc:
            raise MalformedLineError(f"line {lineno}: {exc}") from None
        if len(labels) != len(utils):
            raise MalformedLineError(
                f"line {lineno}: {len(labels)} items but {len(utils)} utilities"
            )
        if not labels:
            raise MalformedLineError(f"line {lineno}: empty transaction")
        if len(set(labels)) != len(labels):
            raise MalformedLineError(f"line {lineno}: duplicate item in transaction")
        actual_tu = sum(utils)
        if declared_tu != actual_tu:
            if strict:
                raise TuMismatchError(
                    f"line {lineno}: declared TU {declared_tu} != sum {actual_tu}"
                )
            log.warning("line %d: declared TU %d != sum %d, recomputed",
                        lineno, declared_tu, actual_tu)
        rows.append((labels, utils))
    return _build_database(rows)


def write_spmf(db: UtilityDatabase) -> str:
    """Serialize a database back to SPMF utility format.

    Items are written in ascending raw-label order so that
    ``parse_spmf(write_spmf(db))`` reproduces the database exactly.
    """
    lines = []
    for t in db.transactions:
        pairs = sorted((db.labels[i], u) for i, u in zip(t.items, t.utilities))
        items = " ".join(str(lab) for lab, _ in pairs)
        utils = " ".join(str(u) for _, u in pairs)
        lines.append(f"{items}:{t.tu}:{utils}")
    return "\n".join(lines) + ("\n" if lines else "")


def compute_item_summaries(db: UtilityDatabase) -> list[ItemSummary]:
    """Compute utility, TWU, RTWU and support for every item (dense-id order)."""
    n = db.item_count
    utility = [0] * n
    twu = [0] * n
    rtwu = [0] * n
    support = [0] * n
    for t in db.transactions:
        rtu = sum(u for u in t.utilities if u > 0)
        for i, u in zip(t.items, t.utilities):
            utility[i] += u
            twu[i] += t.tu
            rtwu[i] += rtu
            support[i] += 1
    return [
        ItemSummary(i, utility[i], twu[i], rtwu[i], support[i], i in db.positive_items)
        for i in range(n)
    ]


def generate_synthetic(
    n_transactions: int,
    n_items: int,
    avg_len: int,
    utility_range: tuple[int, int],
    negative_fraction: float,
    seed: int,
) -> UtilityDatabase:
    """Generate a random database with a fixed per-item sign assignment.

    ``utility_range`` is the (inclusive) magnitude range of occurrence
    utilities; items drawn as negative get negated magnitudes. Deterministic
    for a fixed seed.
    """
    lo, hi = utility_range
    if n_transactions < 0 or n_items <= 0:
        raise InvalidParamsError("n_transactions must be >= 0 and n_items > 0")
    if not (1 <= avg_len <= n_items):
        raise InvalidParamsError("avg_len must be in [1, n_items]")
    if lo <= 0 or hi < lo:
        raise InvalidParamsError("utility_range must be a positive magnitude range")
    if not (0 <= negative_fraction < 1):
        raise InvalidParamsError("negative_fraction must be in [0, 1)")

    rng = random.Random(seed)
    all_labels = list(range(1, n_items + 1))
    n_neg = round(n_items * negative_fraction)
    negative_labels = set(rng.sample(all_labels, n_neg))

    rows = []
    for _ in range(n_transactions):
        length = max(1, min(n_items, round(rng.gauss(avg_len, max(1.0, avg_len / 3)))))
        labels = rng.sample(all_labels, length)
        utils = []
        for lab in labels:
            mag = rng.randint(lo, hi)
            utils.append(-mag if lab in negative_labels else mag)
        rows.append((labels, utils))
    return _build_database(rows)
