"""Shared test utilities: campaign generation and exhaustive checkers."""
from __future__ import annotations

from topicmine import (
    MinerConfig,
    UtilityDatabase,
    compute_item_summaries,
    generate_synthetic,
    mine,
    parse_spmf,
)
from topicmine.bounds import compute_negative_caps, compute_rlu, compute_rsu
from topicmine.ordering import build_root, build_total_order, merge_identical, project, remap_database
from topicmine.oracle import all_supported_utilities, utility_of

VARIANT_NAMES = ("full", "merge-only", "subtree-only", "none")

EXAMPLE_TEXT = """\
1 4 5:27:5 12 10
2 3 4:29:-3 -4 36
1 4:45:15 30
1 5:15:5 10
2 3 4:29:-3 -4 36
2 3 5:15:-3 -2 20
"""


def example_database() -> UtilityDatabase:
    return parse_spmf(EXAMPLE_TEXT)


def as_pair_set(pairs):
    return {(frozenset(itemset), utility) for itemset, utility in pairs}


def campaign_db(seed: int, negative_fraction: float) -> UtilityDatabase:
    """Small random database: <= 10 items, <= 25 transactions, magnitudes <= 9."""
    return generate_synthetic(
        n_transactions=10 + seed % 16,
        n_items=6 + seed % 5,
        avg_len=3 + seed % 2,
        utility_range=(1, 9),
        negative_fraction=negative_fraction,
        seed=seed,
    )


def mine_all_variants(db: UtilityDatabase, k: int):
    return {name: mine(db, MinerConfig.variant(k, name)) for name in VARIANT_NAMES}


def check_bound_soundness(db: UtilityDatabase) -> int:
    """Exhaustively verify RLU/RSU against the true maxima they must dominate.

    Walks the full rank-ordered enumeration tree with the real projection
    machinery. At each all-positive prefix, RLU(prefix, z) must dominate every
    supported extension containing z, and RSU(prefix, z) the whole supported
    subtree under prefix+z. For negative z (at any prefix) RSU must equal the
    exact utility of prefix+z, and the positive-prefix cap that gates deeper
    negative recursion must dominate the prefix+z subtree. Returns the number
    of violations.
    """
    if not db.transactions:
        return 0
    summaries = compute_item_summaries(db)
    order = build_total_order(summaries)
    rdb = remap_database(db, order, set(db.positive_items), set(db.negative_items))
    root = build_root(rdb, order)
    util = all_supported_utilities(db)
    rank = order.rank
    by_rank = order.items
    m = db.item_count
    cutoff = order.positive_cutoff
    NONE = float("-inf")
    violations = 0

    def dfs(prefix: tuple[int, ...], pdb):
        """Returns (subtree max utility, {z: max utility over subtree itemsets
        containing z}) over supported itemsets only."""
        nonlocal violations
        last = rank[prefix[-1]] if prefix else -1
        all_positive = not prefix or rank[prefix[-1]] < cutoff
        rlu = compute_rlu(pdb)
        rsu = compute_rsu(pdb)
        caps = compute_negative_caps(pdb)
        best = util.get(frozenset(prefix), NONE) if prefix else NONE
        child_max: dict[int, float] = {}
        child_containing: dict[int, dict[int, float]] = {}
        for r in range(last + 1, m):
            z = by_rank[r]
            child = project(pdb, z)
            if child.support == 0:
                child_max[z] = NONE
                child_containing[z] = {}
                continue
            cm, cc = dfs(prefix + (z,), child)
            child_max[z] = cm
            child_containing[z] = cc
            if cm > best:
                best = cm
        containing: dict[int, float] = {}
        for r in range(last + 1, m):
            z = by_rank[r]
            top = child_max[z]
            for r2 in range(last + 1, r):
                w = by_rank[r2]
                top = max(top, child_containing[w].get(z, NONE))
            containing[z] = top
            z_positive = r < cutoff
            if z_positive and all_positive:
                if rlu.get(z, 0) < top:
                    violations += 1
                if rsu.get(z, 0) < child_max[z]:
                    violations += 1
            elif not z_positive:
                exact = util.get(frozenset(prefix + (z,)))
                if exact is not None:
                    if rsu.get(z) != exact:
                        violations += 1
                    if caps.get(z, 0) < child_max[z]:
                        violations += 1
        return best, containing

    dfs((), root)
    return violations


def reconstruct_merged(db: UtilityDatabase) -> UtilityDatabase:
    """Database equivalent of the fully merged top-level projection."""
    summaries = compute_item_summaries(db)
    order = build_total_order(summaries)
    rdb = remap_database(db, order, set(db.positive_items), set(db.negative_items))
    merged = merge_identical(build_root(rdb, order))
    lines = []
    for view in merged.views:
        rec = view.record
        labelled = sorted(
            (db.labels[i], u) for i, u in zip(rec.items[view.offset:], rec.utilities[view.offset:])
        )
        items = " ".join(str(lab) for lab, _ in labelled)
        utils = " ".join(str(u) for _, u in labelled)
        lines.append(f"{items}:{sum(u for _, u in labelled)}:{utils}")
    return parse_spmf("\n".join(lines))


def merging_preserves_utilities(db: UtilityDatabase) -> bool:
    """U(X) identical on the merged and unmerged database for every supported X."""
    merged_db = reconstruct_merged(db)
    label_to_merged = {lab: i for i, lab in enumerate(merged_db.labels)}
    for itemset, expected in all_supported_utilities(db).items():
        translated = [label_to_merged[db.labels[i]] for i in itemset]
        if utility_of(merged_db, translated) != expected:
            return False
    return True
