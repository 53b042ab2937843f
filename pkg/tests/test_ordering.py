from helpers import campaign_db

from topicmine import compute_item_summaries, parse_spmf
from topicmine.ordering import (
    build_root,
    build_total_order,
    merge_identical,
    project,
    remap_database,
)


def canonical(example_db):
    summaries = compute_item_summaries(example_db)
    return build_total_order(summaries)


def remapped_example(example_db):
    order = canonical(example_db)
    secondary = set(example_db.positive_items)
    negatives = set(example_db.negative_items)
    return remap_database(example_db, order, secondary, negatives), order


class TestTotalOrder:
    def test_running_example_order(self, example_db, ids):
        order = canonical(example_db)
        # positives by ascending RTWU (E=62, A=87, D=144), then negatives
        # (B and C tie at 92, broken by label)
        assert order.items == [ids["E"], ids["A"], ids["D"], ids["B"], ids["C"]]
        assert order.positive_cutoff == 3

    def test_single_item(self):
        db = parse_spmf("7:5:5")
        order = build_total_order(compute_item_summaries(db))
        assert order.items == [0] and order.positive_cutoff == 1

    def test_all_equal_rtwu_falls_back_to_labels(self):
        db = parse_spmf("1:4:4\n2:4:4\n3:4:4")
        order = build_total_order(compute_item_summaries(db))
        assert order.items == [0, 1, 2]


class TestRemap:
    def test_running_example_survives_whole(self, example_db):
        rdb, order = remapped_example(example_db)
        assert len(rdb.transactions) == 6
        for t in rdb.transactions:
            ranks = [order.rank[i] for i in t.items]
            assert ranks == sorted(ranks)

    def test_empty_keep_sets(self, example_db):
        order = canonical(example_db)
        rdb = remap_database(example_db, order, set(), set())
        assert rdb.transactions == []

    def test_back_to_front_transaction_order(self):
        # {a,b} sorts below {a,b,c} which sorts below {a,b,e}
        db = parse_spmf("1 2 3:3:1 1 1\n1 2 5:4:1 1 2\n1 2:2:1 1")
        order = build_total_order(compute_item_summaries(db))
        rdb = remap_database(db, order, set(db.positive_items), set())
        lengths_and_labels = [sorted(db.labels[i] for i in t.items) for t in rdb.transactions]
        assert lengths_and_labels == [[1, 2], [1, 2, 3], [1, 2, 5]]

    def test_dropped_items_recompute_tu(self, example_db, ids):
        order = canonical(example_db)
        rdb = remap_database(example_db, order, {ids["D"]}, set())
        assert all(t.items == [ids["D"]] for t in rdb.transactions)
        assert sorted(t.tu for t in rdb.transactions) == [12, 30, 36, 36]


class TestProject:
    def test_project_on_a(self, example_db, ids):
        rdb, order = remapped_example(example_db)
        root = build_root(rdb, order)
        child = project(root, ids["A"])
        # T1, T3, T4 contain A with prefix utilities 5/15/5; T4's suffix is
        # empty (E precedes A), so it is accounted then dropped.
        assert child.utility == 25
        assert child.support == 3
        assert [v.prefix_utility for v in child.views] == [15, 5]
        suffixes = [
            [(v.record.items[p], v.record.utilities[p])
             for p in range(v.offset, len(v.record.items))]
            for v in child.views
        ]
        assert suffixes == [[(ids["D"], 30)], [(ids["D"], 12)]]

    def test_absent_item(self, example_db, ids):
        rdb, order = remapped_example(example_db)
        root = build_root(rdb, order)
        child = project(project(root, ids["E"]), ids["B"])
        grandchild = project(child, ids["B"])
        assert grandchild.views == [] and grandchild.support == 0

    def test_projection_never_grows(self, example_db):
        rdb, order = remapped_example(example_db)
        root = build_root(rdb, order)
        for item in range(example_db.item_count):
            child = project(root, item)
            assert len(child.views) <= len(root.views)


class TestMerge:
    def test_identical_full_transactions(self, example_db, ids):
        rdb, order = remapped_example(example_db)
        merged = merge_identical(build_root(rdb, order))
        assert merged.merged_pairs == 1
        assert len(merged.views) == 5
        coalesced = [v for v in merged.views if v.weight == 2]
        assert len(coalesced) == 1
        rec = coalesced[0].record
        assert dict(zip(rec.items, rec.utilities)) == {
            ids["B"]: -6, ids["C"]: -8, ids["D"]: 72,
        }

    def test_no_identical_suffixes_is_identity(self, ids):
        db = campaign_db(1, 0.0)
        # projecting on a fresh random db: merging never increases view count
        from topicmine import compute_item_summaries
        order = build_total_order(compute_item_summaries(db))
        rdb = remap_database(db, order, set(db.positive_items), set(db.negative_items))
        root = build_root(rdb, order)
        merged = merge_identical(root)
        assert len(merged.views) <= len(root.views)
        assert merged.merged_pairs == len(root.views) - len(merged.views)

    def test_merged_prefix_utilities_sum(self, example_db, ids):
        rdb, order = remapped_example(example_db)
        root = build_root(rdb, order)
        child = merge_identical(project(root, ids["D"]))
        # T2 and T5 project to the identical {B, C} suffix
        assert [v.prefix_utility for v in child.views] == [72]
        assert child.views[0].weight == 2
