"""Bounded priority store for the k best itemsets and the rising threshold."""
from __future__ import annotations

import heapq
from collections.abc import Sequence


class _Entry:
    """Heap element ordered worst-first: lower utility is worse; on equal
    utility the rank-lexicographically greater itemset is worse (and is the
    one evicted at the boundary)."""

    __slots__ = ("utility", "key", "itemset")

    def __init__(self, utility: int, key: tuple[int, ...], itemset: tuple[int, ...]):
        self.utility = utility
        self.key = key
        self.itemset = itemset

    def __lt__(self, other: "_Entry") -> bool:
        if self.utility != other.utility:
            return self.utility < other.utility
        return self.key > other.key


FLOOR = 1


class TopKStore:
    """Holds at most k (itemset, utility) entries; ``min_util`` starts at the
    floor of 1 and only ever rises. ``history`` records every threshold value
    for monotonicity checks."""

    def __init__(self, k: int, rank: Sequence[int] | None = None):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self._rank = rank
        self._heap: list[_Entry] = []
        self._offered: set[frozenset[int]] = set()
        self.min_util = FLOOR
        self.history: list[int] = [FLOOR]

    def _key(self, itemset: tuple[int, ...]) -> tuple[int, ...]:
        if self._rank is None:
            return tuple(sorted(itemset))
        return tuple(sorted(self._rank[i] for i in itemset))

    def _raise_to(self, value: int) -> None:
        if value > self.min_util:
            self.min_util = value
            self.history.append(value)

    def raise_with_riu(self, riu_list: list[int]) -> int:
        """RIU strategy: with at least k single-item utilities available,
        raise the threshold to the k-th largest (never below the floor)."""
        if len(riu_list) >= self.k:
            self._raise_to(max(FLOOR, riu_list[self.k - 1]))
        return self.min_util

    def offer(self, itemset: tuple[int, ...], utility: int) -> int:
        """Consider one candidate; returns the possibly-raised threshold.

        The same itemset must never be offered twice (the search guarantees
        single evaluation; this is asserted here).
        """
        fs = frozenset(itemset)
        assert fs not in self._offered, f"duplicate candidate {itemset}"
        self._offered.add(fs)
        if utility < self.min_util:
            return self.min_util
        entry = _Entry(utility, self._key(itemset), itemset)
        if len(self._heap) < self.k:
            heapq.heappush(self._heap, entry)
            if len(self._heap) == self.k:
                self._raise_to(self._heap[0].utility)
        elif self._heap[0] < entry:
            heapq.heapreplace(self._heap, entry)
            self._raise_to(self._heap[0].utility)
        return self.min_util

    def __len__(self) -> int:
        return len(self._heap)

    def results(self) -> list[tuple[tuple[int, ...], int]]:
        """Entries sorted by utility descending, ties by rank-lexicographic
        ascending itemset; itemsets are emitted id-sorted."""
        ordered = sorted(self._heap, key=lambda e: (-e.utility, e.key))
        return [(tuple(sorted(e.itemset)), e.utility) for e in ordered]
