"""The stock: the container of currently relevant pairs behind the top-k result.

Entries live in two rank/select trees at once: S orders them best-similarity
first (ties: later end time, then ascending ids) and E orders them by
ascending end time (ties: worse similarity first, then descending ids).  The
E tie rule makes entries that are about to lose to an equally similar,
longer-lived peer sort ahead of it, which the cleanup walk relies on.

``MinimalStock`` keeps only relevant pairs: a pair is irrelevant when at
least k entries are better in S order and do not end before it, because such
a pair can never (re)enter the top-k.  ``FullStock`` keeps every inserted
pair and is the memory-hungry variant used by the baseline engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .rankselect import RankTree
from .similarity import SimilarityKind, sort_key, worst_score

_SKEY_SEED = 0x51
_EKEY_SEED = 0xE5
_NEG_INF = float("-inf")


@dataclass(frozen=True)
class StockEntry:
    """A candidate pair: ids, score, and the time the pair stops being valid."""

    i: int
    j: int
    simv: float
    e: float

    def as_tuple(self) -> tuple[int, int, float, float]:
        return (self.i, self.j, self.simv, self.e)


class _StockBase:
    def __init__(self, kind: SimilarityKind, k: int) -> None:
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        self.kind = kind
        self.k = k
        self.t_index = _NEG_INF
        self._by_sim = RankTree(seed=_SKEY_SEED)
        self._by_end = RankTree(seed=_EKEY_SEED)
        self._entries: dict[tuple[int, int], StockEntry] = {}

    def order_key(self, entry: StockEntry) -> tuple[float, float, int, int]:
        """S-tree key: ascending order is best-first under the global tie rule."""
        return (sort_key(self.kind, entry.simv), -entry.e, entry.i, entry.j)

    def _end_key(self, entry: StockEntry) -> tuple[float, float, int, int]:
        return (entry.e, -sort_key(self.kind, entry.simv), -entry.i, -entry.j)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self._entries

    def _add(self, entry: StockEntry) -> None:
        pair = (entry.i, entry.j)
        if pair in self._entries:
            raise ValueError(f"pair {pair} is already stocked")
        if entry.e <= self.t_index:
            raise ValueError(f"pair {pair} would be inserted already expired")
        self._entries[pair] = entry
        self._by_sim.insert(self.order_key(entry))
        self._by_end.insert(self._end_key(entry))

    def _discard(self, entry: StockEntry) -> None:
        del self._entries[(entry.i, entry.j)]
        self._by_sim.remove(self.order_key(entry))
        self._by_end.remove(self._end_key(entry))

    def _s_entry(self, rank: int) -> StockEntry:
        """Entry at 1-based similarity rank."""
        key = self._by_sim.select(rank - 1)
        return self._entries[(key[2], key[3])]

    def _e_entry(self, rank: int) -> StockEntry:
        """Entry at 1-based end-time rank."""
        key = self._by_end.select(rank - 1)
        return self._entries[(-key[2], -key[3])]

    def set_index_time(self, t: float) -> int:
        """Advance time and drop entries whose validity interval has closed.

        Scans the end-time order only as far as the expired prefix; returns
        the number of removed entries.
        """
        if t < self.t_index:
            raise ValueError("index time cannot decrease")
        self.t_index = t
        removed = 0
        while self._entries:
            first = self._e_entry(1)
            if first.e > t:
                break
            self._discard(first)
            removed += 1
        return removed

    def topk(self) -> list[StockEntry]:
        """The first min(k, size) entries in similarity order."""
        out = []
        for key in self._by_sim:
            if len(out) == self.k:
                break
            out.append(self._entries[(key[2], key[3])])
        return out

    def entries_by_sim(self) -> Iterator[StockEntry]:
        for key in self._by_sim:
            yield self._entries[(key[2], key[3])]

    def entries_by_end(self) -> Iterator[StockEntry]:
        for key in self._by_end:
            yield self._entries[(-key[2], -key[3])]


class FullStock(_StockBase):
    """Keeps every positive-similarity pair; top-k correct, memory quadratic."""

    def insert(self, batch: Iterable[StockEntry]) -> None:
        for entry in batch:
            self._add(entry)


class MinimalStock(_StockBase):
    """Keeps exactly the relevant pairs, maintained incrementally."""

    def lower_bound(self, t: float) -> float:
        """Similarity of the k-th ranked entry still valid at future time ``t``.

        Uses the rank alignment between the two trees: if the first entry
        ending at or after ``t`` has end-time rank v, the k-th entry valid at
        ``t`` sits at similarity rank k + v - 1.  Returns the worst score
        when fewer than k entries survive to ``t``.
        """
        v = self._by_end.count_less((t, _NEG_INF, 0, 0)) + 1
        idx = self.k + v - 1
        if idx > len(self._entries):
            return worst_score(self.kind)
        return self._s_entry(idx).simv

    def bulk_add(self, entries: Iterable[StockEntry]) -> None:
        """Add entries without relevance filtering (pair with a cleanup)."""
        for entry in entries:
            self._add(entry)

    def _cleanup_walk(self, s: int, e: int, end_limit: float | None) -> None:
        # Walk aligned positions (E[e], S[s]) with s = e + k - 1.  An entry
        # at end-time rank e whose similarity rank exceeds s has at least k
        # better entries that do not end before it, i.e. it is irrelevant.
        while s <= len(self._entries):
            e_ent = self._e_entry(e)
            if end_limit is not None and e_ent.e > end_limit:
                break
            if self.order_key(e_ent) > self.order_key(self._s_entry(s)):
                self._discard(e_ent)
            else:
                s += 1
                e += 1

    def cleanup(self) -> None:
        """Remove every irrelevant entry."""
        if len(self._entries) <= self.k:
            return
        self._cleanup_walk(s=self.k, e=1, end_limit=None)

    def optimized_cleanup(self, batch: list[StockEntry]) -> None:
        """Cleanup after ``bulk_add(batch)`` on a previously minimal stock.

        Entries that became irrelevant end no later than the batch's last
        end time, so the walk can stop at that point instead of scanning the
        whole stock.  (The walk still starts from the front: batch entries
        may land anywhere in the end-time order, so no prefix can be assumed
        aligned.)
        """
        if not batch:
            raise ValueError("optimized cleanup requires a non-empty batch")
        if len(self._entries) <= self.k:
            return
        self._cleanup_walk(s=self.k, e=1, end_limit=max(c.e for c in batch))

    def insert(self, batch: list[StockEntry]) -> None:
        """Merge a batch of candidates, keeping the stock minimal.

        ``batch`` must be sorted best-first under the global tie order and
        every candidate must still be valid.  Irrelevant candidates are never
        added; entries the additions make irrelevant are removed on the fly.
        """
        if not batch:
            return
        n = len(batch)
        prev_key = None
        for c in batch:
            key = self.order_key(c)
            if prev_key is not None and key < prev_key:
                raise ValueError("candidate batch must be sorted best-first")
            prev_key = key
            if (c.i, c.j) in self._entries:
                raise ValueError(f"pair {(c.i, c.j)} is already stocked")
            if c.e <= self.t_index:
                raise ValueError(f"candidate {(c.i, c.j)} is already expired")

        # While the stock holds fewer than k entries every candidate is
        # relevant; fill unconditionally.
        fill = min(max(self.k - len(self._entries), 0), n)
        for c in batch[:fill]:
            self._add(c)
        idx = fill
        if len(self._entries) <= self.k and idx == n:
            return

        batch_max_end = max(c.e for c in batch[idx:])
        s = self._by_sim.count_less(self.order_key(batch[idx])) + 1
        if s <= self.k:
            s = self.k
            e = 1
            t_bound = self.t_index
        else:
            e = s - self.k + 1
            t_bound = self._e_entry(e - 1).e

        # Walk the skyband boundary.  At vertex (e, s) exactly e - 1 stored
        # entries end at or before t_bound, so a candidate placed at
        # similarity rank s is relevant iff it outlives t_bound.
        while s <= len(self._entries):
            if idx >= n and self._e_entry(e).e > batch_max_end:
                break
            s_key = self.order_key(self._s_entry(s))
            while idx < n:
                c = batch[idx]
                c_key = self.order_key(c)
                if c_key >= s_key:
                    break
                if c.e > t_bound:
                    self._add(c)
                    # The insertion shifts ranks, so position s must be
                    # re-read; the candidate itself lands at or above it.
                    s_key = self.order_key(self._s_entry(s))
                idx += 1
            e_ent = self._e_entry(e)
            if self.order_key(e_ent) > s_key:
                self._discard(e_ent)
            else:
                t_bound = e_ent.e
                s += 1
                e += 1

        # Candidates worse than the whole stock: relevant iff they outlive
        # the end time at rank size - k + 1, which is where their skyband
        # vertex would sit.
        while idx < n:
            c = batch[idx]
            t_bound = self._e_entry(e - 1).e if e >= 2 else self.t_index
            if c.e > t_bound:
                self._add(c)
                e += 1
            idx += 1
