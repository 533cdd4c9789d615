"""Join engines: continuous top-k maintenance over one or two set streams.

Three algorithm variants share one frame (advance time, generate candidates,
update the stock, admit the record):

* ``base``      pairs each arrival with the whole window and stores every
                positive pair in a full stock.
* ``swoop``     probes an inverted index, processing the shortest posting
                lists first, crops list tails with the positional upper bound
                against the stock's skyband lower bound, and keeps a minimal
                stock.
* ``swoop-noopt``  like ``swoop`` but probes tokens in the record's canonical
                (first-occurrence, rarest-first) order.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .inverted_index import InvertedIndex
from .records import RecordSet, SlidingWindow, overlap_count
from .similarity import (
    SimilarityKind,
    min_overlap,
    positional_upper_bound,
    sim,
    sort_key,
)
from .stock import FullStock, MinimalStock, StockEntry

ALGORITHMS = ("base", "swoop", "swoop-noopt")
MODES = ("self-join", "rr-join")

# Stream tags for rr-join: records from LEFT pair as i, records from RIGHT as j.
LEFT = "left"
RIGHT = "right"


@dataclass
class EngineConfig:
    algorithm: str = "swoop"
    k: int = 10
    window: float = 60.0
    similarity: SimilarityKind = SimilarityKind.JACCARD
    mode: str = "self-join"

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not self.window > 0:
            raise ValueError("window duration must be positive")


@dataclass
class EngineCounters:
    events: int = 0
    pre_candidates: int = 0
    candidates: int = 0
    max_stock_size: int = 0
    window_size_total: int = 0


class JoinEngine:
    def __init__(self, config: EngineConfig) -> None:
        self.config = config
        self.kind = config.similarity
        self.k = config.k
        self.window_duration = config.window
        self.t_index = -math.inf
        origins = (LEFT, RIGHT) if config.mode == "rr-join" else (LEFT,)
        self._windows = {o: SlidingWindow(config.window) for o in origins}
        if config.algorithm == "base":
            self._indexes = None
            self._stock: FullStock | MinimalStock = FullStock(self.kind, self.k)
        else:
            self._indexes = {o: InvertedIndex() for o in origins}
            self._stock = MinimalStock(self.kind, self.k)
        self._heap_order = config.algorithm == "swoop"
        self.counters = EngineCounters()

    @property
    def stock(self) -> FullStock | MinimalStock:
        return self._stock

    def window_size(self) -> int:
        return sum(len(w) for w in self._windows.values())

    def window_records(self, origin: str = LEFT) -> list[RecordSet]:
        return list(self._windows[origin])

    def set_index_time(self, t: float) -> None:
        """Advance the clock; expire window sets, index postings, and pairs."""
        if t < self.t_index:
            raise ValueError("index time cannot decrease")
        self.t_index = t
        self._stock.set_index_time(t)
        for origin, window in self._windows.items():
            expired = window.advance(t)
            if self._indexes is not None:
                for record in expired:
                    self._indexes[origin].remove(record)

    def insert(self, record: RecordSet, origin: str = LEFT) -> None:
        """Ingest one stream record and bring the join result up to date."""
        if record.t < self.t_index:
            raise ValueError("stream timestamps must be non-decreasing")
        if origin not in self._windows:
            raise ValueError(f"unknown stream origin {origin!r} for mode "
                             f"{self.config.mode!r}")
        self.set_index_time(record.t)
        probe = self._probe_origin(origin)
        if self._indexes is None:
            batch = self._candidates_from_window(record, origin, probe)
        else:
            batch = self._candidates_from_index(record, origin, probe)
        batch.sort(key=self._stock.order_key)
        self.counters.candidates += len(batch)
        self._stock.insert(batch)
        self._windows[origin].push(record)
        if self._indexes is not None:
            self._indexes[origin].insert(record)
        self.counters.events += 1
        self.counters.window_size_total += self.window_size()
        if len(self._stock) > self.counters.max_stock_size:
            self.counters.max_stock_size = len(self._stock)

    def topk(self) -> list[StockEntry]:
        return self._stock.topk()

    def _probe_origin(self, origin: str) -> str:
        if self.config.mode == "self-join":
            return origin
        return RIGHT if origin == LEFT else LEFT

    def _make_entry(self, record: RecordSet, other: RecordSet, origin: str,
                    value: float) -> StockEntry:
        w = self.window_duration
        if self.config.mode == "self-join":
            return StockEntry(i=record.seq, j=other.seq, simv=value,
                              e=other.t + w)
        if origin == LEFT:
            i, j = record.seq, other.seq
        else:
            i, j = other.seq, record.seq
        return StockEntry(i=i, j=j, simv=value, e=min(record.t, other.t) + w)

    def _candidates_from_window(self, record: RecordSet, origin: str,
                                probe: str) -> list[StockEntry]:
        counters = self.counters
        out = []
        l_r = len(record)
        rset = record.token_set
        kind = self.kind
        for other in self._windows[probe]:
            counters.pre_candidates += 1
            if l_r == 0 or len(other) == 0:
                continue
            ov = len(rset & other.token_set)
            if ov == 0:
                continue
            out.append(self._make_entry(record, other, origin,
                                        sim(kind, l_r, len(other), ov)))
        return out

    def _probe_order(self, record: RecordSet, index: InvertedIndex) -> list[int]:
        if not self._heap_order:
            return list(record.tokens)
        heap = [(index.list_length(token), pos, token)
                for pos, token in enumerate(record.tokens)]
        heapq.heapify(heap)
        order = []
        while heap:
            order.append(heapq.heappop(heap)[2])
        return order

    def _candidates_from_index(self, record: RecordSet, origin: str,
                               probe: str) -> list[StockEntry]:
        counters = self.counters
        kind = self.kind
        stock = self._stock
        w = self.window_duration
        l_r = len(record)
        if l_r == 0:
            return []
        index = self._indexes[probe]
        # seq -> (record, skyband lower bound at the pair's end time)
        seen: dict[int, tuple[RecordSet, float]] = {}
        for rho, token in enumerate(self._probe_order(record, index), start=1):
            ub_key = sort_key(kind, positional_upper_bound(kind, l_r, rho))
            plist = index.postings(token)
            if plist is None:
                continue
            for other in plist.iter_newest_first():
                counters.pre_candidates += 1
                hit = seen.get(other.seq)
                if hit is None:
                    lower = stock.lower_bound(other.t + w)
                else:
                    lower = hit[1]
                if sort_key(kind, lower) < ub_key:
                    # Entries further down end no later, so their bound can
                    # only be as strict or stricter: crop the rest.
                    break
                if hit is None:
                    seen[other.seq] = (other, lower)
        out = []
        for other, lower in seen.values():
            required = min_overlap(kind, l_r, len(other), lower)
            if required < 1:
                required = 1
            ov = overlap_count(record.tokens, other.tokens, required)
            if ov is None:
                continue
            out.append(self._make_entry(record, other, origin,
                                        sim(kind, l_r, len(other), ov)))
        return out


def brute_force_topk(records: list[RecordSet], k: int, kind: SimilarityKind,
                     window: float,
                     other_records: list[RecordSet] | None = None) -> list[StockEntry]:
    """Top-k over explicit window contents by enumerating all valid pairs.

    Pairs with zero overlap are excluded; ordering follows the global tie
    rule (better similarity, later end time, ascending ids).
    """
    pairs = []
    if other_records is None:
        n = len(records)
        for a in range(n):
            ra = records[a]
            for b in range(a + 1, n):
                rb = records[b]
                if ra.seq > rb.seq:
                    newer, older = ra, rb
                else:
                    newer, older = rb, ra
                pairs.append((newer, older, min(ra.t, rb.t) + window))
    else:
        for ra in records:
            for rb in other_records:
                pairs.append((ra, rb, min(ra.t, rb.t) + window))
    out = []
    for newer, older, end in pairs:
        if len(newer) == 0 or len(older) == 0:
            continue
        ov = len(newer.token_set & older.token_set)
        if ov == 0:
            continue
        value = sim(kind, len(newer), len(older), ov)
        out.append(StockEntry(i=newer.seq, j=older.seq, simv=value, e=end))
    out.sort(key=lambda p: (sort_key(kind, p.simv), -p.e, p.i, p.j))
    return out[:k]
