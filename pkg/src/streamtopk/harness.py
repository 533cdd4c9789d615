"""Batch harness: stream loading, engine runs, metrics, synthetic generators."""

from __future__ import annotations

import bisect
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .engine import LEFT, RIGHT, JoinEngine
from .records import RecordSet, TokenDictionary, read_records

METRICS_COLUMNS = (
    "algorithm", "k", "w", "similarity", "sets", "elapsed_s", "set_rate",
    "pre_candidates", "candidates", "max_stock", "avg_window",
    "lat_p50_s", "lat_max_s",
)

PROFILES = ("uniform", "zipf", "late-hot-token")

# Fixed shape of the late-hot-token profile: the hot token never occurs in
# the first quarter of the stream, then occurs with probability one half.
HOT_TOKEN = "hot"
HOT_START_FRACTION = 0.25
HOT_PROBABILITY = 0.5


@dataclass
class RunMetrics:
    algorithm: str
    k: int
    w: float
    similarity: str
    sets: int
    elapsed_s: float
    pre_candidates: int
    candidates: int
    max_stock: int
    avg_window: float
    lat_p50_s: float
    lat_max_s: float

    @property
    def set_rate(self) -> float:
        return self.sets / self.elapsed_s if self.elapsed_s > 0 else 0.0

    def csv_row(self) -> list[str]:
        values = {
            "algorithm": self.algorithm,
            "k": self.k,
            "w": self.w,
            "similarity": self.similarity,
            "sets": self.sets,
            "elapsed_s": f"{self.elapsed_s:.6f}",
            "set_rate": f"{self.set_rate:.3f}",
            "pre_candidates": self.pre_candidates,
            "candidates": self.candidates,
            "max_stock": self.max_stock,
            "avg_window": f"{self.avg_window:.3f}",
            "lat_p50_s": f"{self.lat_p50_s:.9f}",
            "lat_max_s": f"{self.lat_max_s:.9f}",
        }
        return [str(values[c]) for c in METRICS_COLUMNS]


def write_metrics_csv(out: TextIO, runs: Iterable[RunMetrics]) -> None:
    out.write(",".join(METRICS_COLUMNS) + "\n")
    for m in runs:
        out.write(",".join(m.csv_row()) + "\n")


Event = tuple[RecordSet, str]


def load_events(paths: Sequence[str]) -> list[Event]:
    """Read one or two stream files into a merged, origin-tagged event list.

    With two inputs the streams are merged by timestamp; ties put the first
    stream's record first.  Sequence numbers are assigned per stream.
    """
    if not 1 <= len(paths) <= 2:
        raise ValueError("expected one or two input streams")
    dictionary = TokenDictionary()
    events: list[Event] = []
    for origin, path in zip((LEFT, RIGHT), paths):
        with open(path, "r", encoding="utf-8") as handle:
            for record in read_records(handle, dictionary):
                events.append((record, origin))
    if len(paths) == 2:
        rank = {LEFT: 0, RIGHT: 1}
        events.sort(key=lambda ev: (ev[0].t, rank[ev[1]], ev[0].seq))
    return events


Snapshot = tuple[float, tuple[tuple[int, int, float, float], ...]]


@dataclass
class RunResult:
    metrics: RunMetrics | None = None
    snapshots: list[Snapshot] = field(default_factory=list)


def run_engine(engine: JoinEngine, events: Sequence[Event],
               snapshot_every: int = 0) -> RunResult:
    """Drive an engine over pre-parsed events, timing only the join work."""
    latencies: list[float] = []
    snapshots = []
    clock = time.perf_counter
    started = clock()
    for position, (record, origin) in enumerate(events, start=1):
        t0 = clock()
        engine.insert(record, origin)
        latencies.append(clock() - t0)
        if snapshot_every and position % snapshot_every == 0:
            snapshots.append((engine.t_index,
                              tuple(e.as_tuple() for e in engine.topk())))
    elapsed = clock() - started
    c = engine.counters
    metrics = RunMetrics(
        algorithm=engine.config.algorithm,
        k=engine.k,
        w=engine.window_duration,
        similarity=engine.kind.value,
        sets=c.events,
        elapsed_s=elapsed,
        pre_candidates=c.pre_candidates,
        candidates=c.candidates,
        max_stock=c.max_stock_size,
        avg_window=(c.window_size_total / c.events) if c.events else 0.0,
        lat_p50_s=statistics.median(latencies) if latencies else 0.0,
        lat_max_s=max(latencies) if latencies else 0.0,
    )
    return RunResult(metrics=metrics, snapshots=snapshots)


def write_snapshots(out: TextIO, snapshots) -> None:
    """One text line per result row: ``t_J i j sim e``."""
    for t_index, rows in snapshots:
        for i, j, simv, end in rows:
            out.write(f"{t_index!r} {i} {j} {simv!r} {end!r}\n")


@dataclass
class ComparisonResult:
    results: dict[str, RunResult]
    snapshots_match: bool
    mismatch: str | None = None


def compare_engines(engines: dict[str, JoinEngine],
                    events: Sequence[Event]) -> ComparisonResult:
    """Run several engines over the same events, checking result agreement.

    The engines' top-k lists are compared after every event; the first
    disagreement is reported.
    """
    names = list(engines)
    results = {name: RunResult() for name in names}
    latencies = {name: [] for name in names}
    elapsed = dict.fromkeys(names, 0.0)
    clock = time.perf_counter
    mismatch = None
    for position, (record, origin) in enumerate(events, start=1):
        reference = None
        for name in names:
            engine = engines[name]
            t0 = clock()
            engine.insert(record, origin)
            dt = clock() - t0
            latencies[name].append(dt)
            elapsed[name] += dt
            current = tuple(e.as_tuple() for e in engine.topk())
            if reference is None:
                reference = current
                results[name].snapshots.append((engine.t_index, current))
            elif current != reference and mismatch is None:
                mismatch = (f"event {position}: {name} disagrees with "
                            f"{names[0]} on the top-k result")
    for name in names:
        engine = engines[name]
        c = engine.counters
        lat = latencies[name]
        results[name].metrics = RunMetrics(
            algorithm=engine.config.algorithm,
            k=engine.k,
            w=engine.window_duration,
            similarity=engine.kind.value,
            sets=c.events,
            elapsed_s=elapsed[name],
            pre_candidates=c.pre_candidates,
            candidates=c.candidates,
            max_stock=c.max_stock_size,
            avg_window=(c.window_size_total / c.events) if c.events else 0.0,
            lat_p50_s=statistics.median(lat) if lat else 0.0,
            lat_max_s=max(lat) if lat else 0.0,
        )
    return ComparisonResult(results=results, snapshots_match=mismatch is None,
                            mismatch=mismatch)


def write_comparison_csv(out: TextIO, comparison: ComparisonResult) -> None:
    names = list(comparison.results)
    out.write("metric," + ",".join(names) + "\n")
    rows = {name: r.metrics.csv_row() for name, r in comparison.results.items()}
    for idx, column in enumerate(METRICS_COLUMNS):
        out.write(column + "," + ",".join(rows[name][idx] for name in names) + "\n")


def _zipf_cumulative(universe: int, exponent: float) -> list[float]:
    acc = 0.0
    out = []
    for rank in range(1, universe + 1):
        acc += rank ** -exponent
        out.append(acc)
    return out


def generate_stream(profile: str, events: int, universe: int,
                    set_size: tuple[int, int] = (4, 8), rate: float = 1.0,
                    seed: int = 0, zipf_exponent: float = 1.2) -> list[str]:
    """Produce stream-file lines for one synthetic profile.

    Deterministic for a given seed.  Timestamps advance by ``1 / rate`` per
    event.  ``uniform`` draws tokens uniformly without replacement; ``zipf``
    draws from a rank-weighted distribution (duplicates collapse, so sets may
    come out slightly smaller); ``late-hot-token`` is uniform plus a token
    that is absent for the first quarter of the stream and then appears with
    probability one half.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    if events < 0 or universe < 1:
        raise ValueError("events must be >= 0 and universe >= 1")
    lo, hi = set_size
    if not 1 <= lo <= hi:
        raise ValueError(f"bad set size range {set_size!r}")
    if hi > universe:
        raise ValueError(f"set size {hi} exceeds universe {universe}")
    if not rate > 0:
        raise ValueError("rate must be positive")
    rng = random.Random(seed)
    step = 1.0 / rate
    cumulative = _zipf_cumulative(universe, zipf_exponent) if profile == "zipf" else None
    hot_from = int(events * HOT_START_FRACTION)
    lines = []
    t = 0.0
    population = range(universe)
    for position in range(events):
        size = lo if lo == hi else rng.randint(lo, hi)
        if cumulative is not None:
            total = cumulative[-1]
            picked = {bisect.bisect_right(cumulative, rng.random() * total)
                      for _ in range(size)}
            tokens = [f"t{ident}" for ident in sorted(picked)]
        else:
            tokens = [f"t{ident}" for ident in rng.sample(population, size)]
        if profile == "late-hot-token" and position >= hot_from:
            if rng.random() < HOT_PROBABILITY:
                tokens.append(HOT_TOKEN)
        lines.append(f"{t!r}\t{' '.join(tokens)}")
        t += step
    return lines


def write_stream(path: str, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for line in lines:
            handle.write(line + "\n")
