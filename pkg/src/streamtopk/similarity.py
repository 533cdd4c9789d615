"""Overlap-based set similarity functions.

Every function here is expressed over the triple ``(l_r, l_s, o)``: the two
set cardinalities and their overlap.  Jaccard, Cosine, Dice, and Overlap
improve as the numeric value grows; Hamming is a distance and improves as it
shrinks.  To keep one code path for both families, all ordering decisions go
through :func:`sort_key` (smaller key = better score) instead of comparing
raw values.
"""

from __future__ import annotations

import enum
import math

__all__ = [
    "SimilarityKind",
    "sim",
    "set_similarity",
    "min_overlap",
    "positional_upper_bound",
    "sort_key",
    "worst_score",
    "is_better",
    "at_least_as_good",
]


class SimilarityKind(enum.Enum):
    """The supported similarity/distance functions."""

    JACCARD = "jaccard"
    COSINE = "cosine"
    DICE = "dice"
    OVERLAP = "overlap"
    HAMMING = "hamming"

    @property
    def minimizes(self) -> bool:
        """True when smaller numeric values are better (distance semantics)."""
        return self is SimilarityKind.HAMMING


def _check_lengths(l_r: int, l_s: int) -> None:
    if l_r < 1 or l_s < 1:
        raise ValueError(f"set lengths must be positive, got ({l_r}, {l_s})")


def sim(kind: SimilarityKind, l_r: int, l_s: int, o: int) -> float:
    """Similarity (or distance, for Hamming) of two sets given lengths and overlap."""
    _check_lengths(l_r, l_s)
    if o < 0 or o > min(l_r, l_s):
        raise ValueError(f"overlap {o} out of range for lengths ({l_r}, {l_s})")
    if kind is SimilarityKind.JACCARD:
        return o / (l_r + l_s - o)
    if kind is SimilarityKind.COSINE:
        return o / math.sqrt(l_r * l_s)
    if kind is SimilarityKind.DICE:
        return 2 * o / (l_r + l_s)
    if kind is SimilarityKind.OVERLAP:
        return float(o)
    if kind is SimilarityKind.HAMMING:
        return float(l_r + l_s - 2 * o)
    raise ValueError(f"unknown similarity kind: {kind!r}")


def set_similarity(kind: SimilarityKind, a: frozenset | set, b: frozenset | set) -> float:
    """Similarity of two concrete token sets (both must be non-empty)."""
    return sim(kind, len(a), len(b), len(a & b))


def sort_key(kind: SimilarityKind, value: float) -> float:
    """Map a score to a key whose ascending order is best-to-worst."""
    return value if kind.minimizes else -value


def worst_score(kind: SimilarityKind) -> float:
    """The bottom element of the kind's quality order (zero-overlap level)."""
    return math.inf if kind.minimizes else 0.0


def is_better(kind: SimilarityKind, a: float, b: float) -> bool:
    """True when score ``a`` is strictly better than ``b``."""
    return sort_key(kind, a) < sort_key(kind, b)


def at_least_as_good(kind: SimilarityKind, a: float, b: float) -> bool:
    return sort_key(kind, a) <= sort_key(kind, b)


def min_overlap(kind: SimilarityKind, l_r: int, l_s: int, threshold: float) -> int:
    """Smallest overlap ``o`` with ``sim(kind, l_r, l_s, o)`` at least as good
    as ``threshold``.

    Evaluates the closed-form inverse, rounds toward the stricter side, then
    nudges against a direct ``sim`` evaluation to absorb floating-point
    boundary error.  The result is clamped to ``[0, min(l_r, l_s)]``; for
    thresholds unattainable at these lengths the upper clamp is returned.
    """
    _check_lengths(l_r, l_s)
    cap = min(l_r, l_s)
    if kind is SimilarityKind.JACCARD:
        raw = threshold / (1.0 + threshold) * (l_r + l_s)
    elif kind is SimilarityKind.COSINE:
        raw = threshold * math.sqrt(l_r * l_s)
    elif kind is SimilarityKind.DICE:
        raw = threshold * (l_r + l_s) / 2.0
    elif kind is SimilarityKind.OVERLAP:
        raw = threshold
    elif kind is SimilarityKind.HAMMING:
        raw = (l_r + l_s - threshold + 1.0) / 2.0
    else:
        raise ValueError(f"unknown similarity kind: {kind!r}")

    if math.isinf(raw):
        o = 0 if raw < 0 else cap
    else:
        o = math.floor(raw) if kind.minimizes else math.ceil(raw)
    o = max(0, min(cap, o))
    while o > 0 and at_least_as_good(kind, sim(kind, l_r, l_s, o - 1), threshold):
        o -= 1
    while o < cap and not at_least_as_good(kind, sim(kind, l_r, l_s, o), threshold):
        o += 1
    return o


def positional_upper_bound(kind: SimilarityKind, l_r: int, rho: int) -> float:
    """Best achievable score for a set first encountered at probe position ``rho``.

    A set first seen in the ``rho``-th probed list misses at least ``rho - 1``
    of the probe's tokens, so it can do no better than a subset of size
    ``l_r - rho + 1``.
    """
    if rho < 1 or rho > l_r:
        raise ValueError(f"probe position {rho} out of range for length {l_r}")
    m = l_r - rho + 1
    return sim(kind, l_r, m, m)
