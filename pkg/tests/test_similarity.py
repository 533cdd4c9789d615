"""Similarity function behavior: formulas, inversion, and the probe bound."""

from __future__ import annotations

import itertools
import math
import random

import pytest

from streamtopk import (
    SimilarityKind,
    at_least_as_good,
    is_better,
    min_overlap,
    positional_upper_bound,
    set_similarity,
    sim,
    sort_key,
    worst_score,
)

from reference import ref_sim_from_sets

ALL_KINDS = list(SimilarityKind)
MAXIMIZING = [k for k in ALL_KINDS if not k.minimizes]


class TestSim:
    def test_identical_sets_are_perfect(self):
        for length in (1, 2, 7, 50):
            assert sim(SimilarityKind.JACCARD, length, length, length) == 1.0
            assert sim(SimilarityKind.COSINE, length, length, length) == 1.0
            assert sim(SimilarityKind.DICE, length, length, length) == 1.0
            assert sim(SimilarityKind.OVERLAP, length, length, length) == length
            assert sim(SimilarityKind.HAMMING, length, length, length) == 0.0

    def test_zero_overlap_is_worst_value(self):
        # For the distance kind the zero-overlap value depends on the
        # lengths; it is still the worst value attainable at those lengths.
        for l_r, l_s in itertools.product(range(1, 8), repeat=2):
            for kind in MAXIMIZING:
                assert sim(kind, l_r, l_s, 0) == 0.0
            assert sim(SimilarityKind.HAMMING, l_r, l_s, 0) == l_r + l_s
            for o in range(1, min(l_r, l_s) + 1):
                for kind in ALL_KINDS:
                    assert is_better(kind, sim(kind, l_r, l_s, o),
                                     sim(kind, l_r, l_s, 0))

    def test_frozen_values(self):
        assert sim(SimilarityKind.JACCARD, 5, 4, 4) == pytest.approx(0.8, abs=0)
        assert sim(SimilarityKind.COSINE, 4, 9, 3) == pytest.approx(0.5, abs=0)
        assert sim(SimilarityKind.HAMMING, 3, 3, 3) == 0.0
        assert sim(SimilarityKind.DICE, 6, 4, 3) == 0.6
        assert sim(SimilarityKind.OVERLAP, 9, 5, 2) == 2.0

    def test_symmetry(self):
        for kind in ALL_KINDS:
            for l_r, l_s in itertools.product(range(1, 12), repeat=2):
                for o in range(0, min(l_r, l_s) + 1):
                    assert sim(kind, l_r, l_s, o) == sim(kind, l_s, l_r, o)

    def test_overlap_monotonicity(self):
        for kind in ALL_KINDS:
            for l_r, l_s in itertools.product(range(1, 12), repeat=2):
                values = [sim(kind, l_r, l_s, o)
                          for o in range(0, min(l_r, l_s) + 1)]
                keys = [sort_key(kind, v) for v in values]
                assert keys == sorted(keys, reverse=True)

    def test_subset_monotonicity(self):
        for kind in ALL_KINDS:
            for l_r in range(1, 12):
                keys = [sort_key(kind, sim(kind, l_r, o, o))
                        for o in range(1, l_r + 1)]
                assert keys == sorted(keys, reverse=True)

    def test_matches_set_based_computation(self):
        rng = random.Random(7)
        for _ in range(300):
            universe = rng.randint(4, 30)
            a = frozenset(rng.sample(range(universe), rng.randint(1, universe)))
            b = frozenset(rng.sample(range(universe), rng.randint(1, universe)))
            for kind in ALL_KINDS:
                assert set_similarity(kind, a, b) == ref_sim_from_sets(kind.value, a, b)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            sim(SimilarityKind.JACCARD, 0, 3, 0)
        with pytest.raises(ValueError):
            sim(SimilarityKind.JACCARD, 3, 3, 4)
        with pytest.raises(ValueError):
            sim(SimilarityKind.JACCARD, 3, 3, -1)


class TestOrdering:
    def test_hamming_order_is_reversed(self):
        assert is_better(SimilarityKind.HAMMING, 0.0, 2.0)
        assert not is_better(SimilarityKind.HAMMING, 2.0, 0.0)
        assert is_better(SimilarityKind.JACCARD, 0.7, 0.2)

    def test_worst_score_is_bottom(self):
        for kind in ALL_KINDS:
            bottom = worst_score(kind)
            for value in (0.0, 0.3, 1.0, 5.0):
                assert at_least_as_good(kind, value, bottom)


def brute_min_overlap(kind, l_r, l_s, threshold):
    for o in range(0, min(l_r, l_s) + 1):
        if at_least_as_good(kind, sim(kind, l_r, l_s, o), threshold):
            return o
    return None


class TestMinOverlap:
    def test_frozen_values(self):
        assert min_overlap(SimilarityKind.JACCARD, 4, 4, 0.5) == 3
        assert min_overlap(SimilarityKind.DICE, 6, 4, 0.6) == 3
        # Overlap inverts to the threshold itself, rounded up.
        assert min_overlap(SimilarityKind.OVERLAP, 9, 7, 3) == 3
        assert min_overlap(SimilarityKind.OVERLAP, 9, 7, 2.5) == 3

    def test_agrees_with_brute_force(self):
        rng = random.Random(13)
        grids = {
            SimilarityKind.JACCARD: [i / 20 for i in range(21)],
            SimilarityKind.COSINE: [i / 20 for i in range(21)],
            SimilarityKind.DICE: [i / 20 for i in range(21)],
            SimilarityKind.OVERLAP: [i * 0.7 for i in range(21)],
            SimilarityKind.HAMMING: [i * 1.3 for i in range(21)],
        }
        for _ in range(400):
            l_r = rng.randint(1, 40)
            l_s = rng.randint(1, 40)
            kind = rng.choice(ALL_KINDS)
            for threshold in grids[kind]:
                expected = brute_min_overlap(kind, l_r, l_s, threshold)
                got = min_overlap(kind, l_r, l_s, threshold)
                if expected is None:
                    assert got == min(l_r, l_s)  # clamped: unattainable here
                else:
                    assert got == expected

    def test_unattainable_threshold_clamps(self):
        assert min_overlap(SimilarityKind.COSINE, 1, 49, 0.9) == 1
        assert min_overlap(SimilarityKind.HAMMING, 4, 4, math.inf) == 0


class TestPositionalUpperBound:
    def test_frozen_values(self):
        ub = positional_upper_bound
        assert ub(SimilarityKind.JACCARD, 5, 1) == 1.0
        assert ub(SimilarityKind.JACCARD, 5, 2) == 0.8
        assert ub(SimilarityKind.JACCARD, 5, 3) == 0.6
        assert ub(SimilarityKind.HAMMING, 5, 3) == 2.0

    def test_monotone_in_position(self):
        for kind in ALL_KINDS:
            for l_r in range(1, 51):
                keys = [sort_key(kind, positional_upper_bound(kind, l_r, rho))
                        for rho in range(1, l_r + 1)]
                assert keys == sorted(keys)

    def test_rejects_out_of_range_position(self):
        with pytest.raises(ValueError):
            positional_upper_bound(SimilarityKind.JACCARD, 5, 6)
        with pytest.raises(ValueError):
            positional_upper_bound(SimilarityKind.JACCARD, 5, 0)

    def test_sound_for_all_small_sets(self):
        # Exhaustive: any pair where at least `miss` tokens of r are absent
        # from s can never beat the bound for position miss + 1.
        universe = list(range(8))
        subsets = [frozenset(c)
                   for size in range(1, 7)
                   for c in itertools.combinations(universe, size)]
        for kind in ALL_KINDS:
            for r in subsets:
                for s in subsets:
                    miss = len(r - s)
                    if miss == 0:
                        continue
                    # An entirely disjoint s still misses len(r) - 1 tokens,
                    # which keeps the probe position within range.
                    rho = min(miss, len(r) - 1) + 1
                    value = set_similarity(kind, r, s)
                    bound = positional_upper_bound(kind, len(r), rho)
                    assert not is_better(kind, value, bound)
