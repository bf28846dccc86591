import random

import numpy as np
import pytest

from hgraphon.matching import (
    LeftLargerThanRight,
    left_perfect_matching,
    maximum_matching_pairs,
)


def kuhn_maximum_matching_size(left, right, edges):
    """Independent oracle: simple augmenting-path (Kuhn) maximum matching."""
    adj = {l: [] for l in left}
    for l, r in edges:
        adj[l].append(r)
    match_r = {}

    def try_augment(l, visited):
        for r in adj[l]:
            if r in visited:
                continue
            visited.add(r)
            if r not in match_r or try_augment(match_r[r], visited):
                match_r[r] = l
                return True
        return False

    size = 0
    for l in left:
        size += try_augment(l, set())
    return size


def neighborhood(edges, subset):
    return {r for l, r in edges if l in subset}


class TestLeftPerfectMatching:
    def test_complete_2x3(self):
        edges = [(l, r) for l in (0, 1) for r in (10, 11, 12)]
        res = left_perfect_matching([0, 1], [10, 11, 12], edges)
        assert res.matching is not None and len(res.matching) == 2
        lefts = [l for l, _ in res.matching.pairs]
        rights = [r for _, r in res.matching.pairs]
        assert lefts == [0, 1] and len(set(rights)) == 2

    def test_isolated_left_node_yields_witness(self):
        edges = [(0, 10), (1, 10)]
        res = left_perfect_matching([0, 1, 2], [10, 11, 12], edges)
        assert res.matching is None
        assert 2 in res.hall_witness
        assert len(neighborhood(edges, set(res.hall_witness))) < len(res.hall_witness)

    def test_left_larger_than_right(self):
        with pytest.raises(LeftLargerThanRight):
            left_perfect_matching([0, 1], [10], [(0, 10)])

    def test_deterministic_tie_breaking(self):
        edges = [(0, 10), (0, 11), (1, 10), (1, 11)]
        res = left_perfect_matching([0, 1], [10, 11], edges)
        assert res.matching.pairs == ((0, 10), (1, 11))

    def test_every_pair_is_an_input_edge(self):
        rng = random.Random(5)
        left = list(range(8))
        right = list(range(100, 110))
        edges = [(l, r) for l in left for r in right if rng.random() < 0.4]
        res = left_perfect_matching(left, right, edges)
        if res.matching is not None:
            assert set(res.matching.pairs) <= set(edges)

    def test_rejects_edge_outside_sides(self):
        with pytest.raises(ValueError):
            left_perfect_matching([0], [1], [(0, 99)])


class TestMaximality:
    def test_matches_kuhn_oracle_on_random_graphs(self):
        rng = random.Random(20240810)
        for _ in range(300):
            nl = rng.randint(0, 7)
            nr = rng.randint(nl, 8)
            left = list(range(nl))
            right = list(range(50, 50 + nr))
            edges = [(l, r) for l in left for r in right if rng.random() < 0.45]
            ours = maximum_matching_pairs(left, right, edges)
            assert len(ours) == kuhn_maximum_matching_size(left, right, edges)

    def test_witness_is_a_hall_violation_whenever_matching_fails(self):
        rng = random.Random(31337)
        failures = 0
        for _ in range(300):
            nl = rng.randint(1, 7)
            nr = rng.randint(nl, 8)
            left = list(range(nl))
            right = list(range(50, 50 + nr))
            edges = [(l, r) for l in left for r in right if rng.random() < 0.25]
            res = left_perfect_matching(left, right, edges)
            if res.matching is None:
                failures += 1
                witness = set(res.hall_witness)
                assert witness
                assert len(neighborhood(edges, witness)) < len(witness)
        assert failures > 30


class TestDenseRandomBipartite:
    def test_half_density_300x300_always_matches(self):
        for seed in range(200):
            gen = np.random.Generator(np.random.Philox(key=seed))
            grid = gen.integers(0, 2, size=(300, 300), dtype=np.int8)
            rows, cols = np.nonzero(grid)
            edges = [(int(r), 300 + int(c)) for r, c in zip(rows, cols)]
            res = left_perfect_matching(range(300), range(300, 600), edges)
            assert res.matching is not None and len(res.matching) == 300
