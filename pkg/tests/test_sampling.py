import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgraphon.core import validate_graphon
from hgraphon.presets import borderline_graphon, line_graphon_4
from hgraphon.sampling import (
    MalformedGraphDump,
    SampledGraph,
    coordinate_groups_consistent,
    dumps_graph,
    empirical_concentration,
    group_counts,
    loads_graph,
    sample_graph,
    sample_group_counts,
)

from conftest import step_graphons

F = Fraction


def constant_graphon(p):
    return validate_graphon([0, 1], [[p]])


class TestSampleGraph:
    def test_full_density_gives_complete_graph(self):
        sg = sample_graph(constant_graphon("1"), 5, 42)
        assert sg.edges.shape[0] == 10

    def test_zero_density_gives_empty_graph(self):
        sg = sample_graph(constant_graphon("0"), 8, 1)
        assert sg.edges.shape[0] == 0

    def test_determinism_byte_for_byte(self):
        g = borderline_graphon()
        a = sample_graph(g, 300, 123456789)
        b = sample_graph(g, 300, 123456789)
        assert np.array_equal(a.group_of, b.group_of)
        assert np.array_equal(a.edges, b.edges)
        assert np.array_equal(a.coordinates, b.coordinates)
        assert dumps_graph(a) == dumps_graph(b)

    def test_different_seeds_differ(self):
        g = borderline_graphon()
        a = sample_graph(g, 300, 1)
        b = sample_graph(g, 300, 2)
        assert not np.array_equal(a.edges, b.edges)

    def test_no_edges_inside_zero_block(self):
        g = borderline_graphon()
        for seed in range(5):
            sg = sample_graph(g, 400, seed)
            lab = sg.group_of
            u = sg.edges[:, 0]
            v = sg.edges[:, 1]
            assert not np.any((lab[u] == 1) & (lab[v] == 1))

    def test_support_consistency_on_line_graphon(self):
        g = line_graphon_4()
        sg = sample_graph(g, 500, 7)
        lab = sg.group_of
        for u, v in sg.edges.tolist():
            assert g.block(int(lab[u]), int(lab[v])) != 0

    def test_group_labels_match_coordinates_exactly(self):
        g = line_graphon_4()
        for seed in (0, 1, 2):
            sg = sample_graph(g, 200, seed)
            assert coordinate_groups_consistent(g, sg)

    def test_edges_sorted_and_in_range(self):
        sg = sample_graph(borderline_graphon(), 250, 9)
        edges = sg.edges
        assert np.all(edges[:, 0] < edges[:, 1])
        keys = edges[:, 0].astype(np.int64) * sg.n + edges[:, 1]
        assert np.all(np.diff(keys) > 0)

    def test_seed_range_checked(self):
        with pytest.raises(ValueError):
            sample_graph(borderline_graphon(), 10, -1)
        with pytest.raises(ValueError):
            sample_graph(borderline_graphon(), 10, 2**64)

    def test_n_must_be_positive(self):
        with pytest.raises(ValueError):
            sample_graph(borderline_graphon(), 0, 1)

    @given(step_graphons(max_q=3), st.integers(min_value=0, max_value=2**64 - 1))
    @settings(max_examples=25, deadline=None)
    def test_arbitrary_graphon_invariants(self, g, seed):
        sg = sample_graph(g, 60, seed)
        assert sum(group_counts(sg)) == 60
        assert coordinate_groups_consistent(g, sg)
        lab = sg.group_of
        for u, v in sg.edges.tolist():
            assert g.block(int(lab[u]), int(lab[v])) != 0

    def test_mean_edge_density_half(self):
        g = constant_graphon("1/2")
        total_pairs = 200 * 199 / 2
        densities = [
            sample_graph(g, 200, seed).edges.shape[0] / total_pairs for seed in range(100)
        ]
        assert abs(sum(densities) / len(densities) - 0.5) < 0.01


class TestGroupCounts:
    def test_single_node(self):
        sg = sample_graph(constant_graphon("1"), 1, 3)
        assert group_counts(sg) == (1,)

    def test_counts_partition_the_nodes(self):
        sg = sample_graph(line_graphon_4(), 777, 5)
        counts = group_counts(sg)
        assert len(counts) == 4 and sum(counts) == 777

    def test_fast_path_agrees_with_full_sampling(self):
        g = line_graphon_4()
        for n in (1, 37, 1500):
            for seed in (0, 9, 123):
                assert sample_group_counts(g, n, seed) == group_counts(
                    sample_graph(g, n, seed)
                )

    def test_borderline_mean_group_fraction(self):
        g = borderline_graphon()
        n = 10**4
        fractions = [sample_group_counts(g, n, seed)[0] / n for seed in range(100)]
        assert abs(sum(fractions) / len(fractions) - 0.5) < 0.02

    def test_fast_path_agrees_at_large_n(self):
        g = borderline_graphon()
        n = 10**4
        for seed in (11, 12):
            assert sample_group_counts(g, n, seed) == group_counts(sample_graph(g, n, seed))


class TestEmpiricalConcentration:
    def test_exact_division(self):
        sg = SampledGraph(
            n=10,
            q=2,
            group_of=np.array([1] * 5 + [2] * 5, dtype=np.int16),
            edges=np.empty((0, 2), dtype=np.int32),
        )
        assert empirical_concentration(sg) == (F(1, 2), F(1, 2))

    def test_exact_division_four_groups(self):
        sg = SampledGraph(
            n=10,
            q=4,
            group_of=np.array([1, 1, 2, 2, 2, 3, 3, 4, 4, 4], dtype=np.int16),
            edges=np.empty((0, 2), dtype=np.int32),
        )
        assert empirical_concentration(sg) == (F(1, 5), F(3, 10), F(1, 5), F(3, 10))

    def test_concentrates_around_ideal_at_n_1600(self):
        g = line_graphon_4()
        ideal = (0.2, 0.3, 0.25, 0.25)
        hits = 0
        trials = 200
        for seed in range(trials):
            counts = sample_group_counts(g, 1600, seed)
            err = math.sqrt(sum((c / 1600 - t) ** 2 for c, t in zip(counts, ideal)))
            hits += err <= 0.05
        assert hits / trials >= 0.95

    def test_agrees_with_full_sample(self):
        g = line_graphon_4()
        sg = sample_graph(g, 1600, 0)
        counts = sample_group_counts(g, 1600, 0)
        assert empirical_concentration(sg) == tuple(F(c, 1600) for c in counts)

    def test_tail_fraction_decays_with_n(self):
        g = line_graphon_4()
        ideal = (0.2, 0.3, 0.25, 0.25)
        epsilon = 0.02
        tails = []
        for n in (400, 1600, 6400):
            exceed = 0
            for seed in range(200):
                counts = sample_group_counts(g, n, seed)
                err = math.sqrt(sum((c / n - t) ** 2 for c, t in zip(counts, ideal)))
                exceed += err > epsilon
            tails.append(exceed / 200)
        assert tails[0] >= tails[1] >= tails[2]
        assert tails[2] < tails[0]


class TestGraphDump:
    def test_round_trip(self):
        sg = sample_graph(line_graphon_4(), 120, 5)
        back = loads_graph(dumps_graph(sg))
        assert back.n == sg.n and back.q == sg.q
        assert np.array_equal(back.group_of, sg.group_of)
        assert np.array_equal(back.edges, sg.edges)
        assert back.coordinates is None

    def test_format_is_stable(self):
        sg = SampledGraph(
            n=3,
            q=2,
            group_of=np.array([1, 2, 1], dtype=np.int16),
            edges=np.array([[0, 1], [1, 2]], dtype=np.int32),
        )
        assert dumps_graph(sg) == "3 2\n1 2 1\n0 1\n1 2\n"

    def test_bad_header(self):
        with pytest.raises(MalformedGraphDump):
            loads_graph("nope\n1 1\n")

    def test_wrong_label_count(self):
        with pytest.raises(MalformedGraphDump):
            loads_graph("3 2\n1 2\n")

    def test_label_out_of_range(self):
        with pytest.raises(MalformedGraphDump):
            loads_graph("2 2\n1 3\n")

    def test_self_loop_edge_rejected(self):
        with pytest.raises(MalformedGraphDump):
            loads_graph("2 1\n1 1\n0 0\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(MalformedGraphDump):
            loads_graph("2 1\n1 1\n0 1\n0 1\n")

    def test_edge_out_of_range(self):
        with pytest.raises(MalformedGraphDump):
            loads_graph("2 1\n1 1\n0 2\n")
