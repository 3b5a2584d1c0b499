from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradprolong.aggregation import build_reciprocal, default_alpha
from gradprolong.errors import InputError, Lemma2Violation
from gradprolong.generate import generate_instance
from gradprolong.graph import Digraph
from gradprolong.topology import (
    build_coarse_graph,
    build_topology,
    compute_C,
    compute_I,
    induced_subgraph,
    induced_subgraphs,
)


def brute_C(agg, fine):
    """C_n straight from the definition: edges with an extremity in L_n."""
    return [
        {i for i, (p, q) in enumerate(fine.edges, start=1) if p in members or q in members}
        for members in agg.sets
    ]


def small_instances():
    return st.builds(
        lambda seed, n, k, ov: generate_instance(seed, n, min(1.0, 4 / max(n - 1, 1)), min(k, n), ov),
        st.integers(0, 10**6), st.integers(2, 40), st.integers(1, 8), st.floats(0, 0.6),
    )


class TestComputeC:
    def test_reference_edge_7_8(self, ref_fine, ref_agg):
        _, C_tilde = compute_C(ref_agg, ref_fine)
        i = ref_fine.edges.index((7, 8)) + 1
        assert C_tilde[i - 1] == {1, 2, 3}

    def test_identity(self):
        fine = Digraph(3, ((1, 2), (3, 2)))
        agg = build_reciprocal([{1}, {2}, {3}], 3)
        C, C_tilde = compute_C(agg, fine)
        assert list(C_tilde) == [{1, 2}, {2, 3}]
        assert list(C) == [{1}, {1, 2}, {2}]

    def test_interior_edge_not_in_F(self, path4):
        fine = Digraph(4, ((1, 2), (2, 3), (3, 4)))
        agg = build_reciprocal([{1, 2}, {3, 4}], 4)
        top = build_topology(fine, agg)
        assert top.C_tilde[0] == {1}
        assert 1 not in top.F_tilde

    def test_size_mismatch(self, path4):
        fine, _ = path4
        with pytest.raises(InputError):
            compute_C(build_reciprocal([{1, 2}], 2), fine)

    @given(small_instances())
    @settings(max_examples=40, deadline=None)
    def test_matches_definition(self, inst):
        C, C_tilde = compute_C(inst.aggregation, inst.fine)
        assert [set(c) for c in C] == brute_C(inst.aggregation, inst.fine)
        for i, (p, q) in enumerate(inst.fine.edges, start=1):
            assert C_tilde[i - 1] == inst.aggregation.owners(p) | inst.aggregation.owners(q)


class TestCoarseGraph:
    def test_reference_triangle(self, ref_fine, ref_agg):
        C, _ = compute_C(ref_agg, ref_fine)
        coarse = build_coarse_graph(ref_agg, C)
        assert coarse.node_count == 3
        assert coarse.edges == ((1, 2), (1, 3), (2, 3))

    def test_identity_normalizes_and_merges(self):
        fine = Digraph(3, ((2, 1), (1, 2), (3, 2)))
        agg = build_reciprocal([{1}, {2}, {3}], 3)
        C, _ = compute_C(agg, fine)
        assert build_coarse_graph(agg, C).edges == ((1, 2), (2, 3))

    def test_no_shared_node_no_fine_edge(self):
        fine = Digraph(4, ((1, 2), (3, 4)))
        agg = build_reciprocal([{1, 2}, {3, 4}], 4)
        C, _ = compute_C(agg, fine)
        assert build_coarse_graph(agg, C).edges == ()

    @given(small_instances())
    @settings(max_examples=40, deadline=None)
    def test_edge_iff_supports_meet(self, inst):
        C = brute_C(inst.aggregation, inst.fine)
        coarse = build_coarse_graph(inst.aggregation, compute_C(inst.aggregation, inst.fine)[0])
        expected = [(m, n) for m, n in combinations(range(1, len(C) + 1), 2) if C[m - 1] & C[n - 1]]
        assert list(coarse.edges) == expected


class TestComputeI:
    def test_path4(self, path4):
        fine, agg = path4
        top = build_topology(fine, agg)
        assert top.coarse_graph.edges == ((1, 2),)
        assert top.I == ({1, 2, 3},)
        assert top.F_tilde == {1, 2, 3}

    def test_disjoint_path(self):
        fine = Digraph(4, ((1, 2), (2, 3), (3, 4)))
        agg = build_reciprocal([{1, 2}, {3, 4}], 4)
        top = build_topology(fine, agg)
        assert top.I == ({2},)
        assert top.F_tilde == {2}

    def test_identity(self):
        fine = Digraph(3, ((1, 2), (3, 2)))
        top = build_topology(fine, build_reciprocal([{1}, {2}, {3}], 3))
        assert top.I == ({1}, {2})
        assert top.F_tilde == {1, 2}

    def test_coarse_node_count_checked(self, path4):
        fine, agg = path4
        C, C_tilde = compute_C(agg, fine)
        with pytest.raises(InputError):
            compute_I(Digraph(3, ()), C, C_tilde)

    def test_inconsistent_maps_are_reported(self):
        coarse = Digraph(2, ((1, 2),))
        # C_tilde claims edge 1 touches only node 1, but C puts it in both supports.
        C = (frozenset({1}), frozenset({1}))
        C_tilde = (frozenset({1}),)
        with pytest.warns(RuntimeWarning):
            *_, violations = compute_I(coarse, C, C_tilde)
        assert len(violations) == 1
        with pytest.raises(Lemma2Violation):
            compute_I(coarse, C, C_tilde, strict=True)

    @given(small_instances())
    @settings(max_examples=40, deadline=None)
    def test_duality_and_lemma2(self, inst):
        top = build_topology(inst.fine, inst.aggregation)
        coarse = top.coarse_graph
        assert not top.lemma2_violations
        for i in inst.fine.edge_ids():
            for e in coarse.edge_ids():
                assert (e in top.I_tilde[i - 1]) == (i in top.I[e - 1])
            induced = {e for e, (m, n) in enumerate(coarse.edges, start=1)
                       if m in top.C_tilde[i - 1] and n in top.C_tilde[i - 1]}
            assert top.I_tilde[i - 1] == induced
            assert (i in top.F_tilde) == bool(top.I_tilde[i - 1])


class TestInducedSubgraphs:
    @given(small_instances())
    @settings(max_examples=40, deadline=None)
    def test_builder_gives_connected_cliques(self, inst):
        top = build_topology(inst.fine, inst.aggregation)
        for sub in induced_subgraphs(top):
            assert sub.connected
            k = len(sub.nodes)
            assert len(sub.edges) == k * (k - 1) // 2

    def test_supplied_edgeless_coarse_graph(self):
        fine = Digraph(2, ((1, 2),))
        agg = build_reciprocal([{1}, {2}], 2)
        top = build_topology(fine, agg, Digraph(2, ()))
        (sub,) = induced_subgraphs(top)
        assert not sub.connected
        assert sub.components == ({1}, {2})
        assert top.F_tilde == frozenset()

    def test_singleton_is_connected(self):
        fine = Digraph(4, ((1, 2), (2, 3), (3, 4)))
        top = build_topology(fine, build_reciprocal([{1, 2}, {3, 4}], 4))
        sub = induced_subgraph(top, 1)
        assert sub.connected and sub.components == ({1},)

    @given(small_instances())
    @settings(max_examples=30, deadline=None)
    def test_gradient_vanishes_off_support(self, inst):
        top = build_topology(inst.fine, inst.aggregation)
        alpha = default_alpha(inst.aggregation)
        for i, (p, q) in enumerate(inst.fine.edges, start=1):
            for n in range(1, inst.aggregation.coarse_node_count + 1):
                if i not in top.C[n - 1]:
                    assert alpha[q, n] - alpha[p, n] == 0
