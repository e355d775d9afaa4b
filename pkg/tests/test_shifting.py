import random

import pytest
from hypothesis import given, settings, strategies as st

from kclique.blowup import Weighting, count_cliques_formula, count_edges_formula
from kclique.families import build_multipartite, build_sperner, graph_corpus, hall_level_matching
from kclique.graph import Graph, complete_graph, path_graph, prism_graph
from kclique.shifting import (
    LEMMA3,
    LEMMA4,
    CertificateError,
    InvalidShift,
    ShiftError,
    ShiftSpec,
    apply_shift,
    build_injection_certificate,
    katona_best_edge_shift,
    multi_shift,
    shift_edge,
    validate_shift,
)

from conftest import graphs_with_weights


def random_valid_spec(rng, g, w, mode, tries=50):
    """A random spec passing ``mode``, or None."""
    for _ in range(tries):
        edges = list(g.edges())
        if not edges:
            return None
        rng.shuffle(edges)
        a_list, b_list, used = [], [], set()
        for u, v in edges:
            if rng.random() < 0.5:
                u, v = v, u
            if u in used or v in used:
                continue
            spec = ShiftSpec(tuple(a_list + [u]), tuple(b_list + [v]))
            if validate_shift(g, w, spec, mode).valid:
                a_list.append(u)
                b_list.append(v)
                used |= {u, v}
        if a_list:
            return ShiftSpec(tuple(a_list), tuple(b_list))
    return None


class TestShiftSpec:
    def test_overlap_rejected(self):
        with pytest.raises(ShiftError):
            ShiftSpec((0, 1), (1, 2))

    def test_duplicates_rejected(self):
        with pytest.raises(ShiftError):
            ShiftSpec((0, 0), (1, 2))

    def test_length_mismatch(self):
        with pytest.raises(ShiftError):
            ShiftSpec((0,), (1, 2))

    def test_round_trip(self):
        spec = ShiftSpec((0, 2), (1, 3))
        assert ShiftSpec.from_dict(spec.to_dict()) == spec
        assert spec.r == 2
        with pytest.raises(ShiftError):
            ShiftSpec.from_dict({"A": [0]})


class TestShiftEdge:
    def test_prism_triangle_edge(self):
        g = prism_graph()
        w = shift_edge(g, (1,) * 6, 1, 0)
        assert tuple(w) == (2, 0, 1, 1, 1, 1)
        assert count_cliques_formula(g, w, 3) == 3

    def test_zero_weight_source(self):
        g = path_graph(3)
        w = shift_edge(g, (0, 2, 3), 0, 1)
        assert tuple(w) == (0, 2, 3)

    def test_path_merge(self):
        assert tuple(shift_edge(path_graph(3), (3, 3, 3), 1, 0)) == (6, 0, 3)

    def test_non_edge(self):
        with pytest.raises(ShiftError):
            shift_edge(path_graph(3), (1, 1, 1), 0, 2)

    @settings(max_examples=100, deadline=None)
    @given(graphs_with_weights(max_n=6, max_w=4), st.data())
    def test_mass_preserved(self, gw, data):
        g, w = gw
        edges = g.edges()
        if not edges:
            return
        a, b = data.draw(st.sampled_from(edges))
        assert shift_edge(g, w, a, b).m == sum(w)


class TestBestEdgeShift:
    def test_single_edge_tie(self):
        g = Graph(2, [(0, 1)])
        assert tuple(katona_best_edge_shift(g, (1, 1), 0, 1)) == (0, 2)

    def test_path(self):
        g = path_graph(3)
        w = katona_best_edge_shift(g, (1, 1, 1), 0, 1)
        # w_01 = (0,2,1) has 1 + 2 = 3 edges, w_10 = (2,0,1) has 1
        assert tuple(w) == (2, 0, 1)
        assert count_edges_formula(g, w) == 1 < count_edges_formula(g, (1, 1, 1))

    def test_star(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3)])
        for a, b in g.edges():
            assert count_edges_formula(g, katona_best_edge_shift(g, (1,) * 4, a, b)) <= 3

    def test_guarantee_on_corpus(self):
        rng = random.Random(7)
        for g in graph_corpus(5):
            for _ in range(3):
                w = tuple(rng.randint(0, 4) for _ in range(g.n))
                before = count_edges_formula(g, w)
                for a, b in g.edges():
                    assert count_edges_formula(g, katona_best_edge_shift(g, w, a, b)) <= before


class TestPrismNonMonotone:
    def test_every_single_edge_shift_increases_triangles(self):
        g = prism_graph()
        w = (1,) * 6
        assert count_cliques_formula(g, w, 3) == 2
        for a, b in g.edges():
            for x, y in ((a, b), (b, a)):
                assert count_cliques_formula(g, shift_edge(g, w, x, y), 3) > 2

    def test_prism_shift_sequence(self):
        g = prism_graph()
        w1 = shift_edge(g, (1,) * 6, 1, 0)
        w2 = shift_edge(g, (1,) * 6, 1, 4)
        assert [count_cliques_formula(g, w, 3) for w in ((1,) * 6, w1, w2)] == [2, 3, 4]


class TestValidate:
    def test_sperner_level_shift_valid(self):
        b = build_sperner(3)
        matching = hall_level_matching(b, 1, "up")
        spec = ShiftSpec(tuple(s for s, _ in matching.pairs), tuple(t for _, t in matching.pairs))
        v = validate_shift(b.graph, (1,) * 8, spec, LEMMA3)
        assert v.valid and v.failures == []

    def test_missing_edge_witness(self):
        g = path_graph(3)
        v = validate_shift(g, (1, 1, 1), ShiftSpec((0,), (2,)), LEMMA3)
        assert not v.cond_edges
        assert ("edges", 0, 2) in v.failures
        assert not v.valid

    def test_prism_neighbourhood_fails(self):
        g = prism_graph()
        v = validate_shift(g, (1,) * 6, ShiftSpec((0,), (3,)), LEMMA3)
        assert v.cond_edges and v.cond_B
        assert not v.cond_neighborhood
        assert {f[2] for f in v.failures} == {4, 5}

    def test_zero_weights_are_excluded(self):
        g = prism_graph()
        v = validate_shift(g, (1, 1, 1, 1, 0, 0), ShiftSpec((0,), (3,)), LEMMA3)
        assert v.valid

    def test_b_independent_vs_pairwise_mode(self):
        g = complete_graph(4)
        spec = ShiftSpec((0, 1), (2, 3))
        v3 = validate_shift(g, (1,) * 4, spec, LEMMA3)
        v4 = validate_shift(g, (1,) * 4, spec, LEMMA4)
        assert not v3.cond_B and ("B_independent", 0, 3) in v3.failures
        assert v4.valid
        assert not v4.a_independent

    def test_pairwise_mode_witness(self):
        # b0 b1 adjacent but a0 a1 is not an edge
        g = Graph(4, [(0, 2), (1, 3), (2, 3), (0, 3), (1, 2)])
        v = validate_shift(g, (1,) * 4, ShiftSpec((0, 1), (2, 3)), LEMMA4)
        assert not v.cond_B
        assert any(f[0] == "pair_edges" for f in v.failures)
        assert v.a_independent

    def test_unknown_mode(self):
        with pytest.raises(ShiftError):
            validate_shift(path_graph(3), (1, 1, 1), ShiftSpec((), ()), "lemma9")

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            validate_shift(path_graph(3), (1, 1, 1), ShiftSpec((0,), (7,)))


class TestMultiShift:
    def test_sperner_b2(self):
        b = build_sperner(2)
        spec = ShiftSpec((b.vertex_of(0),), (b.vertex_of(1),))
        w = (1, 1, 1, 1)
        w2 = multi_shift(b.graph, w, spec)
        assert w2[b.vertex_of(0)] == 0 and w2[b.vertex_of(1)] == 2
        assert count_edges_formula(b.graph, w) == 5
        assert count_edges_formula(b.graph, w2) <= 5

    def test_empty_spec(self):
        assert tuple(multi_shift(path_graph(3), (1, 2, 3), ShiftSpec((), ()))) == (1, 2, 3)

    def test_multipartite_part_merge(self):
        g = build_multipartite((2, 2))
        spec = ShiftSpec((2, 3), (0, 1))
        for w in [(1, 1, 1, 1), (2, 1, 3, 0), (0, 0, 2, 2)]:
            w2 = multi_shift(g, w, spec)
            for k in (2, 3):
                assert count_cliques_formula(g, w2, k) <= count_cliques_formula(g, w, k)

    def test_refuses_invalid(self):
        with pytest.raises(InvalidShift) as exc:
            multi_shift(prism_graph(), (1,) * 6, ShiftSpec((0,), (3,)))
        assert not exc.value.validation.valid

    def test_apply_shift_unchecked(self):
        assert tuple(apply_shift((1,) * 6, ShiftSpec((0,), (3,)))) == (0, 1, 1, 2, 1, 1)

    def test_inequality_on_random_valid_specs(self):
        rng = random.Random(11)
        checked = 0
        for g in graph_corpus(5):
            for mode in (LEMMA3, LEMMA4):
                w = Weighting(tuple(rng.randint(0, 3) for _ in range(g.n)))
                spec = random_valid_spec(rng, g, w, mode)
                if spec is None:
                    continue
                w2 = multi_shift(g, w, spec, mode)
                assert w2.m == w.m
                for k in range(2, 5):
                    assert count_cliques_formula(g, w2, k) <= count_cliques_formula(g, w, k)
                checked += 1
        assert checked > 50


class TestCertificate:
    def test_sperner_b2_k2(self):
        b = build_sperner(2)
        cert = build_injection_certificate(b.graph, (1,) * 4, ShiftSpec((0,), (1,)), 2)
        assert cert.verified
        assert cert.cliques_after <= cert.cliques_before == 5

    def test_empty_spec_identity(self):
        cert = build_injection_certificate(path_graph(3), (1, 2, 1), ShiftSpec((), ()), 2)
        assert all(src == dst for src, dst in cert.phi.items())
        assert cert.cliques_after == cert.cliques_before

    def test_sperner_b3_level_shift(self):
        b = build_sperner(3)
        matching = hall_level_matching(b, 1, "up")
        spec = ShiftSpec(tuple(s for s, _ in matching.pairs), tuple(t for _, t in matching.pairs))
        cert = build_injection_certificate(b.graph, (1,) * 8, spec, 3)
        assert cert.verified
        assert cert.cliques_after == count_cliques_formula(b.graph, multi_shift(b.graph, (1,) * 8, spec), 3)
        assert cert.cliques_before == count_cliques_formula(b.graph, (1,) * 8, 3)

    def test_phi_formula(self):
        g = path_graph(3)
        cert = build_injection_certificate(g, (2, 1, 0), ShiftSpec((0,), (1,)), 2)
        # w'(1) = 3; copies 2 and 3 of vertex 1 come from copies 1 and 2 of vertex 0
        assert cert.phi[(1, 1)] == (1, 1)
        assert cert.phi[(1, 2)] == (0, 1)
        assert cert.phi[(1, 3)] == (0, 2)

    def test_pairwise_mode(self):
        g = complete_graph(4)
        cert = build_injection_certificate(g, (1, 2, 1, 1), ShiftSpec((0, 1), (2, 3)), 3, mode=LEMMA4)
        assert cert.verified

    def test_invalid_spec_refused(self):
        with pytest.raises(InvalidShift):
            build_injection_certificate(prism_graph(), (1,) * 6, ShiftSpec((0,), (3,)), 3)

    def test_certificate_error_is_assertion(self):
        assert issubclass(CertificateError, AssertionError)

    def test_counts_agree_with_formula(self):
        rng = random.Random(3)
        for g in graph_corpus(4, connected=True):
            w = Weighting(tuple(rng.randint(0, 2) for _ in range(g.n)))
            spec = random_valid_spec(rng, g, w, LEMMA3)
            if spec is None:
                continue
            for k in (2, 3):
                cert = build_injection_certificate(g, w, spec, k)
                assert cert.cliques_before == count_cliques_formula(g, w, k)
                assert cert.cliques_after == count_cliques_formula(g, multi_shift(g, w, spec), k)
