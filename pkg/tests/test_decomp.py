import pytest

from graphs import N, P, double_l2p, k4_matching, l2p, two_tri_path
from signedcover.barbell import validate_gbarbell
from signedcover.decomp import (
    build_gbarbell_in_H,
    check_pair_decomposition,
    cover_0123,
    pair_decomposition,
    signed_circuit_through_S,
)
from signedcover.graph import Balanced, GraphError, LongBarbell, ShortBarbell, SignedGraph, validate_signed_circuit
from signedcover.structure import classify_bridges, partner_set

# two parallel negative edges 1-3 beside the positive path 1-2-3
PARALLEL = SignedGraph.from_edges(3, [(1, 2, P), (2, 3, P), (1, 3, N), (1, 3, N)])
# the same path with three parallel negative edges
TRIPLE = SignedGraph.from_edges(3, [(1, 2, P), (2, 3, P), (1, 3, N), (1, 3, N), (1, 3, N)])


def _check_0123(h, f):
    mult = f.multiplicity
    cat = classify_bridges(h)
    assert all(validate_signed_circuit(h, m) for m in f)
    assert all(mult[i] <= 3 for i in h.edge_ids)
    assert all(mult[i] >= 1 for i in cat.s_bridges | cat.partner_union)
    for i in h.negative_edges:
        if h.edge(i).is_loop:
            assert mult[i] == 2


def test_build_gbarbell_two_tri_path():
    h = two_tri_path()
    cert = build_gbarbell_in_H(h)
    assert cert.host == set(h.edge_ids)
    assert validate_gbarbell(h, cert)


def test_build_gbarbell_parallel_negatives():
    cert = build_gbarbell_in_H(PARALLEL)
    assert cert.host == {2, 3}


def test_build_gbarbell_l2p():
    cert = build_gbarbell_in_H(l2p())
    assert cert.host == {0, 1, 2}
    assert cert.link_edges == {1}


def test_build_gbarbell_preconditions():
    with pytest.raises(GraphError):
        build_gbarbell_in_H(TRIPLE)
    with pytest.raises(GraphError):
        build_gbarbell_in_H(SignedGraph.from_edges(3, [(1, 2, P), (2, 3, P), (3, 1, P), (1, 1, N), (2, 2, N)]))


def test_signed_circuit_through_S():
    h = two_tri_path()
    sc = signed_circuit_through_S(h, 0)
    assert isinstance(sc, LongBarbell)
    assert partner_set(h, 0) <= sc.edges
    assert signed_circuit_through_S(PARALLEL, 2) == Balanced(frozenset({2, 3}))
    loops = SignedGraph.from_edges(1, [(1, 1, N), (1, 1, N)])
    assert isinstance(signed_circuit_through_S(loops, 0), ShortBarbell)


def test_cover_0123_even_case():
    h = two_tri_path()
    f = cover_0123(h)
    assert set(f.multiplicity.values()) == {2}
    assert set(f.multiplicity) == set(h.edge_ids)


def test_cover_0123_odd_case():
    f = cover_0123(TRIPLE)
    _check_0123(TRIPLE, f)


def test_cover_0123_bridge_case():
    h = double_l2p()
    f = cover_0123(h)
    _check_0123(h, f)
    assert f.multiplicity[3] >= 1


def test_pair_decomposition_l2p():
    d = pair_decomposition(l2p())
    assert d.g1_edges == frozenset()
    assert d.g2_edges == {0, 1, 2}
    assert d.k == 2
    assert d.f2.length == 6
    check_pair_decomposition(l2p(), d)


def test_pair_decomposition_g_bridge():
    # both sides of the middle bridge have negativeness 2
    g = double_l2p()
    d = pair_decomposition(g)
    check_pair_decomposition(g, d)
    assert d.k == 3


def test_pair_decomposition_odd_negativeness():
    # L2P bridged to a triangle carrying a negative loop: three negatives in total
    g = SignedGraph.from_edges(5, [(1, 1, N), (1, 2, P), (2, 2, N), (2, 3, P), (3, 4, P), (4, 5, P), (5, 3, P),
                                   (3, 3, N)])
    d = pair_decomposition(g)
    check_pair_decomposition(g, d)
    assert d.k == 3
    assert d.g1_edges == {4, 5, 6}


def test_pair_decomposition_k4_matching():
    g = k4_matching()
    d = pair_decomposition(g)
    check_pair_decomposition(g, d)
    assert d.k == 2
    assert not d.g1_edges & g.negative_edges
