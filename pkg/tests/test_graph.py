import pytest

from graphs import N, P, bowtie, cycle, k4, l2p, triangle
from signedcover.graph import (
    Balanced,
    CoverFamily,
    Edge,
    GraphError,
    InvalidMember,
    LongBarbell,
    ShortBarbell,
    SignedGraph,
    classify_signed_circuit,
    cover_multiplicities,
    is_balanced,
    is_circuit,
    negative_count,
    validate_signed_circuit,
)


def test_from_edges_assigns_stable_ids():
    g = SignedGraph.from_edges(3, [(1, 2, P), (2, 3, N), (3, 3, N)])
    assert g.edge_ids == [0, 1, 2]
    assert g.edge(1) == Edge(2, 3, N)
    assert g.negative_edges == {1, 2}


@pytest.mark.parametrize("edges", [[(0, 1, P)], [(1, 4, P)], [(1, 2, 0)], [(1, 2, 2)]])
def test_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        SignedGraph.from_edges(3, edges)


def test_negative_count():
    assert negative_count(triangle(), [0, 1, 2]) == 0
    two_loops = SignedGraph.from_edges(1, [(1, 1, N), (1, 1, N)])
    assert negative_count(two_loops, [0, 1]) == 2
    assert negative_count(k4(N), [0, 1, 3]) == 3


def test_is_circuit():
    g = l2p()
    assert is_circuit(g, [0])
    assert not is_circuit(g, [0, 1])
    assert is_circuit(cycle(4), [0, 1, 2, 3])
    assert not is_circuit(bowtie(), range(6))


def test_is_balanced():
    assert is_balanced(cycle(4), range(4))
    assert not is_balanced(triangle(1), range(3))
    digon = SignedGraph.from_edges(2, [(1, 2, N), (1, 2, N)])
    assert is_balanced(digon, [0, 1])


def test_validate_long_barbell_on_l2p():
    assert validate_signed_circuit(l2p(), LongBarbell(frozenset({0}), (1,), frozenset({2})))


def test_validate_balanced_claim_on_unbalanced_triangle():
    d = validate_signed_circuit(triangle(1), Balanced(frozenset({0, 1, 2})))
    assert not d
    assert "odd negative count" in d.reasons


def test_validate_short_barbell_joint_not_unique():
    # two unbalanced digons on vertices {1, 2}
    g = SignedGraph.from_edges(2, [(1, 2, N), (1, 2, P), (1, 2, N), (1, 2, P)])
    d = validate_signed_circuit(g, ShortBarbell(frozenset({0, 1}), frozenset({2, 3}), 1))
    assert not d
    assert "joint not unique" in d.reasons


def test_validate_long_barbell_path_must_touch_ends_only():
    g = SignedGraph.from_edges(3, [(1, 1, N), (1, 2, P), (2, 3, P), (3, 3, N)])
    assert validate_signed_circuit(g, LongBarbell(frozenset({0}), (1, 2), frozenset({3})))
    assert not validate_signed_circuit(g, LongBarbell(frozenset({0}), (1,), frozenset({3})))


def test_validate_unknown_edge():
    d = validate_signed_circuit(triangle(), Balanced(frozenset({7})))
    assert not d and "unknown" in d.reasons[0]


def test_classify_signed_circuit():
    assert isinstance(classify_signed_circuit(l2p(), [0, 1, 2]), LongBarbell)
    assert isinstance(classify_signed_circuit(bowtie(), range(6)), ShortBarbell)
    assert isinstance(classify_signed_circuit(cycle(4, 2), range(4)), Balanced)
    assert classify_signed_circuit(triangle(1), range(3)) is None
    assert classify_signed_circuit(l2p(), [0, 2]) is None


def test_multiplicities_long_barbell():
    rep = cover_multiplicities(l2p(), CoverFamily([LongBarbell(frozenset({0}), (1,), frozenset({2}))]))
    assert rep.multiplicity == {0: 1, 1: 1, 2: 1}
    assert rep.length == 3


def test_multiplicities_doubled_short_barbell():
    sb = ShortBarbell(frozenset({0, 1, 2}), frozenset({3, 4, 5}), 3)
    rep = cover_multiplicities(bowtie(), CoverFamily([sb, sb]))
    assert set(rep.multiplicity.values()) == {2}
    assert rep.length == 12


def test_multiplicities_empty_family():
    rep = cover_multiplicities(k4(), CoverFamily())
    assert set(rep.multiplicity.values()) == {0}
    assert rep.length == 0
    assert rep.uncovered == list(range(6))


def test_multiplicities_reject_invalid_member():
    with pytest.raises(InvalidMember):
        cover_multiplicities(triangle(1), CoverFamily([Balanced(frozenset({0, 1, 2}))]))


def test_subgraph_and_components():
    g = bowtie()
    sub = g.subgraph([0, 1, 2])
    assert sub.vertices == {1, 2, 3}
    assert sub.edge_ids == [0, 1, 2]
    assert g.without([1]).edge_count == 5
    assert len(SignedGraph.from_edges(4, [(1, 2, P), (3, 4, P)]).components()) == 2
