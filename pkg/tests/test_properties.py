import random

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from signedcover.barbell import eulerian_scdc, gbarbell_scdc, one_two_cover, CoverWithSpares
from signedcover.decomp import cover_0123
from signedcover.engine import chained_bound, scc_upper_cover, theorem_bounds, verify_cover
from signedcover.generators import random_eulerian, random_gbarbell, random_h_graph, random_signed_graph
from signedcover.graph import SignedGraph
from signedcover.io import emit_instance, parse_instance
from signedcover.structure import bridges, classify_bridges, is_s_bridgeless, partner_set
from signedcover.switching import negativeness_exact, switch, verify_minimal_signature
from signedcover.unsigned import circuit_cover_bridgeless

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def signed_graphs(draw, max_n=7, max_m=12, loops=True):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    edges = []
    for _ in range(m):
        u = draw(st.integers(1, n))
        v = draw(st.integers(1, n)) if loops else draw(st.integers(1, n).filter(lambda x: x != u or n == 1))
        edges.append((u, v, draw(st.sampled_from((1, -1)))))
    return SignedGraph.from_edges(n, edges)


seeds = st.integers(0, 2**32 - 1)


@SETTINGS
@given(signed_graphs(), st.data())
def test_switching_preserves_negativeness(g, data):
    s = data.draw(st.sets(st.sampled_from(sorted(g.vertices))))
    assert negativeness_exact(switch(g, s)).epsilon_n == negativeness_exact(g).epsilon_n
    assert switch(switch(g, s), s) == g


@SETTINGS
@given(signed_graphs(max_n=6))
def test_minimal_signature_iff_negativeness(g):
    eps = negativeness_exact(g).epsilon_n
    assert verify_minimal_signature(g) == (len(g.negative_edges) == eps)


@SETTINGS
@given(signed_graphs())
def test_certificate_is_consistent(g):
    cert = negativeness_exact(g)
    h = switch(g, cert.optimal_switch)
    assert h.negative_edges == cert.resulting_negative_edges
    assert len(h.negative_edges) == cert.epsilon_n


@SETTINGS
@given(signed_graphs())
def test_instance_round_trip(g):
    text = emit_instance(g)
    assert parse_instance(text) == g
    assert emit_instance(parse_instance(text)) == text


@SETTINGS
@given(signed_graphs())
def test_partner_sets_are_two_edge_cuts(g):
    bset = bridges(g)
    for e in g.edge_ids:
        s = partner_set(g, e)
        assert e in s
        comps = g.component_count()
        for f in s - {e}:
            assert g.without([e, f]).component_count() > comps
            assert g.without([f]).component_count() == comps
    cat = classify_bridges(g)
    assert cat.s_bridges <= bset and cat.g_class_bridges <= bset


@SETTINGS
@given(seeds)
def test_eulerian_double_cover(seed):
    rng = random.Random(seed)
    g = random_eulerian(rng, rng.randint(1, 8), rng.randint(1, 30))
    f = eulerian_scdc(g, g.edge_ids)
    rep = verify_cover(g, f, K={2})
    assert rep and f.length == 2 * g.edge_count


@SETTINGS
@given(seeds)
def test_gbarbell_double_cover_and_one_two(seed):
    rng = random.Random(seed)
    g, cert = random_gbarbell(rng, rng.randint(1, 6))
    f = gbarbell_scdc(g, cert)
    assert all(f.multiplicity[i] == 2 for i in cert.host)
    assert verify_cover(g.subgraph(cert.host), f, K={2})
    r = one_two_cover(g, cert)
    fam = r.cover if isinstance(r, CoverWithSpares) else r.family(g)
    assert all(fam.multiplicity[i] in (1, 2) for i in cert.host)


@SETTINGS
@given(seeds)
def test_cover_0123_contract(seed):
    rng = random.Random(seed)
    h = random_h_graph(rng, rng.randint(1, 9), rng.randint(2, 6))
    f = cover_0123(h)
    mult = f.multiplicity
    cat = classify_bridges(h)
    assert all(mult[i] <= 3 for i in h.edge_ids)
    assert all(mult[i] >= 1 for i in cat.s_bridges | cat.partner_union)
    assert all(mult[i] == 2 for i in h.negative_edges if h.edge(i).is_loop)


@SETTINGS
@given(seeds)
def test_unsigned_cover_bound(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    g = random_signed_graph(rng, n, rng.randint(n, 18), 0, 0.1)
    assume(not bridges(g))
    rep = circuit_cover_bridgeless(g)
    assert rep.length <= min(rep.bound_53, rep.bound_fan)


@SETTINGS
@given(seeds)
def test_pipeline_cover_is_valid_and_bounded(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    g = random_signed_graph(rng, n, rng.randint(n, 14), rng.randint(2, 5))
    assume(is_s_bridgeless(g))
    r = scc_upper_cover(g, assume_s_bridgeless=True)
    assert verify_cover(g, r.cover)
    if r.eps_n >= 2:
        assert r.stripped_length <= r.bounds.chained_bound
        assert r.length <= r.bounds.corollary_bound


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 200), st.integers(0, 100), st.integers(0, 200))
def test_chained_bound_identity(E, V, eps):
    b = theorem_bounds(E, V, eps)
    assert chained_bound(E, V, eps, 3) == b.bound_general
    assert chained_bound(E, V, eps, 2) == b.bound_even
