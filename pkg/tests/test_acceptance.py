"""Acceptance suite: one marked test per criterion, summarised as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py`` (or execute this file); the
terminal summary lists each criterion once.
"""

import json
import random
import sys
import time
from functools import lru_cache
from pathlib import Path

import pytest

from graphs import k4, petersen, star_of_triangles_graph, theta, triangle
from signedcover.barbell import (
    CoverWithSpares,
    Decomposition,
    eulerian_scdc,
    gbarbell_scdc,
    gcycle_cover,
    make_gbarbell_cert,
    one_two_cover,
)
from signedcover.decomp import build_gbarbell_in_H, cover_0123
from signedcover.engine import chained_bound, exact_scc_signed, scc_upper_cover, theorem_bounds, verify_cover
from signedcover.generators import (
    GenerationFailed,
    generate_instance,
    random_circuit_gbarbell,
    random_eulerian,
    random_gbarbell,
    random_h_graph,
)
from signedcover.graph import is_balanced, is_circuit, validate_signed_circuit
from signedcover.io import read_instance
from signedcover.structure import classify_bridges
from signedcover.switching import negativeness_exact, switch, verify_minimal_signature
from signedcover.unsigned import circuit_cover_bridgeless, exact_scc_unsigned

GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN = json.loads((GOLDEN_DIR / "oracle_values.json").read_text())

GENERAL_COUNT = 500
EVEN_COUNT = 200
RUNTIME_LIMIT = 60.0


def _corpus(count: int, seed: int, g_even: bool):
    rng = random.Random(seed)
    out = []
    k = 0
    while len(out) < count:
        n = rng.randint(2, 10)
        m = rng.randint(n, 20)
        neg = rng.randint(2, min(m, 6))
        try:
            out.append(generate_instance(n, m, neg, seed * 10**6 + k, s_bridgeless=True,
                                         g_bridgeless_even=g_even, min_eps=2, attempts=50))
        except GenerationFailed:
            pass
        k += 1
    return out


@lru_cache(maxsize=None)
def general_runs():
    """Criterion-1 corpus with its pipeline results and the wall time of both steps."""
    start = time.perf_counter()
    graphs = _corpus(GENERAL_COUNT, 1, False)
    results = [scc_upper_cover(g) for g in graphs]
    return graphs, results, time.perf_counter() - start


@lru_cache(maxsize=None)
def even_runs():
    graphs = _corpus(EVEN_COUNT, 2, True)
    return graphs, [scc_upper_cover(g) for g in graphs]


def _all_runs():
    g1, r1, _ = general_runs()
    g2, r2 = even_runs()
    return list(zip(g1 + g2, r1 + r2))


@pytest.mark.criterion(1)
def test_general_bound():
    graphs, results, elapsed = general_runs()
    assert len(graphs) >= 500
    for g, r in zip(graphs, results):
        assert not any(e.is_loop for e in g.edges.values())
        assert g.vertex_count <= 10 and g.edge_count <= 20 and r.eps_n >= 2
        assert verify_cover(g, r.cover)
        b = theorem_bounds(g.edge_count, g.vertex_count, r.eps_n)
        assert r.length <= b.bound_general
    assert elapsed <= RUNTIME_LIMIT, f"corpus took {elapsed:.1f}s"


@pytest.mark.criterion(2)
def test_even_bound():
    graphs, results = even_runs()
    assert len(graphs) >= 200
    for g, r in zip(graphs, results):
        assert r.eps_n >= 2 and r.eps_n % 2 == 0 and r.k == 2
        assert verify_cover(g, r.cover)
        assert r.length <= theorem_bounds(g.edge_count, g.vertex_count, r.eps_n, 2).bound_even


@pytest.mark.criterion(3)
def test_corollary_bound():
    for g, r in _all_runs():
        assert r.length <= theorem_bounds(g.edge_count, g.vertex_count, r.eps_n).corollary_bound


@pytest.mark.criterion(4)
def test_double_covers():
    rng = random.Random(4)
    for _ in range(200):
        g = random_eulerian(rng, rng.randint(1, 10), rng.randint(1, 40))
        f = eulerian_scdc(g, g.edge_ids)
        assert all(f.multiplicity[i] == 2 for i in g.edge_ids)
        assert all(validate_signed_circuit(g, m) for m in f)
    for _ in range(100):
        g, cert = random_gbarbell(rng, rng.randint(1, 7))
        f = gbarbell_scdc(g, cert)
        assert set(f.multiplicity) == set(cert.host)
        assert all(f.multiplicity[i] == 2 for i in cert.host)
        assert all(validate_signed_circuit(g, m) for m in f)


def _check_leaf_bands(g, cert):
    f, leaves = gcycle_cover(g, cert)
    mult = f.multiplicity
    assert all(validate_signed_circuit(g, m) for m in f)
    leaf_edges = set().union(*(cert.pieces[i] for i in leaves)) if leaves else set()
    for k, p in enumerate(cert.pieces):
        if k in leaves:
            assert all(mult[i] == 1 for i in p)
        else:
            assert all(mult[i] in (1, 2) for i in p)
    assert all(mult[i] <= 1 for i in cert.link_edges)
    return leaf_edges


def _check_one_two(g, cert):
    r = one_two_cover(g, cert)
    if isinstance(r, Decomposition):
        seen = []
        for c in r.circuits:
            assert is_circuit(g, c) and is_balanced(g, c)
            seen += list(c)
        assert sorted(seen) == sorted(cert.host)
    else:
        assert isinstance(r, CoverWithSpares)
        mult = r.cover.multiplicity
        assert set(mult) == set(cert.host)
        assert all(mult[i] in (1, 2) for i in cert.host)
        assert all(validate_signed_circuit(g, m) for m in r.cover)
        assert not r.c1 & r.c2
        for c in (r.c1, r.c2):
            assert is_circuit(g, c) and not is_balanced(g, c)
            assert all(mult[i] == 1 for i in c)


@pytest.mark.criterion(5)
def test_multiplicity_bands():
    g, pieces = star_of_triangles_graph()
    cert = make_gbarbell_cert(g, g.edge_ids, pieces)
    assert _check_leaf_bands(g, cert) == set().union(*pieces[1:])
    rng = random.Random(5)
    for _ in range(200):
        g, cert = random_circuit_gbarbell(rng, rng.randint(1, 7))
        _check_leaf_bands(g, cert)
        _check_one_two(g, cert)
    for _ in range(200):
        g, cert = random_gbarbell(rng, rng.randint(1, 6))
        _check_one_two(g, cert)


@pytest.mark.criterion(6)
def test_h_graph_contracts():
    rng = random.Random(6)
    even = 0
    for _ in range(200):
        h = random_h_graph(rng, rng.randint(1, 10), rng.randint(2, 7))
        cat = classify_bridges(h)
        if len(h.negative_edges) % 2 == 0:
            even += 1
            cert = build_gbarbell_in_H(h)
            assert cat.g_class_bridges | cat.partner_union <= cert.host
        f = cover_0123(h)
        mult = f.multiplicity
        assert all(validate_signed_circuit(h, m) for m in f)
        assert all(mult[i] <= 3 for i in h.edge_ids)
        assert all(mult[i] >= 1 for i in cat.s_bridges | cat.partner_union)
        assert all(mult[i] == 2 for i in h.negative_edges if h.edge(i).is_loop)
    assert even >= 50


@pytest.mark.criterion(7)
def test_oracle_domination():
    checked = 0
    for g, r in _all_runs():
        if g.edge_count <= 12:
            f = exact_scc_signed(g)
            assert f is not None and verify_cover(g, f)
            assert f.length <= r.length
            checked += 1
    assert checked >= 100
    for name in ("l2p", "bowtie", "unbalanced_triangle"):
        f = exact_scc_signed(read_instance(str(GOLDEN_DIR / f"{name}.sg")))
        expected = GOLDEN[name]["length"]
        assert (None if f is None else f.length) == expected
    assert GOLDEN["l2p"]["length"] == 3 and GOLDEN["bowtie"]["length"] == 6
    assert GOLDEN["unbalanced_triangle"]["length"] is None


@pytest.mark.criterion(8)
def test_negativeness_consistency():
    checked = 0
    for g, _ in _all_runs():
        if g.vertex_count <= 8:
            eps = negativeness_exact(g).epsilon_n
            assert verify_minimal_signature(g) == (len(g.negative_edges) == eps)
            checked += 1
    assert checked >= 100


@pytest.mark.criterion(9)
def test_switching_invariance():
    rng = random.Random(9)
    for g, r in _all_runs():
        s = [v for v in sorted(g.vertices) if rng.random() < 0.5]
        h = switch(g, s)
        rep = verify_cover(h, r.cover)
        assert rep and rep.length == r.length
        assert rep.multiplicity == verify_cover(g, r.cover).multiplicity


@pytest.mark.criterion(10)
def test_unsigned_contract():
    suite = {"triangle": triangle(), "theta": theta(), "k4": k4(), "petersen": petersen()}
    for g in suite.values():
        rep = circuit_cover_bridgeless(g)
        assert rep.length <= min(rep.bound_53, rep.bound_fan)
    assert exact_scc_unsigned(theta()).length == GOLDEN["theta"]["length"] == 4
    rep = circuit_cover_bridgeless(petersen())
    assert rep.bound_fan == 24
    assert exact_scc_unsigned(petersen()).length == GOLDEN["petersen"]["length"]


@pytest.mark.criterion(11)
def test_pruned_pair_cover_limit():
    graphs, results, _ = general_runs()
    for r in results:
        k = r.k
        g2 = len(r.g2_edges)
        assert r.f2_pruned_length <= k * g2 - 2 * (k - 1)


@pytest.mark.criterion(12)
def test_chained_identity():
    rng = random.Random(12)
    for _ in range(10_000):
        E, V, eps = rng.randint(0, 500), rng.randint(0, 300), rng.randint(0, 500)
        b = theorem_bounds(E, V, eps)
        assert chained_bound(E, V, eps, 3) == b.bound_general
        assert chained_bound(E, V, eps, 2) == b.bound_even


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
