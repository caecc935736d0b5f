"""Covers of spanning-tree-plus-negatives graphs and the two-part decomposition.

A graph ``h`` in this module always has ``h - E_N(h)`` a spanning tree, so
every negative edge ``e`` closes a unique fundamental circuit ``C_e``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .barbell import (
    CoverWithSpares,
    EdgeSets,
    GeneralizedBarbellCert,
    _Fresh,
    _gbarbell_double_cover_sets,
    _splice,
    make_gbarbell_cert,
    one_two_cover,
    validate_gbarbell,
)
from .graph import (
    Balanced,
    ConstructionDefect,
    CoverFamily,
    Edge,
    GraphError,
    LongBarbell,
    ShortBarbell,
    SignedCircuit,
    SignedGraph,
    family_from_edge_sets,
    validate_signed_circuit,
    vertices_of,
)
from .structure import (
    bridge_sides,
    bridges,
    classify_bridges,
    contract,
    is_g_bridgeless,
    partner_set,
    spanning_forest,
    tree_certificate,
    _shortest_connection,
)


@dataclass(frozen=True)
class PairDecomposition:
    g1_edges: frozenset[int]
    g2_edges: frozenset[int]
    f2: CoverFamily
    k: int


def _check_tree_plus_negatives(h: SignedGraph, min_negatives: int = 2) -> None:
    if not h.is_connected():
        raise GraphError("graph is not connected")
    positive = [i for i in h.edge_ids if h.edge(i).sign > 0]
    if len(positive) != h.vertex_count - 1 or not h.subgraph(positive, keep_vertices=True).is_connected():
        raise GraphError("positive edges do not form a spanning tree")
    if len(h.negative_edges) < min_negatives:
        raise GraphError(f"need at least {min_negatives} negative edges")


def _fundamental_circuits(h: SignedGraph) -> dict[int, frozenset[int]]:
    return dict(tree_certificate(h).fundamental_circuit)


# ---------------------------------------------------------------------------
# barbell extraction


def build_gbarbell_in_H(h: SignedGraph) -> GeneralizedBarbellCert:
    """Generalized barbell of ``h`` containing its odd-side bridges and every S_h(e)."""
    _check_tree_plus_negatives(h)
    if len(h.negative_edges) % 2:
        raise GraphError("number of negative edges must be even")
    parity: Counter = Counter()
    for c in _fundamental_circuits(h).values():
        parity.update(c)
    h1 = frozenset(i for i, k in parity.items() if k % 2)
    pieces = h.subgraph(h1).edge_components()
    odd = [p for p in pieces if len(p & h.negative_edges) % 2]
    quot = contract(h, pieces)
    forest = spanning_forest(quot.quotient)
    links: set[int] = set()
    ends = [quot.vertex_map[min(vertices_of(h, p))] for p in odd]
    for a, b in zip(ends[0::2], ends[1::2]):
        links ^= set(forest.tree_path(a, b))
    cert = make_gbarbell_cert(h, h1 | links, pieces)
    diag = validate_gbarbell(h, cert)
    if not diag:
        raise ConstructionDefect("extracted barbell is invalid: " + "; ".join(diag.reasons))
    cat = classify_bridges(h)
    missing = (cat.g_class_bridges | cat.partner_union) - cert.host
    if missing:
        raise ConstructionDefect(f"extracted barbell misses required edges {sorted(missing)}")
    return cert


def signed_circuit_through_S(h: SignedGraph, e: int) -> SignedCircuit:
    """A signed circuit of ``h`` containing every edge of S_h(e)."""
    _check_tree_plus_negatives(h)
    if e not in h.negative_edges:
        raise GraphError(f"edge {e} is not negative")
    circ = _fundamental_circuits(h)
    f = min(i for i in h.negative_edges if i != e)
    ce, cf = circ[e], circ[f]
    shared = vertices_of(h, ce) & vertices_of(h, cf)
    if len(shared) == 1:
        sc: SignedCircuit = ShortBarbell(ce, cf, next(iter(shared)))
    elif not shared:
        tree = h.subgraph(set(tree_certificate(h).tree_edges) | ce | cf)
        path = _shortest_connection(tree, ce, cf)
        if path is None:
            raise ConstructionDefect("fundamental circuits are not joined by the tree")
        sc = LongBarbell(ce, path, cf)
    else:
        sc = Balanced(ce ^ cf)
    if not validate_signed_circuit(h, sc):
        raise ConstructionDefect("circuit through S(e) failed validation")
    if not partner_set(h, e) <= sc.edges:
        raise ConstructionDefect("circuit through S(e) misses part of S(e)")
    return sc


# ---------------------------------------------------------------------------
# {0,1,2,3}-cover


def _feeder_paths(h: SignedGraph, u: int, c1: frozenset[int], c2: frozenset[int]) -> tuple[list[int], list[int]]:
    """Edge-disjoint paths from ``u`` to V(c1) and to V(c2), each meeting its circuit at one end."""
    targets = (vertices_of(h, c1), vertices_of(h, c2))
    d = nx.DiGraph()
    for i, e in h.edges.items():
        if e.is_loop:
            continue
        a, b = ("v", e.u), ("v", e.v)
        m_in, m_out = ("in", i), ("out", i)
        d.add_edge(a, m_in, capacity=1)
        d.add_edge(b, m_in, capacity=1)
        d.add_edge(m_in, m_out, capacity=1)
        d.add_edge(m_out, a, capacity=1)
        d.add_edge(m_out, b, capacity=1)
    for k, verts in enumerate(targets):
        for x in verts:
            d.add_edge(("v", x), ("t", k), capacity=1)
        d.add_edge(("t", k), ("T",), capacity=1)
    src = ("v", u)
    if src not in d:
        d.add_node(src)
    value, flow = nx.maximum_flow(d, src, ("T",))
    if value < 2:
        raise ConstructionDefect("no two edge-disjoint feeder paths; graph is not 2-edge-connected")
    out: list[list[int]] = [[], []]
    for _ in range(2):
        cur = src
        walk_v = [u]
        walk_e: list[int] = []
        while cur != ("T",):
            nxt = next(n for n, f in flow[cur].items() if f > 0)
            flow[cur][nxt] -= 1
            if nxt[0] == "out":
                walk_e.append(nxt[1])
            elif nxt[0] == "v":
                walk_v.append(nxt[1])
            elif nxt[0] == "t":
                k = nxt[1]
            cur = nxt
        # drop closed detours so the walk becomes a path
        vs, es = [walk_v[0]], []
        for v, eid in zip(walk_v[1:], walk_e):
            if v in vs:
                cut = vs.index(v)
                vs, es = vs[: cut + 1], es[:cut]
            else:
                vs.append(v)
                es.append(eid)
        tgt = targets[k]
        stop = next(t for t, v in enumerate(vs) if v in tgt)
        out[k] = es[:stop]
    return out[0], out[1]


def _reroute_through_loop(
    h: SignedGraph, loop: int, c1: frozenset[int], c2: frozenset[int]
) -> EdgeSets:
    u = h.edge(loop).u
    p1, p2 = _feeder_paths(h, u, c1, c2)
    return [c1 | frozenset(p1) | {loop}, c2 | frozenset(p2) | {loop}]


def _cover_0123_sets(h: SignedGraph, fresh: _Fresh) -> EdgeSets:
    bset = sorted(bridges(h))
    if bset:
        b = bset[0]
        v1, e1, v2, e2 = bridge_sides(h, b)
        n1, n2 = len(e1 & h.negative_edges), len(e2 & h.negative_edges)
        if n1 == 0 or n2 == 0:
            verts, edges = (v1, e1) if n1 else (v2, e2)
            side = SignedGraph(verts, {i: h.edge(i) for i in edges})
            return _cover_0123_sets(side, fresh)
        edge = h.edge(b)
        u1 = edge.u if edge.u in v1 else edge.v
        u2 = edge.other(u1)
        l1, l2 = fresh(), fresh()
        q1 = SignedGraph(v1, {i: h.edge(i) for i in e1}).with_edges({l1: Edge(u1, u1, -1)})
        q2 = SignedGraph(v2, {i: h.edge(i) for i in e2}).with_edges({l2: Edge(u2, u2, -1)})
        members = _cover_0123_sets(q1, fresh) + _cover_0123_sets(q2, fresh)
        return _splice(members, l1, l2, [b])

    neg = sorted(h.negative_edges)
    if len(neg) % 2 == 0:
        cert = build_gbarbell_in_H(h)
        return _gbarbell_double_cover_sets(h, cert, fresh)

    loops = [i for i in neg if h.edge(i).is_loop]
    candidates = loops or [i for i in neg if not bridges(h.without([i]))]
    if candidates:
        e = candidates[0]
        h0 = h.without([e])
        cert = build_gbarbell_in_H(h0)
        members = _gbarbell_double_cover_sets(h0, cert, fresh)
        if not h.edge(e).is_loop:
            return members + [signed_circuit_through_S(h, e).edges]
        fam = family_from_edge_sets(h0, members).canonical()
        bar = next((m for m in fam if not isinstance(m, Balanced)), None)
        if bar is not None:
            drop_one = list(fam.members)
            drop_one.remove(bar)
            kept = [m.edges for m in drop_one]
            return kept + _reroute_through_loop(h, e, bar.c1, bar.c2)
        split = one_two_cover(h0, cert)
        if isinstance(split, CoverWithSpares):
            return [m.edges for m in split.cover] + _reroute_through_loop(h, e, split.c1, split.c2)
        c = signed_circuit_through_S(h, e).edges
        return list(split.circuits) + [c, c]

    for e in neg:
        s = partner_set(h, e, frozenset())
        rest = h.without(s)
        holders = [
            (vs, es) for vs, es in rest.components() if es & h.negative_edges
        ]
        if len(holders) == 1 and len(holders[0][1] & h.negative_edges) == len(neg) - 1:
            vs, es = holders[0]
            m1 = SignedGraph(vs, {i: h.edge(i) for i in es})
            cert = build_gbarbell_in_H(m1)
            members = _gbarbell_double_cover_sets(m1, cert, fresh)
            return members + [signed_circuit_through_S(h, e).edges]
    raise ConstructionDefect("no negative edge separates the others into one side of its 2-edge-cuts")


def cover_0123(h: SignedGraph) -> CoverFamily:
    """Signed circuits covering each edge at most three times.

    Every bridge with negative edges on both sides and every edge of every
    S_h(e) is covered at least once; every negative loop exactly twice.
    """
    _check_tree_plus_negatives(h)
    sets = _cover_0123_sets(h, _Fresh(h))
    family = family_from_edge_sets(h, sets).canonical()
    mult = family.multiplicity
    cat = classify_bridges(h)
    problems = [i for i, k in mult.items() if k > 3]
    problems += [i for i in cat.s_bridges | cat.partner_union if mult[i] < 1]
    problems += [i for i in h.negative_edges if h.edge(i).is_loop and mult[i] != 2]
    if problems:
        raise ConstructionDefect(f"{{0,1,2,3}}-cover contract fails on edges {sorted(set(problems))}")
    return family


# ---------------------------------------------------------------------------
# two-part decomposition


def _is_forest(g: SignedGraph, ids: Iterable[int]) -> bool:
    ids = list(ids)
    if not ids:
        return True
    sub = g.subgraph(ids)
    if any(sub.edge(i).is_loop for i in ids):
        return False
    return sub.edge_count == sub.vertex_count - sub.component_count()


def pair_decomposition(g: SignedGraph) -> PairDecomposition:
    """Split ``g`` into a bridgeless all-positive part and a part with a small signed cover.

    ``g`` must be s-bridgeless with a minimal signature.  Components without
    negative edges go entirely to the positive part.  The reported ``k`` is
    the largest over the signed components.
    """
    cert = tree_certificate(g)
    cat = classify_bridges(g)
    g1 = frozenset(g.edge_ids) - cat.bridges - cat.partner_union
    g2: set[int] = set()
    members: list[SignedCircuit] = []
    k = 2
    signed = False
    for verts, edges in g.components():
        negs = edges & g.negative_edges
        if not negs:
            continue
        if len(negs) == 1:
            raise GraphError("a component with one negative edge is not s-bridgeless")
        signed = True
        comp = SignedGraph(verts, {i: g.edge(i) for i in edges})
        h = comp.subgraph((edges & cert.tree_edges) | negs, keep_vertices=True)
        if len(negs) % 2 == 0 and is_g_bridgeless(comp):
            bar = build_gbarbell_in_H(h)
            fam = family_from_edge_sets(h, _gbarbell_double_cover_sets(h, bar, _Fresh(h)))
            g2 |= bar.host
        else:
            k = 3
            fam = cover_0123(h)
            g2 |= set(fam.multiplicity)
        members += list(fam)
    if not signed:
        raise GraphError("graph has no negative edges")
    f2 = CoverFamily(members).canonical()
    out = PairDecomposition(g1, frozenset(g2), f2, k)
    check_pair_decomposition(g, out)
    return out


def check_pair_decomposition(g: SignedGraph, d: PairDecomposition) -> None:
    problems = []
    if d.g1_edges | d.g2_edges != frozenset(g.edge_ids):
        problems.append("parts do not cover every edge")
    if d.g1_edges & g.negative_edges:
        problems.append("positive part holds a negative edge")
    if d.g1_edges and bridges(g.subgraph(d.g1_edges)):
        problems.append("positive part has a bridge")
    if not _is_forest(g, d.g2_edges - g.negative_edges):
        problems.append("signed part minus negatives has a cycle")
    mult = d.f2.multiplicity
    if set(mult) != set(d.g2_edges) or any(not 1 <= mult[i] <= d.k for i in d.g2_edges):
        problems.append(f"signed cover multiplicities fall outside 1..{d.k}")
    for idx, m in enumerate(d.f2):
        if not validate_signed_circuit(g, m):
            problems.append(f"member {idx} is not a signed circuit")
    if problems:
        raise ConstructionDefect("pair decomposition: " + "; ".join(problems))
