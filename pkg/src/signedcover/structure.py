"""Bridges, 2-edge-cuts, bridge classes, s-bridgelessness, tree certificates, contraction."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from .circuits import all_circuits, vertex_mask
from .graph import (
    Balanced,
    Edge,
    GraphError,
    LongBarbell,
    ShortBarbell,
    SignedCircuit,
    SignedGraph,
    negative_count,
    validate_signed_circuit,
    vertices_of,
)
from .switching import negativeness_exact


def bridges(g: SignedGraph) -> frozenset[int]:
    """Edges whose removal increases the number of components (low-link DFS)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: set[int] = set()
    clock = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.incidence[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            descended = False
            for eid in it:
                if eid == parent_edge:
                    continue
                e = g.edge(eid)
                if e.is_loop:
                    continue
                w = e.other(v)
                if w in disc:
                    low[v] = min(low[v], disc[w])
                    continue
                disc[w] = low[w] = clock
                clock += 1
                stack.append((w, eid, iter(g.incidence[w])))
                descended = True
                break
            if descended:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    out.add(parent_edge)
    return frozenset(out)


def partner_set(g: SignedGraph, e: int, bridge_set: frozenset[int] | None = None) -> frozenset[int]:
    """S_G(e): ``e`` together with every ``f`` such that {e, f} is a minimal 2-edge-cut."""
    edge = g.edge(e)
    base = bridges(g) if bridge_set is None else bridge_set
    if edge.is_loop or e in base:
        return frozenset([e])
    return frozenset([e]) | (bridges(g.without([e])) - base)


def bridge_sides(g: SignedGraph, b: int) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]:
    """Vertex and edge sets of the two components of G - b that hold b's endpoints."""
    e = g.edge(b)
    rest = g.without([b])
    comps = {}
    for vs, es in rest.components():
        for v in vs:
            comps[v] = (vs, es)
    v1, e1 = comps[e.u]
    v2, e2 = comps[e.v]
    if v1 == v2:
        raise GraphError(f"edge {b} is not a bridge")
    return v1, e1, v2, e2


@dataclass(frozen=True)
class CutCatalog:
    bridges: frozenset[int]
    s_bridges: frozenset[int]
    g_class_bridges: frozenset[int]
    partner_sets: Mapping[int, frozenset[int]] = field(default_factory=dict)

    @property
    def partner_union(self) -> frozenset[int]:
        out: set[int] = set()
        for s in self.partner_sets.values():
            out |= s
        return frozenset(out)


def classify_bridges(g: SignedGraph) -> CutCatalog:
    """B(G), B_s(G), B_g(G) on raw negative counts, and S_G(e) for each negative edge."""
    bset = bridges(g)
    neg = g.negative_edges
    s_class, g_class = set(), set()
    for b in bset:
        _, e1, _, e2 = bridge_sides(g, b)
        n1, n2 = len(e1 & neg), len(e2 & neg)
        if n1 and n2:
            s_class.add(b)
        if n1 % 2 or n2 % 2:
            g_class.add(b)
    partners = {e: partner_set(g, e, bset) for e in sorted(neg)}
    return CutCatalog(bset, frozenset(s_class), frozenset(g_class), partners)


def is_g_bridge(g: SignedGraph, b: int) -> bool:
    """Bridge whose two sides both have even negativeness."""
    if b not in bridges(g):
        raise GraphError(f"edge {b} is not a bridge")
    v1, e1, v2, e2 = bridge_sides(g, b)
    q1 = SignedGraph(v1, {i: g.edge(i) for i in e1})
    q2 = SignedGraph(v2, {i: g.edge(i) for i in e2})
    return negativeness_exact(q1).epsilon_n % 2 == 0 and negativeness_exact(q2).epsilon_n % 2 == 0


def is_g_bridgeless(g: SignedGraph) -> bool:
    return not any(is_g_bridge(g, b) for b in bridges(g))


# ---------------------------------------------------------------------------
# s-bridgelessness


@dataclass
class SBridgelessReport:
    ok: bool
    witnesses: dict[int, SignedCircuit]
    uncovered: list[int]

    def __bool__(self) -> bool:
        return self.ok


def _barbell_through(g: SignedGraph, c1, c2, eid: int) -> LongBarbell | None:
    """A long barbell on vertex-disjoint c1, c2 whose path uses ``eid``, if any."""
    v1, v2 = vertices_of(g, c1), vertices_of(g, c2)
    aux = nx.Graph()
    banned = c1 | c2
    rep = {}
    for i, e in g.edges.items():
        if i in banned or e.is_loop:
            continue
        a = ("s",) if e.u in v1 else ("t",) if e.u in v2 else ("v", e.u)
        b = ("s",) if e.v in v1 else ("t",) if e.v in v2 else ("v", e.v)
        if a == b and a[0] != "v":
            continue
        mid = ("e", i)
        aux.add_edge(a, mid)
        aux.add_edge(mid, b)
        rep[i] = e
    mid = ("e", eid)
    if mid not in aux or ("s",) not in aux or ("t",) not in aux:
        return None
    aux.add_edge(("s",), ("T",))
    aux.add_edge(("t",), ("T",))
    try:
        paths = list(nx.node_disjoint_paths(aux, mid, ("T",)))
    except nx.NetworkXNoPath:
        return None
    if len(paths) < 2:
        return None
    to_s = next((p for p in paths if p[-2] == ("s",)), None)
    to_t = next((p for p in paths if p[-2] == ("t",)), None)
    if to_s is None or to_t is None:
        return None
    seq = list(reversed(to_s[:-1])) + to_t[1:-1]
    path = tuple(n[1] for n in seq if n[0] == "e")
    sc = LongBarbell(c1, path, c2)
    return sc if validate_signed_circuit(g, sc) else None


def is_s_bridgeless(g: SignedGraph, limit: int | None = None) -> SBridgelessReport:
    """Check that every edge lies in some signed circuit, by enumeration.

    Returns a witness signed circuit per edge, or the edges left uncovered.
    """
    circuits = all_circuits(g, limit)
    witness: dict[int, SignedCircuit] = {}

    def claim(sc: SignedCircuit) -> None:
        for i in sc.edges:
            witness.setdefault(i, sc)

    unbalanced = []
    for c in circuits:
        if negative_count(g, c) % 2 == 0:
            claim(Balanced(c))
        else:
            unbalanced.append((c, vertex_mask(g, c)))
    if len(witness) == g.edge_count:
        return SBridgelessReport(True, witness, [])

    comp_of = {}
    for idx, (_, es) in enumerate(g.components()):
        for i in es:
            comp_of[i] = idx
    comp = [comp_of[next(iter(c))] for c, _ in unbalanced]

    def partner_barbell(a: int, b: int, through: int | None = None) -> SignedCircuit | None:
        ca, ma = unbalanced[a]
        cb, mb = unbalanced[b]
        shared = ma & mb
        if shared:
            if shared & (shared - 1) == 0 and not (ca & cb) and through is None:
                return ShortBarbell(ca, cb, shared.bit_length() - 1)
            return None
        if comp[a] != comp[b]:
            return None
        if through is None:
            path = _shortest_connection(g, ca, cb)
            return LongBarbell(ca, path, cb) if path else None
        return _barbell_through(g, ca, cb, through)

    for a, (ca, _) in enumerate(unbalanced):
        if all(i in witness for i in ca):
            continue
        for b in range(len(unbalanced)):
            if b == a:
                continue
            sc = partner_barbell(a, b)
            if sc is not None:
                claim(sc)
                break

    left = [i for i in g.edge_ids if i not in witness]
    for eid in left:
        if eid in witness:
            continue
        ce = comp_of[eid]
        found = None
        for a in range(len(unbalanced)):
            if comp[a] != ce:
                continue
            for b in range(a + 1, len(unbalanced)):
                if comp[b] != ce:
                    continue
                found = partner_barbell(a, b, through=eid)
                if found is not None:
                    break
            if found is not None:
                break
        if found is not None:
            claim(found)
    uncovered = [i for i in g.edge_ids if i not in witness]
    return SBridgelessReport(not uncovered, witness, uncovered)


def _shortest_connection(g: SignedGraph, c1, c2) -> tuple[int, ...] | None:
    """Shortest path from V(c1) to V(c2) avoiding both circuits' edges (BFS)."""
    v1, v2 = vertices_of(g, c1), vertices_of(g, c2)
    banned = c1 | c2
    prev: dict[int, tuple[int, int] | None] = {v: None for v in v1}
    q = deque(sorted(v1))
    while q:
        x = q.popleft()
        for eid in g.incidence[x]:
            if eid in banned:
                continue
            e = g.edge(eid)
            if e.is_loop:
                continue
            y = e.other(x)
            if y in prev:
                continue
            prev[y] = (x, eid)
            if y in v2:
                path = []
                cur = y
                while prev[cur] is not None:
                    px, pe = prev[cur]
                    path.append(pe)
                    cur = px
                return tuple(reversed(path))
            q.append(y)
    return None


# ---------------------------------------------------------------------------
# spanning trees and fundamental circuits


class NonMinimalSignature(GraphError):
    """G - E_N(G) does not connect a component of G."""


@dataclass(frozen=True)
class TreeCertificate:
    tree_edges: frozenset[int]
    fundamental_circuit: Mapping[int, frozenset[int]]
    parent: Mapping[int, tuple[int, int] | None]
    depth: Mapping[int, int]

    def tree_path(self, u: int, v: int) -> list[int]:
        """Edge ids of the tree path between ``u`` and ``v``."""
        left, right = [], []
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            left.append(self.parent[a][1])
            a = self.parent[a][0]
        while self.depth[b] > self.depth[a]:
            right.append(self.parent[b][1])
            b = self.parent[b][0]
        while a != b:
            if self.parent[a] is None or self.parent[b] is None:
                raise GraphError(f"vertices {u} and {v} lie in different trees")
            left.append(self.parent[a][1])
            a = self.parent[a][0]
            right.append(self.parent[b][1])
            b = self.parent[b][0]
        return left + right[::-1]


def spanning_forest(g: SignedGraph, edge_ids: Iterable[int] | None = None) -> TreeCertificate:
    """BFS spanning forest over the given edges (smallest ids first); no circuits attached."""
    allowed = set(g.edge_ids if edge_ids is None else edge_ids)
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for root in sorted(g.vertices):
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        q = deque([root])
        while q:
            x = q.popleft()
            for eid in g.incidence[x]:
                if eid not in allowed:
                    continue
                e = g.edge(eid)
                if e.is_loop:
                    continue
                y = e.other(x)
                if y in parent:
                    continue
                parent[y] = (x, eid)
                depth[y] = depth[x] + 1
                tree.add(eid)
                q.append(y)
    return TreeCertificate(frozenset(tree), {}, parent, depth)


def tree_certificate(g: SignedGraph) -> TreeCertificate:
    """Spanning tree of G - E_N(G) per component and the fundamental circuit of each negative edge."""
    positive = [i for i in g.edge_ids if g.edge(i).sign > 0]
    forest = spanning_forest(g, positive)
    n_tree_comps = sum(1 for v, p in forest.parent.items() if p is None)
    if n_tree_comps != g.component_count():
        raise NonMinimalSignature("G - E_N(G) has more components than G")
    circuits = {}
    for e in sorted(g.negative_edges):
        edge = g.edge(e)
        if edge.is_loop:
            circuits[e] = frozenset([e])
        else:
            circuits[e] = frozenset(forest.tree_path(edge.u, edge.v)) | {e}
    return TreeCertificate(forest.tree_edges, circuits, forest.parent, forest.depth)


# ---------------------------------------------------------------------------
# contraction


@dataclass(frozen=True)
class Contraction:
    quotient: SignedGraph
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, int]

    def is_acyclic(self) -> bool:
        q = self.quotient
        if any(e.is_loop for e in q.edges.values()):
            return False
        return q.edge_count == q.vertex_count - q.component_count()


def contract(g: SignedGraph, pieces: Iterable[Iterable[int]]) -> Contraction:
    """Contract each piece (an edge set) to one vertex named by its smallest vertex.

    Edges of the pieces disappear; any other edge inside a piece becomes a loop.
    """
    vmap = {v: v for v in g.vertices}
    used: set[int] = set()
    piece_edges: set[int] = set()
    for p in pieces:
        p = set(p)
        vs = vertices_of(g, p)
        if vs & used:
            raise GraphError("pieces are not vertex-disjoint")
        used |= vs
        piece_edges |= p
        rep = min(vs)
        for v in vs:
            vmap[v] = rep
    qverts = set(vmap.values())
    qedges = {}
    for i, e in g.edges.items():
        if i in piece_edges:
            continue
        qedges[i] = Edge(vmap[e.u], vmap[e.v], e.sign)
    return Contraction(SignedGraph(qverts, qedges), vmap, {i: i for i in qedges})
