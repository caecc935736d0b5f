"""Generalized barbells and the covers built on them.

Contents:

* ``eulerian_scdc``: double cover of an eulerian graph with an even number of
  negative edges, by recursive trail splitting with negative-loop surgery.
* ``gbarbell_scdc``: double cover of a generalized barbell; the non-piece
  edges are cut, both ends get a negative loop, and barbell pairs are
  spliced back together across each cut edge.
* ``gcycle_cover``: the leaf-exact family for barbells whose pieces are
  circuits.
* ``one_two_cover``: a {1,2}-cover with two spare unbalanced circuits, or a
  decomposition into balanced circuits.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import (
    Balanced,
    ConstructionDefect,
    CoverFamily,
    Diagnostics,
    Edge,
    GraphError,
    SignedGraph,
    circuit_walk,
    degrees_of,
    family_from_edge_sets,
    is_circuit,
    is_connected_edges,
    negative_count,
    vertices_of,
)
from .structure import Contraction, bridges, contract, spanning_forest

EdgeSets = list[frozenset[int]]


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class GeneralizedBarbellCert:
    host: frozenset[int]
    pieces: tuple[frozenset[int], ...]
    quotient: Contraction
    parity_log: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    @property
    def piece_edges(self) -> frozenset[int]:
        return frozenset().union(*self.pieces) if self.pieces else frozenset()

    @property
    def link_edges(self) -> frozenset[int]:
        """Host edges outside every piece (the edges of the contracted graph)."""
        return self.host - self.piece_edges


def _boundary(g: SignedGraph, host: Iterable[int], verts: set[int]) -> int:
    n = 0
    for i in host:
        e = g.edge(i)
        if (e.u in verts) != (e.v in verts):
            n += 1
    return n


def make_gbarbell_cert(g: SignedGraph, host: Iterable[int], pieces: Iterable[Iterable[int]]) -> GeneralizedBarbellCert:
    host = frozenset(host)
    pieces = tuple(frozenset(p) for p in pieces if p)
    hg = g.subgraph(host)
    quot = contract(hg, pieces)
    log: dict[int, tuple[int, int]] = {}
    rep_piece = {min(vertices_of(g, p)): p for p in pieces}
    for x in sorted(quot.quotient.vertices):
        p = rep_piece.get(x)
        if p is not None:
            log[x] = (negative_count(g, p), _boundary(g, host, vertices_of(g, p)))
        else:
            log[x] = (0, _boundary(g, host, {x}))
    return GeneralizedBarbellCert(host, pieces, quot, log)


def validate_gbarbell(g: SignedGraph, cert: GeneralizedBarbellCert) -> Diagnostics:
    """Check the definition of a generalized barbell against ``g``."""
    reasons: list[str] = []
    try:
        host = set(cert.host)
        for i in host:
            g.edge(i)
        seen: set[int] = set()
        for k, p in enumerate(cert.pieces):
            if not p <= host:
                reasons.append(f"piece {k} not inside the host")
                continue
            vs = vertices_of(g, p)
            if vs & seen:
                reasons.append(f"piece {k} shares vertices with another piece")
            seen |= vs
            if not is_connected_edges(g, p):
                reasons.append(f"piece {k} is not connected")
            if any(d % 2 for d in degrees_of(g, p).values()):
                reasons.append(f"piece {k} has a vertex of odd degree")
        if reasons:
            return Diagnostics(False, reasons)
        fresh = make_gbarbell_cert(g, host, cert.pieces)
        if not fresh.quotient.is_acyclic():
            reasons.append("contracted graph has a cycle")
        for x, (neg, bd) in fresh.parity_log.items():
            if neg % 2 != bd % 2:
                reasons.append(f"parity fails at contracted vertex {x}: {neg} negative vs {bd} boundary")
    except GraphError as exc:
        reasons.append(str(exc))
    return Diagnostics(not reasons, reasons)


# ---------------------------------------------------------------------------
# eulerian trails


Trail = list[tuple[int, int]]  # (vertex, edge leaving it); closes back to the first vertex


def euler_trail(g: SignedGraph, edge_ids: Iterable[int], start: int | None = None) -> Trail:
    """Closed eulerian trail by Hierholzer's method, smallest ids first."""
    ids = set(edge_ids)
    adj: dict[int, deque[int]] = defaultdict(deque)
    for i in sorted(ids):
        e = g.edge(i)
        adj[e.u].append(i)
        if not e.is_loop:
            adj[e.v].append(i)
    if not ids:
        return []
    v0 = min(adj) if start is None else start
    used: set[int] = set()
    stack: list[tuple[int, int | None]] = [(v0, None)]
    out: list[tuple[int, int | None]] = []
    while stack:
        v, _ = stack[-1]
        q = adj[v]
        while q and q[0] in used:
            q.popleft()
        if q:
            eid = q.popleft()
            used.add(eid)
            stack.append((g.edge(eid).other(v), eid))
        else:
            out.append(stack.pop())
    out.reverse()
    if len(used) != len(ids):
        raise GraphError("edge set is not connected")
    return [(out[k][0], out[k + 1][1]) for k in range(len(out) - 1)]


def _prefix_parity(g: SignedGraph, trail: Trail) -> list[int]:
    pre = [0]
    for _, e in trail:
        pre.append(pre[-1] ^ (1 if g.edge(e).sign < 0 else 0))
    return pre


def _even_split(g: SignedGraph, trail: Trail) -> tuple[int, int] | None:
    pre = _prefix_parity(g, trail)
    first: dict[tuple[int, int], int] = {}
    for k, (v, _) in enumerate(trail):
        key = (v, pre[k])
        if key in first:
            return first[key], k
        first[key] = k
    return None


def _long_split(trail: Trail) -> tuple[int, int] | None:
    m = len(trail)
    where: dict[int, list[int]] = defaultdict(list)
    for k, (v, _) in enumerate(trail):
        where[v].append(k)
    best = None
    for v in sorted(where):
        pos = where[v]
        for a, b in itertools.combinations(pos, 2):
            if 2 <= b - a <= m - 2:
                cand = (a, b)
                if best is None or cand < best:
                    best = cand
                break
    return best


def _reverse_segment(trail: Trail, i: int, j: int) -> Trail:
    mid = [(trail[k + 1][0], trail[k][1]) for k in range(j - 1, i - 1, -1)]
    return trail[:i] + mid + trail[j:]


# ---------------------------------------------------------------------------
# double covers


class _Fresh:
    """Synthetic edge ids above every id already in use."""

    def __init__(self, g: SignedGraph):
        self._it = itertools.count(g.fresh_id())

    def __call__(self) -> int:
        return next(self._it)


def _splice(members: EdgeSets, a: int, b: int, link: Iterable[int] = ()) -> EdgeSets:
    """Join the two members through synthetic loop ``a`` with the two through ``b``."""
    ia = [k for k, m in enumerate(members) if a in m]
    ib = [k for k, m in enumerate(members) if b in m]
    if len(ia) != 2 or len(ib) != 2 or set(ia) & set(ib):
        raise ConstructionDefect("loop surgery expects each loop in exactly two separate members")
    link = frozenset(link)
    joined = [(members[ia[t]] - {a}) | (members[ib[t]] - {b}) | link for t in range(2)]
    drop = set(ia) | set(ib)
    return [m for k, m in enumerate(members) if k not in drop] + joined


def _base_double_cover(g: SignedGraph, ids: frozenset[int]) -> EdgeSets:
    """Unsplittable eulerian graphs: a circuit (or a vertex) with negative loops hung on it."""
    loops = sorted(i for i in ids if g.edge(i).is_loop)
    core = ids - set(loops)
    if any(g.edge(i).sign > 0 for i in loops):
        raise ConstructionDefect("positive loop survived trail splitting")
    if not core:
        if len(loops) != 2:
            raise ConstructionDefect("unexpected loop bouquet")
        return [ids, ids]
    if not is_circuit(g, core):
        raise ConstructionDefect("core of an unsplittable eulerian graph is not a circuit")
    at = {g.edge(i).u: i for i in loops}
    if len(at) != len(loops):
        raise ConstructionDefect("two loops at one vertex of the core")
    walk = circuit_walk(g, core, start=min(at))
    order = walk[:-1]
    edges_seq = _walk_edges(g, core, walk)
    hooks = [k for k, v in enumerate(order) if v in at]
    k = len(hooks)
    if k == 1:
        return [ids, ids]

    def arc(a: int, b: int) -> frozenset[int]:
        """Edges walked forward from hook index a to hook index b (cyclically)."""
        start, end = hooks[a % k], hooks[b % k]
        span = (end - start) % len(order)
        if span == 0:
            span = len(order)
        return frozenset(edges_seq[(start + t) % len(order)] for t in range(span))

    lp = [at[order[h]] for h in hooks]
    if k == 2:
        if negative_count(g, core) % 2:
            raise ConstructionDefect("two loops on an unbalanced core")
        return [core, frozenset([lp[0], lp[1]]) | arc(0, 1), frozenset([lp[1], lp[0]]) | arc(1, 2)]
    return [frozenset([lp[t], lp[(t + 2) % k]]) | arc(t, t + 2) for t in range(k)]


def _walk_edges(g: SignedGraph, ids: Iterable[int], walk: list[int]) -> list[int]:
    """Edge sequence matching a closed vertex walk of a circuit."""
    remaining = set(ids)
    seq = []
    for a, b in zip(walk, walk[1:]):
        eid = min(i for i in remaining if {g.edge(i).u, g.edge(i).v} == {a, b})
        remaining.discard(eid)
        seq.append(eid)
    return seq


def _double_cover_eulerian(g: SignedGraph, ids: frozenset[int], fresh: _Fresh) -> EdgeSets:
    deg = degrees_of(g, ids)
    if all(d == 2 for d in deg.values()):
        if negative_count(g, ids) % 2:
            raise ConstructionDefect("unbalanced circuit reached the double-cover base case")
        return [ids, ids]
    trail = euler_trail(g, ids)
    split = _even_split(g, trail)
    if split is None:
        pair = _long_split(trail)
        if pair is None:
            return _base_double_cover(g, ids)
        i, j = pair
        part1 = frozenset(e for _, e in trail[i:j])
        part2 = ids - part1
        x = trail[i][0]
        if vertices_of(g, part1) & vertices_of(g, part2) == {x}:
            l1, l2 = fresh(), fresh()
            g2 = g.with_edges({l1: Edge(x, x, -1), l2: Edge(x, x, -1)})
            f1 = _double_cover_eulerian(g2, part1 | {l1}, fresh)
            f2 = _double_cover_eulerian(g2, part2 | {l2}, fresh)
            return _splice(f1 + f2, l1, l2)
        trail = _reverse_segment(trail, i, j)
        split = _even_split(g, trail)
        if split is None:
            raise ConstructionDefect("trail reversal did not produce an even split")
    i, j = split
    part1 = frozenset(e for _, e in trail[i:j])
    return _double_cover_eulerian(g, part1, fresh) + _double_cover_eulerian(g, ids - part1, fresh)


def _check_exact(g: SignedGraph, family: CoverFamily, host: Iterable[int], k: int, what: str) -> None:
    mult = family.multiplicity
    host = set(host)
    bad = [i for i in host if mult[i] != k] + [i for i in mult if i not in host]
    if bad:
        raise ConstructionDefect(f"{what}: multiplicity check failed on edges {sorted(bad)[:8]}")


def eulerian_scdc(g: SignedGraph, b: Iterable[int]) -> CoverFamily:
    """Signed circuit double cover of a connected eulerian edge set with even negative count."""
    ids = frozenset(b)
    if not ids:
        raise GraphError("empty edge set")
    if not is_connected_edges(g, ids):
        raise GraphError("edge set is not connected")
    if any(d % 2 for d in degrees_of(g, ids).values()):
        raise GraphError("edge set has a vertex of odd degree")
    if negative_count(g, ids) % 2:
        raise GraphError("edge set has an odd number of negative edges")
    sets = _double_cover_eulerian(g, ids, _Fresh(g))
    family = family_from_edge_sets(g, sets)
    _check_exact(g, family, ids, 2, "eulerian double cover")
    return family.canonical()


def _gbarbell_double_cover_sets(g: SignedGraph, cert: GeneralizedBarbellCert, fresh: _Fresh) -> EdgeSets:
    links = sorted(cert.link_edges)
    loops: dict[int, tuple[int, int]] = {}
    extra = {}
    for i in links:
        e = g.edge(i)
        a, b = fresh(), fresh()
        extra[a] = Edge(e.u, e.u, -1)
        extra[b] = Edge(e.v, e.v, -1)
        loops[i] = (a, b)
    work = g.subgraph(cert.host - set(links)).with_edges(extra) if extra else g.subgraph(cert.host)
    members: EdgeSets = []
    for comp in work.edge_components():
        if negative_count(work, comp) % 2:
            raise ConstructionDefect("cut component has an odd number of negative edges")
        members += _double_cover_eulerian(work, comp, fresh)
    for i in reversed(links):
        a, b = loops[i]
        members = _splice(members, a, b, [i])
    return members


def gbarbell_scdc(g: SignedGraph, cert: GeneralizedBarbellCert) -> CoverFamily:
    """Signed circuit double cover of a generalized barbell."""
    diag = validate_gbarbell(g, cert)
    if not diag:
        raise GraphError("invalid generalized barbell: " + "; ".join(diag.reasons))
    sets = _gbarbell_double_cover_sets(g, cert, _Fresh(g))
    family = family_from_edge_sets(g, sets)
    _check_exact(g, family, cert.host, 2, "generalized barbell double cover")
    return family.canonical()


# ---------------------------------------------------------------------------
# leaf-exact family for circuit pieces


@dataclass
class _Chain:
    ends: tuple[int, int]          # piece indices at both ends
    attach: tuple[int, int]        # host vertices where the chain meets each end piece
    edges: frozenset[int]          # all host edges of the chain, arcs included
    first_edge: tuple[int, int]    # link edge ids touching each end piece


def _arc_between(walk_edges: list[int], pos_a: int, pos_b: int) -> frozenset[int]:
    n = len(walk_edges)
    span = (pos_b - pos_a) % n
    return frozenset(walk_edges[(pos_a + t) % n] for t in range(span))


def gcycle_cover(g: SignedGraph, cert: GeneralizedBarbellCert) -> tuple[CoverFamily, list[int]]:
    """Signed circuits over a generalized barbell whose pieces are all circuits.

    Edges of pieces at degree-1 vertices of the contracted graph get
    multiplicity exactly 1, other piece edges 1 or 2, link edges at most 1.
    Returns the family and the indices of those leaf pieces.
    """
    diag = validate_gbarbell(g, cert)
    if not diag:
        raise GraphError("invalid generalized barbell: " + "; ".join(diag.reasons))
    pieces = list(cert.pieces)
    for k, p in enumerate(pieces):
        if not is_circuit(g, p):
            raise GraphError(f"piece {k} is not a circuit")
    quot = cert.quotient
    X = quot.quotient
    piece_at = {quot.vertex_map[min(vertices_of(g, p))]: k for k, p in enumerate(pieces)}
    xdeg = {x: len(X.incidence[x]) for x in X.vertices}
    leaves = sorted(piece_at[x] for x in piece_at if xdeg[x] == 1)
    unbalanced = {k for k, p in enumerate(pieces) if negative_count(g, p) % 2}

    walk: dict[int, list[int]] = {}
    wedges: dict[int, list[int]] = {}
    position: dict[int, dict[int, int]] = {}
    for k, p in enumerate(pieces):
        w = circuit_walk(g, p)
        walk[k] = w[:-1]
        wedges[k] = _walk_edges(g, p, w)
        position[k] = {v: t for t, v in enumerate(w[:-1])}

    def inner_end(link: int, x: int) -> int:
        """Host endpoint of link edge ``link`` lying in the quotient vertex ``x``."""
        e = g.edge(link)
        return e.u if quot.vertex_map[e.u] == x else e.v

    # pair up links at every even quotient vertex; record the arc used to pass through
    partner: dict[tuple[int, int], tuple[int, frozenset[int]]] = {}
    for x in sorted(X.vertices):
        k = piece_at.get(x)
        if k is not None and k in unbalanced:
            continue
        inc = list(X.incidence[x])
        if len(inc) % 2:
            raise ConstructionDefect("odd degree at a balanced or plain vertex")
        if k is None:
            ordered = sorted(inc)
            for a, b in zip(ordered[0::2], ordered[1::2]):
                partner[(x, a)] = (b, frozenset())
                partner[(x, b)] = (a, frozenset())
            continue
        ordered = sorted(inc, key=lambda l: (position[k][inner_end(l, x)], l))
        for a, b in zip(ordered[0::2], ordered[1::2]):
            arc = _arc_between(wedges[k], position[k][inner_end(a, x)], position[k][inner_end(b, x)])
            partner[(x, a)] = (b, arc)
            partner[(x, b)] = (a, arc)

    # trace chains between unbalanced pieces
    chains: list[_Chain] = []
    used_links: set[int] = set()
    for k in sorted(unbalanced):
        x0 = quot.vertex_map[min(vertices_of(g, pieces[k]))]
        for link in X.incidence[x0]:
            if link in used_links:
                continue
            edges = {link}
            used_links.add(link)
            cur_link, at = link, x0
            while True:
                e = X.edge(cur_link)
                nxt = e.other(at)
                kk = piece_at.get(nxt)
                if kk is not None and kk in unbalanced:
                    chains.append(_Chain((k, kk), (inner_end(link, x0), inner_end(cur_link, nxt)),
                                         frozenset(edges), (link, cur_link)))
                    break
                other, arc = partner[(nxt, cur_link)]
                edges |= arc
                edges.add(other)
                used_links.add(other)
                cur_link, at = other, nxt

    # spanning star forest of the chain forest
    adj: dict[int, list[int]] = defaultdict(list)
    for c_idx, ch in enumerate(chains):
        a, b = ch.ends
        if a == b:
            raise ConstructionDefect("chain closes on itself; contracted graph is not a forest")
        adj[a].append(c_idx)
        adj[b].append(c_idx)
    for k in unbalanced:
        if not adj[k]:
            raise ConstructionDefect(f"unbalanced piece {k} is isolated")
    stars = _star_forest(sorted(unbalanced), adj, chains)

    sets: EdgeSets = [pieces[k] for k in range(len(pieces)) if k not in unbalanced]
    for center, spokes in stars:
        sets += _realize_star(g, pieces, center, spokes, chains, position, wedges)
    family = family_from_edge_sets(g, sets)

    mult = family.multiplicity
    leaf_edges = frozenset().union(*(pieces[k] for k in leaves)) if leaves else frozenset()
    for i in cert.host:
        m = mult[i]
        if i in leaf_edges:
            ok = m == 1
        elif i in cert.piece_edges:
            ok = m in (1, 2)
        else:
            ok = m <= 1
        if not ok:
            raise ConstructionDefect(f"leaf-exact family violates its band on edge {i} (multiplicity {m})")
    return family.canonical(), leaves


def _star_forest(nodes: list[int], adj, chains: list[_Chain]) -> list[tuple[int, list[int]]]:
    """Partition a forest without isolated nodes into stars of at least two nodes."""
    parent: dict[int, int | None] = {}
    via: dict[int, int] = {}
    depth: dict[int, int] = {}
    order: list[int] = []
    for r in nodes:
        if r in parent:
            continue
        parent[r] = None
        depth[r] = 0
        q = deque([r])
        while q:
            x = q.popleft()
            order.append(x)
            for c in sorted(adj[x]):
                a, b = chains[c].ends
                y = b if a == x else a
                if y in parent:
                    continue
                parent[y] = x
                via[y] = c
                depth[y] = depth[x] + 1
                q.append(y)
    role: dict[int, tuple[str, int]] = {}
    stars: dict[int, dict] = {}
    sid = itertools.count()

    def attach(v: int, w: int, chain: int) -> None:
        if w not in role:
            s = next(sid)
            stars[s] = {"center": w, "spokes": {v: chain}}
            role[w] = ("center", s)
            role[v] = ("leaf", s)
            return
        kind, s = role[w]
        if kind == "center":
            stars[s]["spokes"][v] = chain
            role[v] = ("leaf", s)
            return
        star = stars[s]
        if len(star["spokes"]) >= 2:
            del star["spokes"][w]
            s2 = next(sid)
            stars[s2] = {"center": w, "spokes": {v: chain}}
            role[w] = ("center", s2)
            role[v] = ("leaf", s2)
        else:
            c = star["center"]
            back = star["spokes"].pop(w)
            star["center"] = w
            star["spokes"] = {c: back, v: chain}
            role[w] = ("center", s)
            role[c] = ("leaf", s)
            role[v] = ("leaf", s)

    for v in sorted(order, key=lambda x: (-depth[x], x)):
        if v in role:
            continue
        if parent[v] is not None:
            attach(v, parent[v], via[v])
        else:
            child = min((y for y in parent if parent[y] == v), default=None)
            if child is None:
                raise ConstructionDefect("isolated node in chain forest")
            attach(v, child, via[child])
    return [(st["center"], sorted(st["spokes"].items())) for _, st in sorted(stars.items())]


def _realize_star(g, pieces, center, spokes, chains, position, wedges) -> EdgeSets:
    hub = pieces[center]
    legs = []
    for leaf, c in spokes:
        ch = chains[c]
        hub_end = ch.attach[0] if ch.ends[0] == center else ch.attach[1]
        legs.append((position[center][hub_end], min(ch.edges), leaf, ch.edges))
    legs.sort()

    def via_hub(a, b) -> frozenset[int]:
        pa, _, la, ea = a
        pb, _, lb, eb = b
        return pieces[la] | ea | _arc_between(wedges[center], pa, pb) | eb | pieces[lb]

    def with_hub(a) -> frozenset[int]:
        return hub | a[3] | pieces[a[2]]

    # legs meeting the hub at the same vertex pair off without touching the hub
    pairs: list = []
    rest: list = []
    for leg in legs:
        if rest and rest[-1][0] == leg[0]:
            pairs.append((rest.pop(), leg))
        else:
            rest.append(leg)
    out: EdgeSets = [via_hub(a, b) for a, b in pairs]
    r = len(rest)
    if r == 0:
        # every leg was paired at a shared vertex; undo one pair so the hub is covered
        a, b = pairs[-1]
        return out[:-1] + [with_hub(a), with_hub(b)]
    if r == 1:
        return out + [with_hub(rest[0])]
    if r == 2:
        return out + [with_hub(rest[0]), with_hub(rest[1])]
    if r % 2:
        out.append(with_hub(rest[0]))
        for t in range(1, r, 2):
            out.append(via_hub(rest[t], rest[t + 1]))
        return out
    # r even >= 4: arcs (1->4), (3->6), ..., (r-3 -> r), (r-1 -> 2) in 1-based order
    for t in range(0, r - 2, 2):
        out.append(via_hub(rest[t], rest[t + 3]))
    out.append(via_hub(rest[r - 2], rest[1]))
    return out


# ---------------------------------------------------------------------------
# {1,2}-covers


@dataclass(frozen=True)
class Decomposition:
    circuits: tuple[frozenset[int], ...]

    def family(self, g: SignedGraph) -> CoverFamily:
        return CoverFamily(Balanced(c) for c in self.circuits)


@dataclass(frozen=True)
class CoverWithSpares:
    cover: CoverFamily
    c1: frozenset[int]
    c2: frozenset[int]


def circuit_decomposition(g: SignedGraph, ids: Iterable[int]) -> EdgeSets:
    """Split an eulerian edge set (any number of components) into circuits."""
    out: EdgeSets = []
    for comp in g.subgraph(ids).edge_components():
        trail = euler_trail(g, comp)
        verts = [trail[0][0]]
        edges: list[int] = []
        index = {verts[0]: 0}
        for v, e in trail:
            w = g.edge(e).other(v)
            edges.append(e)
            if w in index:
                cut = index[w]
                out.append(frozenset(edges[cut:]))
                for x in verts[cut + 1:]:
                    del index[x]
                verts = verts[: cut + 1]
                edges = edges[:cut]
            else:
                index[w] = len(verts)
                verts.append(w)
    return out


def _arcs(g: SignedGraph, c: frozenset[int], p: int, q: int) -> tuple[frozenset[int], frozenset[int]]:
    walk = circuit_walk(g, c, start=p)
    seq = _walk_edges(g, c, walk)
    k = walk.index(q)
    return frozenset(seq[:k]), frozenset(seq[k:])


def _resplit(g: SignedGraph, ci: frozenset[int], cj: frozenset[int], shared: set[int]) -> EdgeSets:
    """Two unbalanced circuits sharing >= 3 vertices -> at least three circuits."""
    walk = circuit_walk(g, ci, start=min(shared))
    seq = _walk_edges(g, ci, walk)
    hits = [t for t, v in enumerate(walk[:-1]) if v in shared]
    p, q = walk[hits[0]], walk[hits[1]]
    arc_a = frozenset(seq[hits[0]:hits[1]])
    r = next(v for v in sorted(shared) if v not in (p, q))
    b1, b2 = _arcs(g, cj, p, q)
    arc_b = b1 if r not in vertices_of(g, b1) - {p, q} else b2
    first = arc_a | arc_b
    rest = (ci | cj) - first
    pieces = [first] + circuit_decomposition(g, rest)
    if len(pieces) < 3:
        raise ConstructionDefect("resplit produced fewer than three circuits")
    return pieces


def _balanced_pair(g: SignedGraph, ci: frozenset[int], cj: frozenset[int], p: int, q: int) -> EdgeSets:
    a1, a2 = _arcs(g, ci, p, q)
    b1, b2 = _arcs(g, cj, p, q)
    if negative_count(g, a1 | b1) % 2 == 0:
        return [a1 | b1, a2 | b2]
    return [a1 | b2, a2 | b1]


def _improved_decomposition(g: SignedGraph, ids: frozenset[int]):
    """Circuit/short-barbell decomposition with pairwise vertex-disjoint unbalanced circuits."""
    unb: EdgeSets = []
    bal: EdgeSets = []
    shorts: list[tuple[frozenset[int], frozenset[int]]] = []

    def sort_in(cs: Iterable[frozenset[int]]) -> None:
        for c in cs:
            (unb if negative_count(g, c) % 2 else bal).append(c)

    sort_in(circuit_decomposition(g, ids))
    while True:
        hit = None
        for a in range(len(unb)):
            va = vertices_of(g, unb[a])
            for b in range(a + 1, len(unb)):
                shared = va & vertices_of(g, unb[b])
                if shared:
                    hit = (a, b, shared)
                    break
            if hit:
                break
        if hit is None:
            break
        a, b, shared = hit
        ci, cj = unb[a], unb[b]
        unb = [c for k, c in enumerate(unb) if k not in (a, b)]
        if len(shared) >= 3:
            sort_in(_resplit(g, ci, cj, shared))
        elif len(shared) == 2:
            p, q = sorted(shared)
            bal.extend(_balanced_pair(g, ci, cj, p, q))
        else:
            shorts.append((ci, cj))
    return unb, shorts, bal


def one_two_cover(g: SignedGraph, cert: GeneralizedBarbellCert) -> Decomposition | CoverWithSpares:
    """Balanced decomposition of a generalized barbell, or a {1,2}-cover with two spare circuits."""
    diag = validate_gbarbell(g, cert)
    if not diag:
        raise GraphError("invalid generalized barbell: " + "; ".join(diag.reasons))
    balanced_parts: EdgeSets = []
    cover_parts: EdgeSets = []
    spares: tuple[frozenset[int], frozenset[int]] | None = None
    hg = g.subgraph(cert.host)
    for comp in hg.edge_components():
        sub_pieces = [p for p in cert.pieces if p <= comp]
        sub = make_gbarbell_cert(g, comp, sub_pieces)
        result = _one_two_component(g, sub)
        if isinstance(result, Decomposition):
            balanced_parts += list(result.circuits)
        else:
            cover_parts += [m.edges for m in result.cover]
            if spares is None:
                spares = (result.c1, result.c2)
    if spares is None:
        out = Decomposition(tuple(sorted(balanced_parts, key=lambda c: (min(c), sorted(c)))))
        _check_decomposition(g, cert.host, out)
        return out
    family = family_from_edge_sets(g, balanced_parts + cover_parts).canonical()
    out = CoverWithSpares(family, spares[0], spares[1])
    _check_spares(g, cert.host, out)
    return out


def _one_two_component(g: SignedGraph, cert: GeneralizedBarbellCert) -> Decomposition | CoverWithSpares:
    hg = g.subgraph(cert.host)
    if bridges(hg):
        fam = family_from_edge_sets(g, _gbarbell_double_cover_sets(g, cert, _Fresh(g))).canonical()
        drop = next(k for k, m in enumerate(fam.members) if not isinstance(m, Balanced))
        bar = fam.members[drop]
        rest = CoverFamily(m for k, m in enumerate(fam.members) if k != drop)
        return CoverWithSpares(rest, bar.c1, bar.c2)
    unb, shorts, bal = _improved_decomposition(g, cert.host)
    if not unb:
        if not shorts:
            return Decomposition(tuple(bal))
        sets = bal + [a | b for a, b in shorts]
        return CoverWithSpares(family_from_edge_sets(g, sets), shorts[0][0], shorts[0][1])
    if len(unb) % 2:
        raise ConstructionDefect("odd number of unbalanced circuits in an even eulerian graph")
    quot = contract(hg, unb)
    X = quot.quotient
    tree = spanning_forest(X)
    reps = [quot.vertex_map[min(vertices_of(g, c))] for c in unb]
    forest: set[int] = set()
    for t in range(0, len(reps), 2):
        forest ^= set(tree.tree_path(reps[t], reps[t + 1]))
    sub_host = frozenset(forest).union(*unb)
    sub = make_gbarbell_cert(g, sub_host, unb)
    fam, leaves = gcycle_cover(g, sub)
    if len(leaves) < 2:
        raise ConstructionDefect("forest of unbalanced circuits has fewer than two leaves")
    sets = [m.edges for m in fam] + bal + [a | b for a, b in shorts]
    c1, c2 = sub.pieces[leaves[0]], sub.pieces[leaves[1]]
    return CoverWithSpares(family_from_edge_sets(g, sets), c1, c2)


def _check_decomposition(g: SignedGraph, host: Iterable[int], d: Decomposition) -> None:
    count: Counter = Counter()
    for c in d.circuits:
        if not is_circuit(g, c) or negative_count(g, c) % 2:
            raise ConstructionDefect("decomposition member is not a balanced circuit")
        count.update(c)
    if set(count) != set(host) or any(v != 1 for v in count.values()):
        raise ConstructionDefect("decomposition does not partition the host")


def _check_spares(g: SignedGraph, host: Iterable[int], r: CoverWithSpares) -> None:
    mult = r.cover.multiplicity
    host = set(host)
    if set(mult) - host:
        raise ConstructionDefect("{1,2}-cover leaves the host")
    if any(mult[i] not in (1, 2) for i in host):
        raise ConstructionDefect("{1,2}-cover multiplicity outside {1,2}")
    for c in (r.c1, r.c2):
        if not is_circuit(g, c) or negative_count(g, c) % 2 == 0:
            raise ConstructionDefect("spare is not an unbalanced circuit")
        if any(mult[i] != 1 for i in c):
            raise ConstructionDefect("spare circuit is not covered exactly once")
    if r.c1 & r.c2:
        raise ConstructionDefect("spare circuits share an edge")
