"""Signed multigraphs, circuits, signed circuits and cover families.

Edges carry stable integer ids.  Every derived graph (subgraph, quotient,
switched copy) keeps the ids of the edges it inherits, so certificates
produced anywhere in the package refer to the caller's edges.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Malformed graph or reference to an unknown vertex/edge."""


class ConstructionDefect(RuntimeError):
    """A constructive routine produced output that fails its own check.

    This signals a bug, never a property of the input.
    """


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def negative(self) -> bool:
        return self.sign < 0

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class SignedGraph:
    """An immutable signed multigraph with arbitrary integer edge ids.

    Loops and parallel edges are allowed.  Graphs read from files use
    vertices ``1..n`` and edge ids ``0..m-1``; graphs built internally may use
    any ids.
    """

    def __init__(self, vertices: Iterable[int], edges: Mapping[int, Edge]):
        self.vertices = frozenset(vertices)
        self._edges: dict[int, Edge] = dict(edges)
        for eid, e in self._edges.items():
            if e.sign not in (1, -1):
                raise GraphError(f"edge {eid}: sign must be +1 or -1, got {e.sign!r}")
            if e.u not in self.vertices or e.v not in self.vertices:
                raise GraphError(f"edge {eid}: endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "SignedGraph":
        """Build a graph on vertices ``1..n`` with edge ids in input order."""
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        emap = {}
        for i, (u, v, s) in enumerate(edges):
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge {i}: endpoint out of range [1, {n}]")
            emap[i] = Edge(int(u), int(v), int(s))
        return cls(range(1, n + 1), emap)

    # -- basic access -----------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Mapping[int, Edge]:
        return self._edges

    @property
    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def edge(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def __contains__(self, eid: object) -> bool:
        return eid in self._edges

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self._edges.items())))

    def __repr__(self) -> str:
        return f"SignedGraph(|V|={self.vertex_count}, |E|={self.edge_count}, |E_N|={len(self.negative_edges)})"

    @cached_property
    def negative_edges(self) -> frozenset[int]:
        return frozenset(i for i, e in self._edges.items() if e.sign < 0)

    @cached_property
    def incidence(self) -> dict[int, list[int]]:
        """vertex -> sorted incident edge ids; a loop is listed once."""
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for eid in sorted(self._edges):
            e = self._edges[eid]
            inc[e.u].append(eid)
            if not e.is_loop:
                inc[e.v].append(eid)
        return inc

    def degree(self, v: int) -> int:
        return sum(2 if self._edges[i].is_loop else 1 for i in self.incidence[v])

    # -- derived graphs ---------------------------------------------------
    def subgraph(self, edge_ids: Iterable[int], keep_vertices: bool = False) -> "SignedGraph":
        ids = set(edge_ids)
        for i in ids:
            self.edge(i)
        emap = {i: self._edges[i] for i in ids}
        if keep_vertices:
            verts = self.vertices
        else:
            verts = {x for e in emap.values() for x in (e.u, e.v)}
        return SignedGraph(verts, emap)

    def without(self, edge_ids: Iterable[int]) -> "SignedGraph":
        """Delete edges, keeping every vertex."""
        drop = set(edge_ids)
        return SignedGraph(self.vertices, {i: e for i, e in self._edges.items() if i not in drop})

    def induced_on(self, vertices: Iterable[int]) -> "SignedGraph":
        vs = frozenset(vertices)
        return SignedGraph(vs, {i: e for i, e in self._edges.items() if e.u in vs and e.v in vs})

    def with_edges(self, extra: Mapping[int, Edge]) -> "SignedGraph":
        clash = set(extra) & set(self._edges)
        if clash:
            raise GraphError(f"edge ids already present: {sorted(clash)}")
        verts = set(self.vertices)
        for e in extra.values():
            verts.update((e.u, e.v))
        return SignedGraph(verts, {**self._edges, **extra})

    def with_signs(self, signs: Mapping[int, int]) -> "SignedGraph":
        return SignedGraph(
            self.vertices,
            {i: Edge(e.u, e.v, signs.get(i, e.sign)) for i, e in self._edges.items()},
        )

    def fresh_id(self) -> int:
        return max(self._edges, default=-1) + 1

    # -- connectivity -----------------------------------------------------
    def components(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """(vertex set, edge set) of each connected component, isolated vertices included."""
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self._edges.values():
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[max(a, b)] = min(a, b)
        vgroups: dict[int, set[int]] = defaultdict(set)
        for v in self.vertices:
            vgroups[find(v)].add(v)
        egroups: dict[int, set[int]] = defaultdict(set)
        for i, e in self._edges.items():
            egroups[find(e.u)].add(i)
        return [
            (frozenset(vgroups[r]), frozenset(egroups.get(r, ())))
            for r in sorted(vgroups, key=lambda r: min(vgroups[r]))
        ]

    def component_count(self, ignore_isolated: bool = False) -> int:
        comps = self.components()
        if ignore_isolated:
            comps = [c for c in comps if c[1]]
        return len(comps)

    def is_connected(self) -> bool:
        return self.component_count(ignore_isolated=False) <= 1

    def edge_components(self) -> list[frozenset[int]]:
        """Edge sets of the components that contain at least one edge."""
        return [es for _, es in self.components() if es]


# ---------------------------------------------------------------------------
# edge-set helpers shared across modules


def vertices_of(g: SignedGraph, edge_ids: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for i in edge_ids:
        e = g.edge(i)
        out.add(e.u)
        out.add(e.v)
    return out


def degrees_of(g: SignedGraph, edge_ids: Iterable[int]) -> Counter:
    deg: Counter = Counter()
    for i in edge_ids:
        e = g.edge(i)
        deg[e.u] += 1
        deg[e.v] += 1
    return deg


def is_connected_edges(g: SignedGraph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    if not ids:
        return False
    return g.subgraph(ids).is_connected()


def negative_count(g: SignedGraph, edges: Iterable[int]) -> int:
    """Number of negative edges among ``edges``."""
    return sum(1 for i in edges if g.edge(i).sign < 0)


def is_circuit(g: SignedGraph, edge_ids: Iterable[int]) -> bool:
    ids = set(edge_ids)
    if not ids:
        return False
    deg = degrees_of(g, ids)
    return all(d == 2 for d in deg.values()) and is_connected_edges(g, ids)


def circuit_walk(g: SignedGraph, edge_ids: Iterable[int], start: int | None = None) -> list[int]:
    """Closed vertex sequence of a circuit (first vertex repeated at the end)."""
    ids = set(edge_ids)
    if not is_circuit(g, ids):
        raise GraphError("edge set is not a circuit")
    inc: dict[int, list[int]] = defaultdict(list)
    for i in sorted(ids):
        e = g.edge(i)
        inc[e.u].append(i)
        if not e.is_loop:
            inc[e.v].append(i)
    v0 = min(inc) if start is None else start
    seq = [v0]
    used: set[int] = set()
    cur = v0
    while len(used) < len(ids):
        eid = next(i for i in inc[cur] if i not in used)
        used.add(eid)
        cur = g.edge(eid).other(cur)
        seq.append(cur)
    return seq


def is_balanced(g: SignedGraph, circuit: Iterable[int]) -> bool:
    """True iff ``circuit`` is a circuit of ``g`` with an even number of negative edges."""
    ids = set(circuit)
    if not is_circuit(g, ids):
        raise GraphError("invalid circuit witness")
    return negative_count(g, ids) % 2 == 0


def path_order(g: SignedGraph, edge_ids: Iterable[int]) -> tuple[list[int], list[int]] | None:
    """Order the edges of a simple path.

    Returns (vertex sequence, edge sequence) or None when the edges do not
    form a simple nonempty path.
    """
    ids = set(edge_ids)
    if not ids:
        return None
    if any(g.edge(i).is_loop for i in ids):
        return None
    deg = degrees_of(g, ids)
    ends = sorted(v for v, d in deg.items() if d == 1)
    if len(ends) != 2 or any(d not in (1, 2) for d in deg.values()):
        return None
    inc: dict[int, list[int]] = defaultdict(list)
    for i in ids:
        e = g.edge(i)
        inc[e.u].append(i)
        inc[e.v].append(i)
    verts, eseq = [ends[0]], []
    cur, used = ends[0], set()
    while True:
        nxt = [i for i in inc[cur] if i not in used]
        if not nxt:
            break
        eid = nxt[0]
        used.add(eid)
        eseq.append(eid)
        cur = g.edge(eid).other(cur)
        verts.append(cur)
    if len(used) != len(ids):
        return None
    return verts, eseq


# ---------------------------------------------------------------------------
# signed circuits


@dataclass(frozen=True)
class Balanced:
    circuit: frozenset[int]

    @property
    def edges(self) -> frozenset[int]:
        return self.circuit

    @property
    def kind(self) -> str:
        return "balanced"


@dataclass(frozen=True)
class ShortBarbell:
    c1: frozenset[int]
    c2: frozenset[int]
    joint: int

    @property
    def edges(self) -> frozenset[int]:
        return self.c1 | self.c2

    @property
    def kind(self) -> str:
        return "short"


@dataclass(frozen=True)
class LongBarbell:
    c1: frozenset[int]
    path: tuple[int, ...]
    c2: frozenset[int]

    @property
    def edges(self) -> frozenset[int]:
        return self.c1 | frozenset(self.path) | self.c2

    @property
    def kind(self) -> str:
        return "long"


SignedCircuit = Balanced | ShortBarbell | LongBarbell


def is_barbell(sc: SignedCircuit) -> bool:
    return not isinstance(sc, Balanced)


def barbell_circuits(sc: SignedCircuit) -> tuple[frozenset[int], frozenset[int]]:
    if isinstance(sc, Balanced):
        raise TypeError("balanced circuits have no end circuits")
    return sc.c1, sc.c2


@dataclass
class Diagnostics:
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_signed_circuit(g: SignedGraph, sc: SignedCircuit) -> Diagnostics:
    """Check every invariant of ``sc`` against ``g``; never raises."""
    reasons: list[str] = []
    try:
        everything = set(sc.edges)
        unknown = [i for i in everything if i not in g]
        if unknown:
            return Diagnostics(False, [f"unknown edge ids {sorted(unknown)}"])

        if isinstance(sc, Balanced):
            if not is_circuit(g, sc.circuit):
                reasons.append("not a circuit")
            elif negative_count(g, sc.circuit) % 2:
                reasons.append("odd negative count")
            return Diagnostics(not reasons, reasons)

        for name, c in (("c1", sc.c1), ("c2", sc.c2)):
            if not is_circuit(g, c):
                reasons.append(f"{name} is not a circuit")
            elif negative_count(g, c) % 2 == 0:
                reasons.append(f"{name} is balanced")
        if sc.c1 & sc.c2:
            reasons.append("end circuits share edges")
        if reasons:
            return Diagnostics(False, reasons)
        v1, v2 = vertices_of(g, sc.c1), vertices_of(g, sc.c2)

        if isinstance(sc, ShortBarbell):
            if v1 & v2 != {sc.joint}:
                reasons.append("joint not unique")
            return Diagnostics(not reasons, reasons)

        if v1 & v2:
            reasons.append("end circuits not vertex-disjoint")
        path = list(sc.path)
        if len(set(path)) != len(path):
            reasons.append("path repeats an edge")
        if set(path) & (sc.c1 | sc.c2):
            reasons.append("path shares edges with an end circuit")
        order = path_order(g, path)
        if order is None:
            reasons.append("path is not a simple nonempty path")
        else:
            verts = order[0]
            a, b = verts[0], verts[-1]
            pv = set(verts)
            if not ((pv & v1 == {a} and pv & v2 == {b}) or (pv & v1 == {b} and pv & v2 == {a})):
                reasons.append("path does not meet the end circuits exactly at its ends")
        return Diagnostics(not reasons, reasons)
    except GraphError as exc:
        return Diagnostics(False, [str(exc)])


def _walk_until_branch(g: SignedGraph, ids: set[int], inc, deg, start: int, first_edge: int):
    """Follow degree-2 vertices from ``start`` along ``first_edge``."""
    edges = [first_edge]
    cur = g.edge(first_edge).other(start)
    prev = first_edge
    while deg[cur] == 2 and cur != start:
        nxt = [i for i in inc[cur] if i != prev]
        if g.edge(prev).is_loop:
            break
        if not nxt:
            break
        prev = nxt[0]
        edges.append(prev)
        cur = g.edge(prev).other(cur)
    return cur, edges


def classify_signed_circuit(g: SignedGraph, edge_ids: Iterable[int]) -> SignedCircuit | None:
    """Recognise an edge set as a signed circuit of ``g``; None if it is not one."""
    ids = frozenset(edge_ids)
    if not ids or any(i not in g for i in ids):
        return None
    if not is_connected_edges(g, ids):
        return None
    deg = degrees_of(g, ids)
    if all(d == 2 for d in deg.values()):
        if negative_count(g, ids) % 2 == 0:
            return Balanced(ids)
        return None

    inc: dict[int, list[int]] = defaultdict(list)
    for i in sorted(ids):
        e = g.edge(i)
        inc[e.u].append(i)
        if not e.is_loop:
            inc[e.v].append(i)
    high = sorted(v for v, d in deg.items() if d != 2)

    if len(high) == 1 and deg[high[0]] == 4:
        x = high[0]
        circuits = _circuits_through(g, ids, inc, deg, x)
        if circuits is None or len(circuits) != 2:
            return None
        sc = ShortBarbell(circuits[0], circuits[1], x)
    elif len(high) == 2 and deg[high[0]] == 3 and deg[high[1]] == 3:
        a, b = high
        ca = _circuits_through(g, ids, inc, deg, a)
        cb = _circuits_through(g, ids, inc, deg, b)
        if ca is None or cb is None or len(ca) != 1 or len(cb) != 1:
            return None
        rest = ids - ca[0] - cb[0]
        order = path_order(g, rest)
        if order is None:
            return None
        verts, eseq = order
        if verts[0] == b:
            eseq = eseq[::-1]
        sc = LongBarbell(ca[0], tuple(eseq), cb[0])
    else:
        return None
    return sc if validate_signed_circuit(g, sc) else None


def _circuits_through(g, ids, inc, deg, x):
    """Closed walks leaving and re-entering ``x`` through degree-2 vertices."""
    found: list[frozenset[int]] = []
    seen: set[int] = set()
    for eid in inc[x]:
        if eid in seen:
            continue
        if g.edge(eid).is_loop:
            seen.add(eid)
            found.append(frozenset([eid]))
            continue
        end, walk = _walk_until_branch(g, ids, inc, deg, x, eid)
        if end == x:
            seen.update(walk)
            found.append(frozenset(walk))
    return found


def canonical_order(members: Iterable[SignedCircuit]) -> list[SignedCircuit]:
    return sorted(members, key=lambda m: (min(m.edges), sorted(m.edges), m.kind))


# ---------------------------------------------------------------------------
# cover families


@dataclass(frozen=True)
class CoverFamily:
    """A multiset of signed circuits."""

    members: tuple[SignedCircuit, ...] = ()

    def __init__(self, members: Iterable[SignedCircuit] = ()):
        object.__setattr__(self, "members", tuple(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def multiplicity(self) -> Counter:
        c: Counter = Counter()
        for m in self.members:
            c.update(m.edges)
        return c

    @property
    def length(self) -> int:
        return sum(len(m.edges) for m in self.members)

    def union(self, other: "CoverFamily") -> "CoverFamily":
        return CoverFamily(self.members + other.members)

    def canonical(self) -> "CoverFamily":
        return CoverFamily(canonical_order(self.members))


@dataclass
class MultiplicityReport:
    multiplicity: dict[int, int]
    length: int
    uncovered: list[int]


class InvalidMember(GraphError):
    def __init__(self, index: int, diag: Diagnostics):
        super().__init__(f"member {index} invalid: {'; '.join(diag.reasons)}")
        self.index = index
        self.diagnostics = diag


def cover_multiplicities(g: SignedGraph, f: CoverFamily) -> MultiplicityReport:
    """Per-edge multiplicities over all edges of ``g`` and the total length ℓ(F)."""
    for idx, m in enumerate(f.members):
        diag = validate_signed_circuit(g, m)
        if not diag:
            raise InvalidMember(idx, diag)
    mult = {i: 0 for i in g.edge_ids}
    for m in f.members:
        for i in m.edges:
            mult[i] += 1
    return MultiplicityReport(mult, f.length, sorted(i for i, k in mult.items() if k == 0))


def family_from_edge_sets(g: SignedGraph, sets: Iterable[Iterable[int]]) -> CoverFamily:
    """Classify raw edge sets; raises ConstructionDefect on anything that is not a signed circuit."""
    out = []
    for s in sets:
        sc = classify_signed_circuit(g, s)
        if sc is None:
            raise ConstructionDefect(f"edge set {sorted(s)} is not a signed circuit")
        out.append(sc)
    return CoverFamily(out)
