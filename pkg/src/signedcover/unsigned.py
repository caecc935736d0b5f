"""Circuit covers of bridgeless graphs read without signs."""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .circuits import all_circuits
from .config import SizeLimitExceeded
from .graph import Balanced, ConstructionDefect, CoverFamily, GraphError, SignedGraph, is_circuit
from .multicover import min_length_cover
from .structure import bridges


@dataclass(frozen=True)
class UnsignedCoverReport:
    cover: CoverFamily
    length: int
    bound_53: Fraction
    bound_fan: int
    backend: str  # "exact" or "heuristic"


def unsigned_bounds(g: SignedGraph) -> tuple[Fraction, int]:
    """(5/3 |E|, |E| + |V| - 1) with |V| counting vertices that carry an edge."""
    used = {x for e in g.edges.values() for x in (e.u, e.v)}
    return Fraction(5, 3) * g.edge_count, g.edge_count + len(used) - 1


def _cheapest_circuit_through(g: SignedGraph, eid: int, covered: set[int]) -> frozenset[int] | None:
    """Circuit through ``eid`` reusing as few covered edges as possible, then shortest."""
    e = g.edge(eid)
    if e.is_loop:
        return frozenset([eid])
    heavy = g.edge_count + 1
    dist = {e.u: 0}
    prev: dict[int, tuple[int, int]] = {}
    heap = [(0, e.u)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        if x == e.v:
            break
        for j in g.incidence[x]:
            f = g.edge(j)
            if j == eid or f.is_loop:
                continue
            y = f.other(x)
            nd = d + (heavy if j in covered else 1)
            if nd < dist.get(y, nd + 1):
                dist[y] = nd
                prev[y] = (x, j)
                heapq.heappush(heap, (nd, y))
    if e.v not in dist:
        return None
    out = {eid}
    cur = e.v
    while cur != e.u:
        px, pj = prev[cur]
        out.add(pj)
        cur = px
    return frozenset(out)


def _prune(members: list[frozenset[int]]) -> list[frozenset[int]]:
    """Drop members, longest first, while everything stays covered."""
    count: dict[int, int] = {}
    for m in members:
        for i in m:
            count[i] = count.get(i, 0) + 1
    kept = list(members)
    for m in sorted(members, key=lambda c: (-len(c), sorted(c))):
        if all(count[i] >= 2 for i in m):
            kept.remove(m)
            for i in m:
                count[i] -= 1
    return kept


def _greedy(g: SignedGraph, order: list[int] | None = None) -> list[frozenset[int]]:
    covered: set[int] = set()
    members: list[frozenset[int]] = []
    for eid in g.edge_ids if order is None else order:
        if eid in covered:
            continue
        c = _cheapest_circuit_through(g, eid, covered)
        if c is None:
            raise GraphError(f"edge {eid} is a bridge")
        members.append(c)
        covered |= c
    return _prune(members)


def _best_greedy(g: SignedGraph, tries: int = 8) -> list[frozenset[int]]:
    """Best of several greedy passes over seeded edge orders."""
    rng = random.Random(g.edge_count)
    best = _greedy(g)
    for _ in range(tries - 1):
        order = g.edge_ids
        rng.shuffle(order)
        cand = _greedy(g, order)
        if sum(map(len, cand)) < sum(map(len, best)):
            best = cand
    return best


def _report(g: SignedGraph, members: list[frozenset[int]], backend: str) -> UnsignedCoverReport:
    b53, bfan = unsigned_bounds(g)
    covered: set[int] = set()
    for m in members:
        if not is_circuit(g, m):
            raise ConstructionDefect("cover member is not a circuit")
        covered |= m
    if covered != set(g.edge_ids):
        raise ConstructionDefect("circuit cover misses edges")
    fam = CoverFamily(Balanced(m) for m in members).canonical()
    return UnsignedCoverReport(fam, fam.length, b53, bfan, backend)


def exact_scc_unsigned(gu: SignedGraph, limit: int | None = None, budget: int | None = None) -> CoverFamily:
    """Minimum-length circuit cover, ignoring signs, by exhaustive search."""
    limit = config.unsigned_oracle_limit() if limit is None else limit
    if gu.edge_count > limit:
        raise SizeLimitExceeded(f"exact unsigned cover refused: |E|={gu.edge_count} > limit {limit}")
    if bridges(gu):
        raise GraphError("graph has a bridge")
    if gu.edge_count == 0:
        return CoverFamily()
    circuits = all_circuits(gu, limit)
    upper = sum(len(c) for c in _best_greedy(gu))
    pick = min_length_cover(gu.edge_ids, circuits, budget, upper)
    if pick is None:
        raise ConstructionDefect("exact search found no circuit cover of a bridgeless graph")
    return CoverFamily(Balanced(circuits[i]) for i in pick).canonical()


def _cover_within(g: SignedGraph, target: int) -> list[frozenset[int]]:
    """Complete search for any circuit cover of length at most ``target``."""
    limit = config.unsigned_oracle_limit()
    if g.edge_count > limit:
        raise SizeLimitExceeded(f"exact unsigned cover refused: |E|={g.edge_count} > limit {limit}")
    circuits = all_circuits(g, limit)
    pick = min_length_cover(g.edge_ids, circuits, upper=target, first=True)
    if pick is None:
        raise ConstructionDefect(f"no circuit cover of length <= {target} exists")
    return [circuits[i] for i in pick]


def circuit_cover_bridgeless(gu: SignedGraph) -> UnsignedCoverReport:
    """Circuit cover with length at most min(5/3 |E|, |E| + |V| - 1).

    Each component gets the best of several greedy covers; if that misses
    the bound, a complete search finds a cover within it.
    """
    if bridges(gu):
        raise GraphError("graph has a bridge")
    if gu.edge_count == 0:
        b53, bfan = unsigned_bounds(gu)
        return UnsignedCoverReport(CoverFamily(), 0, b53, max(bfan, 0), "heuristic")
    members: list[frozenset[int]] = []
    backend = "heuristic"
    for comp in gu.edge_components():
        sub = gu.subgraph(comp)
        part = _best_greedy(sub)
        b53, bfan = unsigned_bounds(sub)
        target = math.floor(min(b53, bfan))
        if sum(len(c) for c in part) > target:
            part = _cover_within(sub, target)
            backend = "exact"
        members += part
    rep = _report(gu, members, backend)
    if rep.length > min(rep.bound_53, rep.bound_fan):
        raise ConstructionDefect(f"circuit cover of length {rep.length} exceeds its bound")
    return rep
