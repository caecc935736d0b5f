"""Exhaustive enumeration of circuits and signed circuits at desk scale."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator

from . import config
from .config import SizeLimitExceeded
from .graph import (
    Balanced,
    LongBarbell,
    ShortBarbell,
    SignedCircuit,
    SignedGraph,
    negative_count,
    vertices_of,
)


def all_circuits(g: SignedGraph, limit: int | None = None) -> list[frozenset[int]]:
    """Every circuit of ``g`` as an edge set, each listed once.

    A circuit is generated from its smallest edge id ``e = uv`` as ``e`` plus a
    simple ``v``-``u`` path over larger ids.
    """
    limit = config.circuit_enumeration_limit() if limit is None else limit
    if g.edge_count > limit:
        raise SizeLimitExceeded(f"circuit enumeration refused: |E|={g.edge_count} > limit {limit}")
    inc: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i in g.edge_ids:
        e = g.edge(i)
        if e.is_loop:
            continue
        inc[e.u].append((i, e.v))
        inc[e.v].append((i, e.u))
    out: list[frozenset[int]] = []
    for i in g.edge_ids:
        e = g.edge(i)
        if e.is_loop:
            out.append(frozenset([i]))
            continue
        target = e.u
        path: list[int] = [i]
        on_path = {e.v}

        def dfs(x: int) -> None:
            for j, y in inc[x]:
                if j <= i:
                    continue
                if y == target:
                    out.append(frozenset(path + [j]))
                    continue
                if y in on_path:
                    continue
                on_path.add(y)
                path.append(j)
                dfs(y)
                path.pop()
                on_path.discard(y)

        on_path.add(target)
        dfs(e.v)
    return out


def vertex_mask(g: SignedGraph, edge_ids: Iterable[int]) -> int:
    m = 0
    for v in vertices_of(g, edge_ids):
        m |= 1 << v
    return m


def connecting_paths(
    g: SignedGraph, c1: frozenset[int], c2: frozenset[int]
) -> Iterator[tuple[int, ...]]:
    """Every simple path from V(c1) to V(c2) meeting each circuit only at an end."""
    v1, v2 = vertices_of(g, c1), vertices_of(g, c2)
    banned = c1 | c2
    inc: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, e in g.edges.items():
        if i in banned or e.is_loop:
            continue
        inc[e.u].append((i, e.v))
        inc[e.v].append((i, e.u))
    for x in inc:
        inc[x].sort()
    for start in sorted(v1):
        path: list[int] = []
        seen = {start}

        def dfs(x: int) -> Iterator[tuple[int, ...]]:
            for j, y in inc[x]:
                if y in seen or (y in v1):
                    continue
                path.append(j)
                if y in v2:
                    yield tuple(path)
                else:
                    seen.add(y)
                    yield from dfs(y)
                    seen.discard(y)
                path.pop()

        yield from dfs(start)


def all_signed_circuits(g: SignedGraph, limit: int | None = None) -> list[SignedCircuit]:
    """Balanced circuits, short barbells and long barbells (all connecting paths)."""
    circuits = all_circuits(g, limit)
    out: list[SignedCircuit] = []
    unbalanced = []
    for c in circuits:
        if negative_count(g, c) % 2 == 0:
            out.append(Balanced(c))
        else:
            unbalanced.append((c, vertex_mask(g, c)))
    comp_of = {}
    for idx, (_, es) in enumerate(g.components()):
        for i in es:
            comp_of[i] = idx
    for a in range(len(unbalanced)):
        ca, ma = unbalanced[a]
        for b in range(a + 1, len(unbalanced)):
            cb, mb = unbalanced[b]
            shared = ma & mb
            if shared:
                if shared & (shared - 1) == 0 and not (ca & cb):
                    out.append(ShortBarbell(ca, cb, shared.bit_length() - 1))
                continue
            if comp_of[next(iter(ca))] != comp_of[next(iter(cb))]:
                continue
            for p in connecting_paths(g, ca, cb):
                out.append(LongBarbell(ca, p, cb))
    return out
