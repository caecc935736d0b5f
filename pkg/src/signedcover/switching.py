"""Switching, exact negativeness, and the edge-cut test for minimal signatures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import config
from .config import SizeLimitExceeded
from .graph import Edge, GraphError, SignedGraph


@dataclass(frozen=True)
class NegativenessCertificate:
    epsilon_n: int
    optimal_switch: frozenset[int]
    resulting_negative_edges: frozenset[int]


def switch(g: SignedGraph, s: Iterable[int]) -> SignedGraph:
    """Flip every edge with exactly one endpoint in ``s``; loops never flip."""
    s = set(s)
    bad = s - g.vertices
    if bad:
        raise GraphError(f"vertex ids out of range: {sorted(bad)}")
    edges = {}
    for i, e in g.edges.items():
        flip = (e.u in s) != (e.v in s)
        edges[i] = Edge(e.u, e.v, -e.sign if flip else e.sign)
    return SignedGraph(g.vertices, edges)


def _component_masks(g: SignedGraph, verts: frozenset[int], edge_ids: frozenset[int]):
    """Bit layout for one component: the smallest vertex is pinned outside the switch."""
    order = sorted(verts)
    free = order[1:]
    bit = {v: j for j, v in enumerate(free)}
    masks = np.arange(1 << len(free), dtype=np.uint32)
    cols = {}
    for v, j in bit.items():
        cols[v] = ((masks >> np.uint32(j)) & np.uint32(1)).astype(np.uint8)
    zero = np.zeros(masks.shape, dtype=np.uint8)
    sides = {v: cols.get(v, zero) for v in order}
    return free, masks, sides


def _mask_to_set(free: list[int], mask: int) -> frozenset[int]:
    return frozenset(v for j, v in enumerate(free) if mask >> j & 1)


def negativeness_exact(g: SignedGraph, limit: int | None = None) -> NegativenessCertificate:
    """Minimum number of negative edges over all switchings, with an optimal switch.

    Each component is searched exhaustively over the switching sets that
    avoid its smallest vertex.  Ties go to the lexicographically smallest
    vertex tuple.
    """
    limit = config.exact_negativeness_limit() if limit is None else limit
    comps = g.components()
    biggest = max((len(vs) for vs, _ in comps), default=0)
    if biggest > limit:
        raise SizeLimitExceeded(f"exact search refused: component with {biggest} vertices > limit {limit}")
    chosen: set[int] = set()
    for verts, eids in comps:
        loop_neg = sum(1 for i in eids if g.edge(i).is_loop and g.edge(i).sign < 0)
        free, masks, sides = _component_masks(g, verts, eids)
        count = np.full(masks.shape, loop_neg, dtype=np.int32)
        for i in eids:
            e = g.edge(i)
            if e.is_loop:
                continue
            flipped = sides[e.u] ^ sides[e.v]
            count += flipped ^ np.uint8(e.sign < 0)
        best = int(count.min())
        winners = np.flatnonzero(count == best)
        best_set = min((_mask_to_set(free, int(m)) for m in winners), key=lambda s: tuple(sorted(s)))
        chosen |= best_set
    switched = switch(g, chosen)
    neg = switched.negative_edges
    return NegativenessCertificate(len(neg), frozenset(chosen), neg)


def verify_minimal_signature(g: SignedGraph, limit: int | None = None) -> bool:
    """True iff every edge cut has at most half of its edges negative."""
    limit = config.cut_enumeration_limit() if limit is None else limit
    comps = g.components()
    biggest = max((len(vs) for vs, _ in comps), default=0)
    if biggest > limit:
        raise SizeLimitExceeded(f"cut enumeration refused: component with {biggest} vertices > limit {limit}")
    for verts, eids in comps:
        if len(verts) < 2:
            continue
        free, masks, sides = _component_masks(g, verts, eids)
        size = np.zeros(masks.shape, dtype=np.int32)
        neg = np.zeros(masks.shape, dtype=np.int32)
        for i in eids:
            e = g.edge(i)
            if e.is_loop:
                continue
            crossing = sides[e.u] ^ sides[e.v]
            size += crossing
            if e.sign < 0:
                neg += crossing
        if np.any(2 * neg[1:] > size[1:]):
            return False
    return True


def normalize(g: SignedGraph, limit: int | None = None) -> tuple[SignedGraph, NegativenessCertificate]:
    """Switch ``g`` to a signature with exactly ε_N negative edges."""
    cert = negativeness_exact(g, limit)
    return switch(g, cert.optimal_switch), cert
