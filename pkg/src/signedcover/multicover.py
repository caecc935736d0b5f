"""Exact minimum-weight set cover by branch and bound over bitmasks.

The weight of a candidate is its size, so a cover's cost is the total
length of the chosen edge sets.
"""

from __future__ import annotations

import math
from typing import Sequence

from . import config
from .config import SizeLimitExceeded


class SearchBudgetExceeded(SizeLimitExceeded):
    """The branch-and-bound search visited more nodes than its budget allows."""


def min_length_cover(
    universe: Sequence[int],
    candidates: Sequence[frozenset[int]],
    budget: int | None = None,
    upper: int | None = None,
    first: bool = False,
) -> list[int] | None:
    """Indices of a minimum-total-size subfamily covering ``universe``.

    Returns None when some element lies in no candidate or no cover of
    length at most ``upper`` exists.  With ``first`` the search stops at the
    first cover within ``upper`` instead of proving optimality.
    """
    budget = config.search_node_budget() if budget is None else budget
    bit = {e: j for j, e in enumerate(sorted(universe))}
    full = (1 << len(bit)) - 1
    masks: list[int] = []
    sizes: list[int] = []
    for c in candidates:
        m = 0
        for e in c:
            if e in bit:
                m |= 1 << bit[e]
        masks.append(m)
        sizes.append(len(c))
    holders: list[list[int]] = [[] for _ in bit]
    for idx, m in enumerate(masks):
        j = m
        while j:
            low = j & -j
            holders[low.bit_length() - 1].append(idx)
            j ^= low
    if any(not h for h in holders):
        return None
    for h in holders:
        h.sort(key=lambda i: (sizes[i], i))

    best_cost = math.inf if upper is None else upper + 1
    best: list[int] | None = None
    nodes = 0
    chosen: list[int] = []

    def lower_bound(open_: int) -> float:
        total = 0.0
        j = open_
        while j:
            low = j & -j
            e = low.bit_length() - 1
            total += min(sizes[i] / (masks[i] & open_).bit_count() for i in holders[e])
            j ^= low
        return total

    class _Done(Exception):
        pass

    def search(open_: int, cost: int) -> None:
        nonlocal best_cost, best, nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"exact cover search exceeded {budget} nodes")
        if not open_:
            if cost < best_cost:
                best_cost = cost
                best = list(chosen)
                if first:
                    raise _Done
            return
        if cost + math.ceil(lower_bound(open_) - 1e-9) >= best_cost:
            return
        j = open_
        pick, fewest = -1, math.inf
        while j:
            low = j & -j
            e = low.bit_length() - 1
            n = len(holders[e])
            if n < fewest:
                pick, fewest = e, n
            j ^= low
        opts = sorted(holders[pick], key=lambda i: (sizes[i] / (masks[i] & open_).bit_count(), i))
        for i in opts:
            chosen.append(i)
            search(open_ & ~masks[i], cost + sizes[i])
            chosen.pop()

    try:
        search(full, 0)
    except _Done:
        pass
    return best
