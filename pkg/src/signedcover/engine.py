"""End-to-end signed circuit covers, length bounds, verification and the exact oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import config
from .circuits import all_signed_circuits
from .config import SizeLimitExceeded
from .decomp import pair_decomposition
from .graph import (
    ConstructionDefect,
    CoverFamily,
    GraphError,
    SignedGraph,
    family_from_edge_sets,
    validate_signed_circuit,
)
from .multicover import min_length_cover
from .structure import is_g_bridgeless, is_s_bridgeless
from .switching import negativeness_exact, normalize
from .unsigned import circuit_cover_bridgeless

F = Fraction


# ---------------------------------------------------------------------------
# bounds


def chained_bound(E: int, V: int, eps_n: int, k: int) -> Fraction:
    return min(
        F(5, 3) * E + k * V + (k - F(5, 3)) * eps_n - (3 * k - 2),
        F(E + (k + 1) * V + (k - 1) * eps_n - (3 * k - 1)),
    )


@dataclass(frozen=True)
class BoundReport:
    E: int
    V: int
    eps_n: int
    k: int
    z1: Fraction
    z2: Fraction
    bound_general: Fraction
    bound_even: Fraction
    corollary_bound: Fraction
    chained_bound: Fraction

    @property
    def bound(self) -> Fraction:
        """The bound that applies for this report's ``k``."""
        return self.bound_even if self.k == 2 else self.bound_general


def theorem_bounds(E: int, V: int, eps_n: int, k: int = 3) -> BoundReport:
    if eps_n < 0:
        raise ValueError("eps_n must be nonnegative")
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    z1 = min(F(2, 3) * E + F(4, 3) * eps_n - 7, F(V + 2 * eps_n - 8))
    z2 = min(F(2, 3) * E + F(1, 3) * eps_n - 4, F(V + eps_n - 5))
    general = E + 3 * V + z1
    even = E + 2 * V + z2
    if chained_bound(E, V, eps_n, 3) != general or chained_bound(E, V, eps_n, 2) != even:
        raise ConstructionDefect("chained bound disagrees with the closed forms")
    return BoundReport(
        E, V, eps_n, k, z1, z2, general, even,
        F(14, 3) * E - F(5, 3) * eps_n - 4,
        chained_bound(E, V, eps_n, k),
    )


def _strip_positive_loops(g: SignedGraph) -> tuple[SignedGraph, list[int]]:
    loops = [i for i in g.edge_ids if g.edge(i).is_loop and g.edge(i).sign > 0]
    return g.without(loops), loops


def bound_report_for(g: SignedGraph) -> BoundReport:
    """Bounds for ``g`` with positive loops removed; k = 2 iff g-bridgeless with even negativeness."""
    g0, _ = _strip_positive_loops(g)
    eps = negativeness_exact(g0).epsilon_n
    k = 2 if eps % 2 == 0 and is_g_bridgeless(g0) else 3
    return theorem_bounds(g0.edge_count, g0.vertex_count, eps, k)


# ---------------------------------------------------------------------------
# verification


@dataclass
class CoverReport:
    valid: bool
    multiplicity: dict[int, int]
    length: int
    uncovered: list[int] = field(default_factory=list)
    invalid_members: list[tuple[int, list[str]]] = field(default_factory=list)
    outside_k: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def verify_cover(g: SignedGraph, f: CoverFamily, K: Iterable[int] | None = None) -> CoverReport:
    """Check every member and the per-edge multiplicities; never raises on bad covers."""
    invalid = []
    for idx, m in enumerate(f):
        diag = validate_signed_circuit(g, m)
        if not diag:
            invalid.append((idx, diag.reasons))
    counts: Counter = Counter()
    for m in f:
        counts.update(m.edges)
    mult = {i: counts.get(i, 0) for i in g.edge_ids}
    uncovered = [i for i, k in mult.items() if k == 0]
    allowed = None if K is None else set(K)
    outside = [] if allowed is None else [i for i, k in mult.items() if k not in allowed]
    valid = not invalid and not uncovered and not outside
    return CoverReport(valid, mult, f.length, uncovered, invalid, outside)


# ---------------------------------------------------------------------------
# pruning


@dataclass(frozen=True)
class PruneResult:
    family: CoverFamily
    limit: int
    equality: bool


def prune_cover(g: SignedGraph, f: CoverFamily, edges: Iterable[int] | None = None, k: int | None = None) -> PruneResult:
    """Inclusion-minimal subfamily of ``f`` still covering ``edges`` (default: all edges of ``f``).

    Members are tried longest first.  Every kept member ends with an edge
    covered exactly once, which gives the length limit k|E| - 2(k - 1).
    """
    count: Counter = Counter()
    for m in f:
        count.update(m.edges)
    target = set(count) if edges is None else set(edges)
    if any(count[i] == 0 for i in target):
        raise GraphError("family does not cover the edge set")
    k = max(count.values(), default=1) if k is None else k
    kept = list(f.members)
    for m in sorted(f.members, key=lambda c: (-len(c.edges), sorted(c.edges))):
        if all(count[i] >= 2 for i in m.edges if i in target):
            kept.remove(m)
            count.subtract(m.edges)
    out = CoverFamily(kept).canonical()
    n = len(target)
    limit = k * n - 2 * (k - 1)
    has_positive_loop = any(g.edge(i).is_loop and g.edge(i).sign > 0 for i in target)
    if len(target & g.negative_edges) >= 2 and not has_positive_loop and out.length > limit:
        raise ConstructionDefect(f"pruned family has length {out.length} > {limit}")
    return PruneResult(out, limit, out.length == n)


# ---------------------------------------------------------------------------
# pipeline


class NotSBridgeless(GraphError):
    def __init__(self, edges: list[int]):
        super().__init__(f"edge {edges[0]} lies in no signed circuit")
        self.edges = edges


@dataclass(frozen=True)
class CoverResult:
    cover: CoverFamily
    bounds: BoundReport
    length: int
    stripped_length: int
    positive_loops: tuple[int, ...]
    eps_n: int
    k: int | None
    switch: frozenset[int]
    g1_edges: frozenset[int] = frozenset()
    g2_edges: frozenset[int] = frozenset()
    f1_length: int = 0
    f2_length: int = 0
    f2_pruned_length: int = 0
    claim_limit: int | None = None
    claim_equality: bool | None = None
    unsigned_backend: str | None = None


def scc_upper_cover(g: SignedGraph, assume_s_bridgeless: bool = False) -> CoverResult:
    """A verified signed circuit cover of ``g`` whose length obeys the theorem bounds."""
    if not assume_s_bridgeless:
        rep = is_s_bridgeless(g)
        if not rep:
            raise NotSBridgeless(rep.uncovered)
    g0, loops = _strip_positive_loops(g)
    gn, cert = normalize(g0)
    eps = cert.epsilon_n
    E, V = g0.edge_count, g0.vertex_count
    extra: dict = {}
    if eps == 0:
        rep_u = circuit_cover_bridgeless(gn)
        members = [m.edges for m in rep_u.cover]
        k = None
        bounds = theorem_bounds(E, V, 0, 2)
        if rep_u.length > min(rep_u.bound_53, rep_u.bound_fan):
            raise ConstructionDefect("unsigned cover exceeds its bound")
        extra = dict(g1_edges=frozenset(gn.edge_ids), f1_length=rep_u.length, unsigned_backend=rep_u.backend)
    else:
        pd = pair_decomposition(gn)
        k = pd.k
        bounds = theorem_bounds(E, V, eps, k)
        f1 = circuit_cover_bridgeless(gn.subgraph(pd.g1_edges)) if pd.g1_edges else None
        pruned = prune_cover(gn, pd.f2, pd.g2_edges, k)
        members = [m.edges for m in pruned.family]
        f1_len = 0
        if f1 is not None:
            members += [m.edges for m in f1.cover]
            f1_len = f1.length
        extra = dict(
            g1_edges=pd.g1_edges, g2_edges=pd.g2_edges, f1_length=f1_len,
            f2_length=pd.f2.length, f2_pruned_length=pruned.family.length,
            claim_limit=pruned.limit, claim_equality=pruned.equality,
            unsigned_backend=None if f1 is None else f1.backend,
        )
        stripped = sum(len(m) for m in members)
        if stripped > bounds.chained_bound:
            raise ConstructionDefect(f"cover length {stripped} exceeds the bound {bounds.chained_bound}")
    stripped_len = sum(len(m) for m in members)
    family = family_from_edge_sets(g, members + [frozenset([i]) for i in loops]).canonical()
    report = verify_cover(g, family)
    if not report:
        raise ConstructionDefect(f"pipeline produced an invalid cover: uncovered {report.uncovered}, invalid {report.invalid_members}")
    return CoverResult(
        family, bounds, family.length, stripped_len, tuple(loops), eps, k, cert.optimal_switch, **extra
    )


# ---------------------------------------------------------------------------
# exact oracle


def exact_scc_signed(g: SignedGraph, limit: int | None = None, budget: int | None = None) -> CoverFamily | None:
    """Minimum-length signed circuit cover by exhaustive search; None if ``g`` has none."""
    limit = config.signed_oracle_limit() if limit is None else limit
    if g.edge_count > limit:
        raise SizeLimitExceeded(f"exact signed cover refused: |E|={g.edge_count} > limit {limit}")
    if g.edge_count == 0:
        return CoverFamily()
    cands = all_signed_circuits(g, max(limit, g.edge_count))
    pick = min_length_cover(g.edge_ids, [c.edges for c in cands], budget)
    if pick is None:
        return None
    return CoverFamily(cands[i] for i in pick).canonical()
