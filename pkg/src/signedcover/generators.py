"""Seeded random instances for tests, the ``gen`` command and benchmarks."""

from __future__ import annotations

import random

from .barbell import GeneralizedBarbellCert, make_gbarbell_cert
from .graph import Edge, GraphError, SignedGraph
from .structure import is_g_bridgeless, is_s_bridgeless
from .switching import negativeness_exact

DEFAULT_ATTEMPTS = 10_000


class GenerationFailed(RuntimeError):
    """Rejection sampling ran out of attempts."""


def random_signed_graph(rng: random.Random, n: int, m: int, neg: int, loop_prob: float = 0.0) -> SignedGraph:
    """Connected graph: a random spanning tree plus ``m - n + 1`` extra edges.

    Extra edges may be parallel; loops appear with probability ``loop_prob``
    and are always negative.  Exactly ``max(neg, #loops)`` edges are negative.
    """
    if n < 1 or m < n - 1:
        raise GraphError("need n >= 1 and m >= n - 1")
    edges: list[list[int]] = []
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for k in range(1, n):
        edges.append([order[k], order[rng.randrange(k)], 1])
    for _ in range(m - (n - 1)):
        if n == 1 or rng.random() < loop_prob:
            v = rng.randint(1, n)
            edges.append([v, v, -1])
        else:
            u, v = rng.sample(range(1, n + 1), 2)
            edges.append([u, v, 1])
    rng.shuffle(edges)
    loops = sum(1 for e in edges if e[0] == e[1])
    plain = [i for i, e in enumerate(edges) if e[0] != e[1]]
    for i in rng.sample(plain, min(len(plain), max(0, neg - loops))):
        edges[i][2] = -1
    return SignedGraph.from_edges(n, [tuple(e) for e in edges])


def generate_instance(
    n: int,
    m: int,
    neg: int,
    seed: int,
    s_bridgeless: bool = False,
    g_bridgeless_even: bool = False,
    min_eps: int = 0,
    loop_prob: float = 0.0,
    attempts: int = DEFAULT_ATTEMPTS,
) -> SignedGraph:
    """Rejection-sample a graph satisfying the requested predicates; deterministic in ``seed``."""
    rng = random.Random(seed)
    for _ in range(attempts):
        g = random_signed_graph(rng, n, m, neg, loop_prob)
        if min_eps or g_bridgeless_even:
            eps = negativeness_exact(g).epsilon_n
            if eps < min_eps:
                continue
            if g_bridgeless_even and (eps < 2 or eps % 2 or not is_g_bridgeless(g)):
                continue
        if s_bridgeless and not is_s_bridgeless(g):
            continue
        return g
    raise GenerationFailed(f"no instance satisfied the predicates within {attempts} attempts")


def _closed_walk(rng: random.Random, verts: list[int], length: int) -> list[tuple[int, int]]:
    walk = [rng.choice(verts) for _ in range(length)]
    return [(walk[i], walk[(i + 1) % length]) for i in range(length)]


def random_eulerian(rng: random.Random, n: int, m: int) -> SignedGraph:
    """Connected eulerian graph from a closed random walk, with an even number of negative edges."""
    pairs = _closed_walk(rng, list(range(1, n + 1)), m)
    signs = [rng.choice((1, -1)) for _ in pairs]
    if signs.count(-1) % 2:
        signs[rng.randrange(len(signs))] *= -1
    used = sorted({x for p in pairs for x in p})
    relabel = {v: k + 1 for k, v in enumerate(used)}
    return SignedGraph.from_edges(len(used), [(relabel[u], relabel[v], s) for (u, v), s in zip(pairs, signs)])


def _assemble_gbarbell(rng: random.Random, nodes: int, piece_maker) -> tuple[SignedGraph, GeneralizedBarbellCert]:
    parent = [None] + [rng.randrange(k) for k in range(1, nodes)]
    degree = [0] * nodes
    for k in range(1, nodes):
        degree[k] += 1
        degree[parent[k]] += 1
    edges: dict[int, Edge] = {}
    pieces: list[set[int]] = []
    members: list[list[int]] = []
    next_vertex = 1
    for k in range(nodes):
        if degree[k] and degree[k] % 2 == 0 and rng.random() < 0.35:
            members.append([next_vertex])
            pieces.append(set())
            next_vertex += 1
            continue
        verts, raw = piece_maker(rng)
        base = next_vertex - 1
        vs = [base + v for v in verts]
        next_vertex += len(verts)
        ids = set()
        for u, v, s in raw:
            eid = len(edges)
            edges[eid] = Edge(base + u, base + v, s)
            ids.add(eid)
        negs = sum(1 for i in ids if edges[i].sign < 0)
        if negs % 2 != degree[k] % 2:
            flip = rng.choice(sorted(ids))
            e = edges[flip]
            edges[flip] = Edge(e.u, e.v, -e.sign)
        members.append(vs)
        pieces.append(ids)
    for k in range(1, nodes):
        a, b = rng.choice(members[k]), rng.choice(members[parent[k]])
        edges[len(edges)] = Edge(a, b, rng.choice((1, -1)))
    g = SignedGraph(range(1, next_vertex), edges)
    cert = make_gbarbell_cert(g, g.edge_ids, [p for p in pieces if p])
    return g, cert


def _eulerian_piece(rng: random.Random):
    s = rng.randint(1, 4)
    length = rng.randint(max(1, s), s + 4)
    pairs = _closed_walk(rng, list(range(1, s + 1)), length)
    used = sorted({x for p in pairs for x in p})
    relabel = {v: k + 1 for k, v in enumerate(used)}
    raw = [(relabel[u], relabel[v], rng.choice((1, -1))) for u, v in pairs]
    return list(range(1, len(used) + 1)), raw


def _circuit_piece(rng: random.Random):
    s = rng.randint(1, 5)
    raw = [(k + 1, (k + 1) % s + 1, rng.choice((1, -1))) for k in range(s)]
    return list(range(1, s + 1)), raw


def random_gbarbell(rng: random.Random, nodes: int) -> tuple[SignedGraph, GeneralizedBarbellCert]:
    """Random generalized barbell with eulerian pieces hung on a random tree."""
    return _assemble_gbarbell(rng, nodes, _eulerian_piece)


def random_circuit_gbarbell(rng: random.Random, nodes: int) -> tuple[SignedGraph, GeneralizedBarbellCert]:
    """Random generalized barbell whose pieces are circuits."""
    return _assemble_gbarbell(rng, nodes, _circuit_piece)


def random_h_graph(rng: random.Random, n: int, neg: int, loop_prob: float = 0.2) -> SignedGraph:
    """A positive random spanning tree plus ``neg`` negative edges (loops allowed)."""
    if neg < 2:
        raise GraphError("need at least two negative edges")
    edges = [(k, rng.randint(1, k - 1), 1) for k in range(2, n + 1)]
    for _ in range(neg):
        if n == 1 or rng.random() < loop_prob:
            v = rng.randint(1, n)
            edges.append((v, v, -1))
        else:
            u, v = rng.sample(range(1, n + 1), 2)
            edges.append((u, v, -1))
    rng.shuffle(edges)
    return SignedGraph.from_edges(n, edges)
