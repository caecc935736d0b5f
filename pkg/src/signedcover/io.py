"""Instance files (``p sg n m`` / ``e u v +|-``) and cover files."""

from __future__ import annotations

import re
from typing import Iterable, TextIO

from .graph import (
    Balanced,
    CoverFamily,
    GraphError,
    LongBarbell,
    ShortBarbell,
    SignedCircuit,
    SignedGraph,
    circuit_walk,
    path_order,
)


class FormatError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_instance(text: str) -> SignedGraph:
    header = None
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            if len(tok) != 4 or tok[1] != "sg":
                raise FormatError(lineno, "header must be 'p sg <n> <m>'")
            try:
                header = (int(tok[2]), int(tok[3]))
            except ValueError:
                raise FormatError(lineno, "vertex and edge counts must be integers") from None
            if header[0] < 0 or header[1] < 0:
                raise FormatError(lineno, "counts must be nonnegative")
        elif tok[0] == "e":
            if header is None:
                raise FormatError(lineno, "edge line before header")
            if len(tok) != 4:
                raise FormatError(lineno, "edge line must be 'e <u> <v> <+|->'")
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise FormatError(lineno, "endpoints must be integers") from None
            if tok[3] not in ("+", "-"):
                raise FormatError(lineno, f"bad sign token {tok[3]!r}")
            n = header[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(lineno, f"endpoint out of range [1, {n}]")
            edges.append((u, v, 1 if tok[3] == "+" else -1))
        else:
            raise FormatError(lineno, f"unknown line type {tok[0]!r}")
    if header is None:
        raise FormatError(0, "missing header")
    if len(edges) != header[1]:
        raise FormatError(0, f"header declares {header[1]} edges, found {len(edges)}")
    return SignedGraph.from_edges(header[0], edges)


def read_instance(path: str) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def emit_instance(g: SignedGraph) -> str:
    n = g.vertex_count
    if g.vertices != frozenset(range(1, n + 1)) or g.edge_ids != list(range(g.edge_count)):
        raise GraphError("only graphs on vertices 1..n with edge ids 0..m-1 can be written")
    lines = [f"p sg {n} {g.edge_count}"]
    for i in g.edge_ids:
        e = g.edge(i)
        lines.append(f"e {e.u} {e.v} {'+' if e.sign > 0 else '-'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# cover files

_EDGE = re.compile(r"e(\d+)$")
_SHORT = re.compile(r"short:\s*\[([^\]]*)\]\s*@v(\d+)\s*\[([^\]]*)\]$")
_LONG = re.compile(r"long:\s*\[([^\]]*)\]\s*\(([^)]*)\)\s*\[([^\]]*)\]$")


def _edge_list(lineno: int, text: str) -> list[int]:
    out = []
    for tok in text.split():
        m = _EDGE.match(tok)
        if not m:
            raise FormatError(lineno, f"bad edge token {tok!r}")
        out.append(int(m.group(1)))
    return out


def parse_cover(text: str) -> CoverFamily:
    members: list[SignedCircuit] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("balanced:"):
            members.append(Balanced(frozenset(_edge_list(lineno, line[len("balanced:"):]))))
            continue
        m = _SHORT.match(line)
        if m:
            members.append(ShortBarbell(
                frozenset(_edge_list(lineno, m.group(1))), frozenset(_edge_list(lineno, m.group(3))), int(m.group(2))
            ))
            continue
        m = _LONG.match(line)
        if m:
            members.append(LongBarbell(
                frozenset(_edge_list(lineno, m.group(1))),
                tuple(_edge_list(lineno, m.group(2))),
                frozenset(_edge_list(lineno, m.group(3))),
            ))
            continue
        raise FormatError(lineno, "expected 'balanced:', 'short:' or 'long:' member")
    return CoverFamily(members)


def read_cover(path: str) -> CoverFamily:
    with open(path, encoding="utf-8") as fh:
        return parse_cover(fh.read())


def _ordered_circuit(g: SignedGraph | None, c: Iterable[int]) -> list[int]:
    ids = sorted(c)
    if g is None:
        return ids
    try:
        walk = circuit_walk(g, ids)
    except GraphError:
        return ids
    rest = set(ids)
    seq = []
    for a, b in zip(walk, walk[1:]):
        eid = min(i for i in rest if {g.edge(i).u, g.edge(i).v} == {a, b})
        rest.discard(eid)
        seq.append(eid)
    return seq


def _fmt(ids: Iterable[int]) -> str:
    return " ".join(f"e{i}" for i in ids)


def format_member(m: SignedCircuit, g: SignedGraph | None = None) -> str:
    """One cover-file line; circuits are listed in walk order when ``g`` is given."""
    if isinstance(m, Balanced):
        return f"balanced: {_fmt(_ordered_circuit(g, m.circuit))}"
    c1, c2 = _fmt(_ordered_circuit(g, m.c1)), _fmt(_ordered_circuit(g, m.c2))
    if isinstance(m, ShortBarbell):
        return f"short: [{c1}] @v{m.joint} [{c2}]"
    path = list(m.path)
    if g is not None and path_order(g, path) is None:
        path = sorted(path)
    return f"long: [{c1}] ({_fmt(path)}) [{c2}]"


def emit_cover(f: CoverFamily, g: SignedGraph | None = None) -> str:
    return "".join(format_member(m, g) + "\n" for m in f)


def write_text(path: str | None, text: str, out: TextIO) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
