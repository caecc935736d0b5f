"""Command-line entry point: analyze, cover, verify, bound, gen, bench.

Exit codes: 0 success, 1 property violation, 2 input error, 3 size or
search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from fractions import Fraction
from typing import Sequence

from .config import SizeLimitExceeded
from .engine import BoundReport, NotSBridgeless, bound_report_for, exact_scc_signed, scc_upper_cover, verify_cover
from .generators import GenerationFailed, generate_instance
from .graph import ConstructionDefect, GraphError
from .io import emit_cover, emit_instance, read_cover, read_instance, write_text
from .structure import classify_bridges, is_g_bridgeless, is_s_bridgeless
from .switching import normalize

OK, VIOLATION, INPUT_ERROR, LIMIT = 0, 1, 2, 3


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _ids(ids) -> str:
    return " ".join(f"e{i}" for i in sorted(ids)) or "-"


def _bound_lines(b: BoundReport) -> list[str]:
    return [
        f"E={b.E} V={b.V} eps_n={b.eps_n} k={b.k}",
        f"z1={b.z1} z2={b.z2}",
        f"bound_general={b.bound_general}",
        f"bound_even={b.bound_even}",
        f"corollary_bound={b.corollary_bound}",
        f"chained_bound={b.chained_bound}",
    ]


def cmd_analyze(args) -> int:
    g = read_instance(args.file)
    gn, cert = normalize(g)
    cat = classify_bridges(gn)
    sb = is_s_bridgeless(g)
    gb = is_g_bridgeless(g)
    if args.json:
        print(json.dumps(_jsonable({
            "eps_n": cert.epsilon_n,
            "switch": cert.optimal_switch,
            "negative_after_switch": cert.resulting_negative_edges,
            "bridges": cat.bridges,
            "B_s": cat.s_bridges,
            "B_g": cat.g_class_bridges,
            "S": cat.partner_sets,
            "s_bridgeless": bool(sb),
            "uncovered": sb.uncovered,
            "g_bridgeless": gb,
        })))
        return OK
    print(f"vertices {g.vertex_count} edges {g.edge_count}")
    print(f"eps_n {cert.epsilon_n}")
    print(f"switch {' '.join(f'v{v}' for v in sorted(cert.optimal_switch)) or '-'}")
    print(f"negative after switch {_ids(cert.resulting_negative_edges)}")
    print(f"bridges {_ids(cat.bridges)}")
    print(f"B_s {_ids(cat.s_bridges)}")
    print(f"B_g {_ids(cat.g_class_bridges)}")
    for e, s in cat.partner_sets.items():
        print(f"S(e{e}) {_ids(s)}")
    print(f"s-bridgeless {'yes' if sb else 'no'}" + ("" if sb else f" (uncovered {_ids(sb.uncovered)})"))
    print(f"g-bridgeless {'yes' if gb else 'no'}")
    return OK


def cmd_cover(args) -> int:
    g = read_instance(args.file)
    bounds = bound_report_for(g)
    if args.oracle:
        fam = exact_scc_signed(g)
        if fam is None:
            print("# no signed circuit cover exists", file=sys.stderr)
            return VIOLATION
        header = [f"length={fam.length}", "backend=oracle"]
    else:
        res = scc_upper_cover(g)
        fam, bounds = res.cover, res.bounds
        header = [f"length={res.length}", "backend=construction"]
    if args.json:
        print(json.dumps(_jsonable({
            "length": fam.length,
            "members": [{"kind": m.kind, "edges": m.edges} for m in fam],
            "bounds": asdict(bounds),
        })))
        return OK
    text = "".join(f"# {line}\n" for line in header + _bound_lines(bounds)) + emit_cover(fam, g)
    write_text(args.out, text, sys.stdout)
    return OK


def _parse_k(text: str | None):
    if text is None:
        return None
    try:
        return {int(t) for t in text.split(",") if t.strip()}
    except ValueError:
        raise GraphError(f"bad multiplicity set {text!r}") from None


def cmd_verify(args) -> int:
    g = read_instance(args.file)
    fam = read_cover(args.cover)
    rep = verify_cover(g, fam, _parse_k(args.k))
    if args.json:
        print(json.dumps(_jsonable(asdict(rep))))
        return OK if rep else VIOLATION
    print("valid" if rep else "invalid")
    print(f"length {rep.length}")
    for idx, reasons in rep.invalid_members:
        print(f"member {idx}: {'; '.join(reasons)}")
    if rep.uncovered:
        print(f"uncovered {_ids(rep.uncovered)}")
    if rep.outside_k:
        print(f"multiplicity outside K {_ids(rep.outside_k)}")
    for eid, k in rep.multiplicity.items():
        print(f"e{eid} {k}")
    return OK if rep else VIOLATION


def cmd_bound(args) -> int:
    b = bound_report_for(read_instance(args.file))
    if args.json:
        print(json.dumps(_jsonable(asdict(b))))
    else:
        print("\n".join(_bound_lines(b)))
    return OK


def cmd_gen(args) -> int:
    g = generate_instance(
        args.n, args.m, args.neg, args.seed,
        s_bridgeless=args.s_bridgeless,
        g_bridgeless_even=args.g_bridgeless_even,
        min_eps=args.min_eps,
        loop_prob=args.loop_prob,
        attempts=args.attempts,
    )
    write_text(args.out, emit_instance(g), sys.stdout)
    return OK


def _bench_instance(job: tuple) -> tuple[int, str]:
    """One corpus instance; returns (status, line) so workers never share state."""
    idx, seed, n_max, m_max, neg_max, g_even, loop_prob = job
    rng = random.Random(seed)
    try:
        g = None
        for _ in range(100):
            n = rng.randint(2, n_max)
            m = rng.randint(n, max(n, m_max))
            neg = rng.randint(2, max(2, min(m, neg_max)))
            try:
                g = generate_instance(n, m, neg, rng.randrange(2**32), s_bridgeless=True,
                                      g_bridgeless_even=g_even, min_eps=2, loop_prob=loop_prob, attempts=50)
                break
            except GenerationFailed:
                continue
        if g is None:
            return LIMIT, f"{idx} skip generation failed"
        res = scc_upper_cover(g, assume_s_bridgeless=True)
        b = res.bounds
        target = b.bound_even if g_even else b.bound
        bad = []
        if res.length > target:
            bad.append(f"bound {target}")
        if res.length > b.corollary_bound:
            bad.append(f"corollary {b.corollary_bound}")
        if bad:
            return VIOLATION, f"{idx} FAIL length={res.length} exceeds " + ", ".join(bad)
        return OK, f"{idx} ok length={res.length} bound={target} slack={target - res.length}"
    except SizeLimitExceeded as exc:
        return LIMIT, f"{idx} skip {exc}"
    except (ConstructionDefect, GraphError) as exc:
        return VIOLATION, f"{idx} FAIL {type(exc).__name__}: {exc}"


def cmd_bench(args) -> int:
    jobs = [
        (i, args.seed * 1_000_003 + i, args.n_max, args.m_max, args.neg_max, args.g_bridgeless_even, args.loop_prob)
        for i in range(args.count)
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_instance, jobs, chunksize=8))
    else:
        results = [_bench_instance(j) for j in jobs]
    worst = OK
    for status, line in results:
        print(line)
        if status == VIOLATION:
            worst = VIOLATION
        elif status == LIMIT and worst == OK:
            worst = LIMIT
    passed = sum(1 for s, _ in results if s == OK)
    print(f"# {passed}/{len(results)} ok")
    return worst


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedcover", description="Short signed circuit covers of signed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="negativeness, bridges and cut structure")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("cover", help="construct a signed circuit cover")
    c.add_argument("file")
    c.add_argument("--oracle", action="store_true", help="exact minimum cover by exhaustive search")
    c.add_argument("--out", help="write the cover file here instead of stdout")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_cover)

    v = sub.add_parser("verify", help="check a cover file against an instance")
    v.add_argument("file")
    v.add_argument("--cover", required=True)
    v.add_argument("--k", help="allowed multiplicities, e.g. 1,2")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", help="length bounds only")
    b.add_argument("file")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    g = sub.add_parser("gen", help="random instance by rejection sampling")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--neg", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--s-bridgeless", action="store_true")
    g.add_argument("--g-bridgeless-even", action="store_true")
    g.add_argument("--min-eps", type=int, default=0)
    g.add_argument("--loop-prob", type=float, default=0.0)
    g.add_argument("--attempts", type=int, default=10_000)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("bench", help="generate a corpus and check every bound")
    r.add_argument("--count", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--n-max", type=int, default=10)
    r.add_argument("--m-max", type=int, default=20)
    r.add_argument("--neg-max", type=int, default=6)
    r.add_argument("--g-bridgeless-even", action="store_true")
    r.add_argument("--loop-prob", type=float, default=0.0)
    r.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSBridgeless as exc:
        print(f"error: not s-bridgeless: {exc}", file=sys.stderr)
        return VIOLATION
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return LIMIT
    except GenerationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return LIMIT
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except ConstructionDefect as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION


if __name__ == "__main__":
    sys.exit(main())
