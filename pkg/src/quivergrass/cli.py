"""Command-line front end.

Every command reads a quiver file in the line-based text format and prints
a deterministic plain-text report; ``--machine`` switches to key=value
lines.  Exit codes: 0 success, 1 computational refusal, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bimodule import (
    build_canonical_bimodule,
    dim_vector_e,
    dim_vector_f,
    dim_vector_m,
    embed_representation,
)
from .cells import check_smooth, poincare_polynomial
from .counting import (
    DEFAULT_CAP,
    CountSample,
    count_module_points,
    count_repvariety_points,
    grassmannian_degree_bound,
    interpolate_counts,
    repvariety_degree_bound,
)
from .errors import (
    DanglingEndpoint,
    DuplicateIdentifier,
    InputError,
    NotPolynomialCount,
    ParallelPathsUnsupported,
    ParseError,
    Refusal,
)
from .fixedpoints import enumerate_fixed_points
from .homology import graph_euler_form
from .motive import recursion_solve
from .quiver import build_path_quiver, has_parallel_paths, parse_quiver


def _vec(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")


def _load(args):
    quiver, dims = parse_quiver(_read(args.file))
    pq = build_path_quiver(quiver)
    parallel = has_parallel_paths(quiver)
    if args.mode == "tree" and parallel:
        raise ParallelPathsUnsupported(
            "--mode tree requested but the quiver has parallel paths"
        )
    if args.mode == "paths":
        pq.tree_mode = False
    return quiver, dims, pq, parallel


def _emit(args, key: str, value, human: Optional[str] = None) -> None:
    if args.machine:
        print(f"{key}={value}")
    else:
        print(human if human is not None else f"{key.replace('_', ' ')}: {value}")


def _parse_primes(spec: str) -> tuple[int, ...]:
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            q = int(tok)
        except ValueError:
            raise ParseError(f"prime list entry {tok!r} is not an integer")
        if q < 2 or any(q % p == 0 for p in range(2, int(q**0.5) + 1)):
            raise ParseError(f"{q} is not a prime")
        out.append(q)
    if len(set(out)) != len(out):
        raise ParseError("repeated prime in --q")
    if not out:
        raise ParseError("empty prime list")
    return tuple(sorted(out))


def _parse_ints(spec: str, what: str) -> tuple[int, ...]:
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        try:
            n = int(tok)
        except ValueError:
            raise ParseError(f"{what} entry {tok!r} is not an integer")
        if n < 0:
            raise ParseError(f"{what} entries must be nonnegative")
        out.append(n)
    return tuple(out)


def cmd_info(args) -> int:
    quiver, dims, pq, parallel = _load(args)
    f = dim_vector_f(pq, dims)
    e = dim_vector_e(pq, dims)
    m = dim_vector_m(pq, dims)
    _emit(args, "vertices", len(quiver.vertices))
    _emit(args, "arrows", len(quiver.arrows))
    _emit(args, "paths", len(pq.paths))
    _emit(args, "parallel_paths", "yes" if parallel else "no")
    _emit(args, "f", _vec(f), f"f = {_vec(f)}")
    _emit(args, "e", _vec(e), f"e = {_vec(e)}")
    _emit(args, "m", _vec(m), f"m = {_vec(m)}")
    if pq.tree_mode:
        dim_x = graph_euler_form(pq.graph, e, f)
        _emit(args, "dim_x", dim_x, f"dim X = {dim_x}")
    return 0


def _render_fixed_point(pq, module, fp, machine: bool) -> str:
    parts = []
    for v, idxs in enumerate(fp.vertex_labels()):
        if not idxs:
            continue
        inner = ", ".join(str(module.labels[i]) for i in idxs)
        parts.append(f"{pq.names[v]}: {{{inner}}}")
    body = "; ".join(parts) if parts else "{}"
    return body.replace(" ", "") if machine else body


def cmd_fixed_points(args) -> int:
    _, dims, pq, _ = _load(args)
    points = enumerate_fixed_points(pq, dims)
    _emit(args, "fixed_points", len(points))
    if args.list:
        module = build_canonical_bimodule(pq, dims)
        for fp in points:
            line = _render_fixed_point(pq, module, fp, args.machine)
            print(f"fp={line}" if args.machine else line)
    return 0


def cmd_poincare(args) -> int:
    _, dims, pq, _ = _load(args)
    poly = poincare_polynomial(pq, dims, seed=args.seed)
    _emit(args, "poincare", poly.pretty("q"), poly.pretty("q"))
    return 0


def cmd_count(args) -> int:
    _, dims, pq, _ = _load(args)
    module = build_canonical_bimodule(pq, dims)
    primes = _parse_primes(args.q)
    if args.gdim is not None:
        gdims = _parse_ints(args.gdim, "--gdim")
        if len(gdims) != len(pq.paths):
            raise ParseError(
                f"--gdim needs {len(pq.paths)} entries, got {len(gdims)}"
            )
        bound = repvariety_degree_bound(module, gdims)
        counter = lambda q: count_repvariety_points(module, gdims, q, args.cap)
    else:
        target = dim_vector_e(pq, dims)
        bound = grassmannian_degree_bound(module, target)
        counter = lambda q: count_module_points(module, target, q, args.cap)
    samples = []
    for q in primes:
        n = counter(q)
        samples.append(CountSample(q, n))
        if args.machine:
            print(f"count_{q}={n}")
        else:
            print(f"{q}\t{n}")
    result = interpolate_counts(samples, bound)
    if not result.ok or result.polynomial is None:
        raise NotPolynomialCount(result.reason)
    _emit(args, "polynomial", result.polynomial.pretty("q"), result.polynomial.pretty("q"))
    return 0


def cmd_motive(args) -> int:
    _, dims, pq, _ = _load(args)
    table = recursion_solve(pq, dims, cap=args.cap)
    for g, value in table.entries.items():
        if args.machine:
            print(f"M_{_vec(g)}={value.pretty()}")
        else:
            flag = "  [top]" if g == table.f else ""
            print(f"{_vec(g)}: {value.pretty()}{flag}")
    if args.machine:
        print(f"top={table.top.pretty()}")
    for line in table.diagnostics:
        _emit(args, "diagnostic", line)
    return 0


def cmd_check(args) -> int:
    _, dims, pq, _ = _load(args)
    report = check_smooth(pq, dims)
    if args.machine:
        print(f"smooth={'yes' if report.ok else 'no'}")
        print(f"tangent_dim={report.tangent_dim}")
        print(f"fixed_points={report.fixed_point_count}")
        print(f"support={report.support_count}")
        for v in report.all_violations():
            print(f"violation={v}")
    else:
        print(str(report))
    return 0 if report.ok else 1


def _parse_rep(path: str, quiver) -> dict[str, list[list[Fraction]]]:
    maps: dict[str, list[list[Fraction]]] = {}
    names = {a.name for a in quiver.arrows}
    for lineno, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] != "map" or len(toks) < 4:
            raise ParseError(f"{path}:{lineno}: expected 'map <arrow> <rows> <cols> <entries>'")
        name = toks[1]
        if name not in names:
            raise DanglingEndpoint(f"{path}:{lineno}: unknown arrow {name!r}")
        if name in maps:
            raise DuplicateIdentifier(f"{path}:{lineno}: arrow {name!r} mapped twice")
        try:
            rows, cols = int(toks[2]), int(toks[3])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad matrix shape")
        entries = toks[4:]
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ParseError(f"{path}:{lineno}: expected {rows * cols} entries")
        try:
            vals = [Fraction(tok) for tok in entries]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{path}:{lineno}: entries must be rationals")
        maps[name] = [vals[r * cols : (r + 1) * cols] for r in range(rows)]
    return maps


def cmd_embed(args) -> int:
    quiver, dims, pq, _ = _load(args)
    maps = _parse_rep(args.rep, quiver) if args.rep else {}
    point = embed_representation(pq, dims, maps)
    _emit(args, "dims", _vec(point.dims), f"dims = {_vec(point.dims)}")
    if args.list:
        for v, space in enumerate(point.spaces):
            if space.dim == 0:
                continue
            rows = "; ".join("(" + ", ".join(str(x) for x in r) + ")" for r in space.rows)
            line = f"{pq.names[v]}: {rows}"
            print(f"space={line.replace(' ', '')}" if args.machine else line)
    return 0


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="quivergrass",
        description="Exact invariants of Grassmannians of submodules over path algebras.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="quiver file (vertex/arrow/dim lines)")
        p.add_argument("--mode", choices=("auto", "tree", "paths"), default="auto")
        p.add_argument("--machine", action="store_true", help="key=value output")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("info", help="sizes, dimension vectors, dim X")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("fixed-points", help="count (and list) torus fixed points")
    common(p)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_fixed_points)

    p = sub.add_parser("poincare", help="cell-decomposition Poincare polynomial")
    common(p)
    p.add_argument("--seed", type=int, default=0, help="cocharacter seed")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("count", help="point counts over finite fields + interpolation")
    common(p)
    p.add_argument("--q", default="2,3,5,7,11", help="comma-separated primes")
    p.add_argument("--gdim", default=None, help="count bound representations of this dimension vector instead")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("motive", help="framed moduli motives via the recursion")
    common(p)
    p.set_defaults(func=cmd_motive)

    p = sub.add_parser("check", help="smoothness certificate")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("embed", help="embed a representation as a submodule point")
    common(p)
    p.add_argument("--rep", default=None, help="matrix file: 'map <arrow> <rows> <cols> <entries>'")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_embed)

    return top


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
