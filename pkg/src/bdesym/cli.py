"""Command-line front end: ``bdesym <command> ...``.

Exit status is 0 for success or a true answer, 1 for a false answer or a
failed verification, 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from .equivariance import (
    BDE,
    check_equivariance,
    detect_symmetries,
    discriminant,
    morse_symmetry_candidates,
    morse_value,
)
from .errors import BDEError, NotMorse
from .invariants import compare_to_table, general_form
from .parsing import format_symmetry_group, parse_group

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def load_bde(text: str) -> BDE:
    """Inline JSON object or a path to a JSON file with keys a, b (or b_total), c."""
    source = text.strip()
    if not source.startswith("{"):
        path = Path(source)
        if not path.is_file():
            raise UsageError(f"--bde: {text!r} is neither inline JSON nor a readable file")
        source = path.read_text()
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--bde: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict) or not {"a", "c"} <= doc.keys() or not ({"b", "b_total"} & doc.keys()):
        raise UsageError('--bde needs keys "a", "b" (or "b_total") and "c"')
    return BDE.from_mapping(doc)


def _instantiate(text: str, n: Optional[int]) -> str:
    if n is None:
        return text
    if n % 2 == 0:
        text = text.replace("n/2", str(n // 2))
    elif "n/2" in text:
        raise UsageError(f"{text} needs an even n")
    return text.replace("n", str(n))


def _domain(text: Optional[str]):
    if text is None:
        return {}
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--domain expects x0,x1,y0,y1")
    try:
        x0, x1, y0, y1 = (Fraction(p.strip()) for p in parts)
    except ValueError as exc:
        raise UsageError(f"--domain: {exc}") from exc
    return {"xmin": x0, "xmax": x1, "ymin": y0, "ymax": y1}


def _seeds(text: Optional[str]):
    if text is None:
        return {}
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError as exc:
        raise UsageError("--seeds expects NxM") from exc
    return {"seeds": (nx, ny)}


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _triple_dict(t):
    return {"a": str(t[0]), "b": str(t[1]), "c": str(t[2])}


# commands -----------------------------------------------------------------

def cmd_check(args) -> int:
    e, sg = load_bde(args.bde), parse_group(args.group)
    ok = check_equivariance(e, sg)
    _emit(args, {"bde": _triple_dict(e.triple()), "group": str(sg), "equivariant": ok},
          [f"equivariant: {'true' if ok else 'false'}"])
    return EXIT_OK if ok else EXIT_FALSE


def cmd_detect(args) -> int:
    e = load_bde(args.bde)
    rep = detect_symmetries(e)
    payload = rep.to_dict()
    payload["discriminant"] = str(discriminant(e))
    _emit(args, payload, [str(rep.group), f"discriminant: {discriminant(e)}"])
    return EXIT_OK


def cmd_generators(args) -> int:
    sg = parse_group(_instantiate(args.group, args.n))
    gf = general_form(sg)
    payload = {
        "group": str(sg),
        "generators": [_triple_dict(t) for t in gf.rows],
        "hilbert_basis": [str(p) for p in gf.basis.real()],
    }
    _emit(args, payload, gf.lines())
    return EXIT_OK


def cmd_general_form(args) -> int:
    sg = parse_group(_instantiate(args.group, args.n))
    gf = general_form(sg)
    k = len(gf.rows)
    sums = []
    for slot, name in enumerate("abc"):
        terms = [f"({t[slot]})*p{i + 1}" for i, t in enumerate(gf.rows) if not t[slot].is_zero()]
        sums.append(f"{name} = {' + '.join(terms) if terms else '0'}")
    ring = f"p1..p{k} invariant; invariant ring generated by {gf.basis}"
    payload = {
        "group": str(sg),
        "a": sums[0].split(" = ", 1)[1],
        "b": sums[1].split(" = ", 1)[1],
        "c": sums[2].split(" = ", 1)[1],
        "generators": [_triple_dict(t) for t in gf.rows],
        "hilbert_basis": [str(p) for p in gf.basis.real()],
    }
    _emit(args, payload, [str(sg)] + sums + [ring])
    return EXIT_OK


def _table_targets(args):
    from .table import ROWS, TABLE

    if args.row is None:
        for row in TABLE:
            ns = [None] if row.min_n is None else [row.min_n, row.min_n + 2]
            for n in ns:
                yield row.symmetry_group(n)
        return
    if args.row in ROWS:
        row = ROWS[args.row]
        if row.min_n is None:
            yield row.symmetry_group()
        else:
            yield row.symmetry_group(args.n if args.n is not None else row.min_n)
        return
    yield parse_group(_instantiate(args.row, args.n))


def cmd_table_verify(args) -> int:
    reports = [compare_to_table(sg) for sg in _table_targets(args)]
    lines = []
    for r in reports:
        tag = f"{r.row}" + (f" n={r.n}" if r.n is not None else "")
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {tag} ({len(r.emitted)} generators, degree bound {r.bound})")
    ok = all(r.ok for r in reports)
    _emit(args, {"ok": ok, "rows": [r.to_dict() for r in reports]}, lines)
    return EXIT_OK if ok else EXIT_FALSE


def _config(args):
    from .render import RenderConfig

    kw = {}
    kw.update(_domain(args.domain))
    kw.update(_seeds(getattr(args, "seeds", None)))
    if getattr(args, "step", None) is not None:
        kw["h"] = args.step
    if getattr(args, "max_steps", None) is not None:
        kw["max_steps"] = args.max_steps
    if getattr(args, "grid", None) is not None:
        kw["grid"] = args.grid
    if getattr(args, "eps", None) is not None:
        kw["eps"] = args.eps
    return RenderConfig(**kw)


def cmd_render(args) -> int:
    from .render import emit_json, emit_svg, integrate_configuration, tangency_residuals

    e, cfg = load_bde(args.bde), _config(args)
    plot = integrate_configuration(e, cfg)
    emit_svg(plot, args.out)
    if args.json:
        emit_json(plot, args.json)
    res = tangency_residuals(e, plot)
    worst = float(res.max()) if len(res) else 0.0
    payload = {
        "svg": str(args.out),
        "json": str(args.json) if args.json else None,
        "trajectories": len(plot.trajectories),
        "points": int(sum(len(t.points) for t in plot.trajectories)),
        "discriminant_pieces": len(plot.discriminant),
        "max_tangency_residual": worst,
    }
    _emit(args, payload, [f"{k}: {v}" for k, v in payload.items()])
    return EXIT_OK if worst <= 1e-6 else EXIT_FALSE


def cmd_verify_theorem(args) -> int:
    from .render import verify_theorem

    e, sg = load_bde(args.bde), parse_group(args.group)
    if not check_equivariance(e, sg):
        _emit(args, {"group": str(sg), "ok": False, "error": "not equivariant"},
              [f"the equation is not {sg}-equivariant"])
        return EXIT_FALSE
    rep = verify_theorem(e, sg, _config(args), samples=args.samples, tol=args.tol)
    lines = [
        f"{'ok  ' if c.ok else 'FAIL'} {c.element}: lambda={c.estimated:+d} det*eta={c.det * c.eta:+d}"
        for c in rep.checks
    ]
    lines.append(f"ker lambda = {rep.kernel_name}")
    lines.append(f"rotation-only intersection with ker eta: {'yes' if rep.corollary_ok else 'no'}")
    _emit(args, rep.to_dict(), lines)
    return EXIT_OK if rep.ok else EXIT_FALSE


def cmd_morse(args) -> int:
    e = load_bde(args.bde)
    value = morse_value(e)
    try:
        cands = morse_symmetry_candidates(e)
    except NotMorse:
        _emit(args, {"morse_value": str(value), "morse": False, "candidates": []},
              [f"morse value: {value}", "not of Morse type"])
        return EXIT_FALSE
    names = [format_symmetry_group(c) for c in cands]
    _emit(args, {"morse_value": str(value), "morse": True, "candidates": names},
          [f"morse value: {value}", "candidates: " + ", ".join(names)])
    return EXIT_OK


# wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="bdesym", description="Symmetries of binary differential equations.")
    top.add_argument("--format", choices=("text", "json"), default="text")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        p.set_defaults(func=fn)
        return p

    def render_opts(p):
        p.add_argument("--domain", help="x0,x1,y0,y1")
        p.add_argument("--seeds", help="NxM seed grid")
        p.add_argument("--step", type=float)
        p.add_argument("--max-steps", type=int, dest="max_steps")
        p.add_argument("--grid", type=int)
        p.add_argument("--eps", type=float)

    p = add("check", cmd_check, "test equivariance under a group")
    p.add_argument("--bde", required=True)
    p.add_argument("--group", required=True)

    p = add("detect", cmd_detect, "find the largest symmetry group")
    p.add_argument("--bde", required=True)

    for name, fn, text in (
        ("generators", cmd_generators, "module generators, one triple per line"),
        ("general-form", cmd_general_form, "the general equivariant form"),
    ):
        p = add(name, fn, text)
        p.add_argument("--group", required=True)
        p.add_argument("--n", type=int, help="value substituted for n (and n/2) in the group")

    p = add("table-verify", cmd_table_verify, "compare emitted generators with the catalog")
    p.add_argument("--row")
    p.add_argument("--n", type=int)

    p = add("render", cmd_render, "draw both foliations and the discriminant")
    p.add_argument("--bde", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json")
    render_opts(p)

    p = add("verify-theorem", cmd_verify_theorem, "sample the foliation swap sign on every element")
    p.add_argument("--bde", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-9)
    render_opts(p)

    p = add("morse", cmd_morse, "Morse value of the discriminant and candidate groups")
    p.add_argument("--bde", required=True)
    return top


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return EXIT_USAGE
    except (BDEError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
