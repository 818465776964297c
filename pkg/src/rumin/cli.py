"""Command-line entry point.

Usage::

    rumin basis --n 1 --h 1
    rumin verify algebra --n 2
    rumin verify numeric-fast --grid 33 --format csv
    rumin export dc-matrix --n 1 --h 1 --out dc.json
    rumin import dc.json
    rumin poincare --n 1 --h 2 --p 4 --size 20 --format csv

Every subcommand accepts ``--config FILE``, a flat ``key = value`` file whose
keys are option names (``grid``, ``gauss``, ``lambda``, ``seed``, ...).
Options given on the command line win over the file.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import random
import sys
from pathlib import Path

from . import __version__
from .exterior import basis as monomial_basis
from .forms import OperatorMatrix, frac_str, d_c_matrix, laplacian_matrix
from .projections import e0_basis, expected_dimension
from .suites import SUITES, run_suite

EXPORTS = {"dc-matrix": d_c_matrix, "laplacian": laplacian_matrix}
POINCARE_COLUMNS = ("form-id", "h", "n", "norm_p", "norm_inf_primitive", "ratio", "residual")
CHECK_COLUMNS = ("check-id", "status", "measured", "tolerance", "anchor")


class CliError(Exception):
    pass


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    text = Path(path).read_text()
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[rumin]\n" + text)
    except configparser.Error as exc:
        raise CliError(f"bad config file {path}: {exc}") from exc
    return {k.replace("-", "_"): v for k, v in cp["rumin"].items()}


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: ("" if r.get(c) is None else r[c]) for c in columns})
    return buf.getvalue()


def _check_nh(n: int, h: int | None = None):
    if n < 1:
        raise CliError(f"n must be a positive integer, got {n}")
    if h is not None and not 0 <= h <= 2 * n + 1:
        raise CliError(f"h must lie in [0, {2 * n + 1}] for n={n}, got {h}")


# commands -------------------------------------------------------------------

def cmd_basis(args) -> int:
    _check_nh(args.n, args.h)
    b = e0_basis(args.n, args.h)
    mons = monomial_basis(args.n, args.h)
    vectors = [[{"monomial": [i + 1 for i in m], "c": frac_str(a)} for m, a in zip(mons, v) if a]
               for v in b.vectors]
    expected = expected_dimension(args.n, args.h)
    out = {"n": args.n, "h": args.h, "dim": b.dim, "expected_dim": expected,
           "gram": [frac_str(g) for g in b.gram], "vectors": vectors}
    _emit(_dumps(out), args.out)
    return 0 if b.dim == expected else 1


def cmd_verify(args) -> int:
    _check_nh(args.n)
    report = run_suite(args.suite, n=args.n, seed=args.seed, grid=args.grid, gauss=args.gauss, lam=args.lam)
    if args.format == "csv":
        _emit(_csv([c.row() for c in report.checks], CHECK_COLUMNS), args.out)
    else:
        _emit(_dumps(report.to_json()), args.out)
    return 1 if report.failed else 0


def cmd_export(args) -> int:
    _check_nh(args.n, args.h)
    if args.kind == "dc-matrix" and args.h > 2 * args.n:
        raise CliError(f"d_c vanishes on the top degree {2 * args.n + 1}")
    _emit(EXPORTS[args.kind](args.n, args.h).dumps() + "\n", args.out)
    return 0


def cmd_import(args) -> int:
    try:
        data = json.loads(Path(args.path).read_text())
        m = OperatorMatrix.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"cannot read operator matrix from {args.path}: {exc}") from exc
    kind = "laplacian" if m.source == m.target else "dc-matrix"
    fresh = EXPORTS[kind](m.n, m.source)
    same = fresh == m
    _emit(_dumps({"kind": kind, "n": m.n, "source_degree": m.source, "target_degree": m.target,
                  "shape": list(m.shape), "matches_recomputed": same}), args.out)
    return 0 if same else 1


def _parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity", "∞"):
        return math.inf
    return float(text)


def cmd_poincare(args) -> int:
    from .numerics import QuadratureSpec, poincare_ratio_estimate
    from .numerics.poincare import admissible_exponents, exact_family

    _check_nh(args.n, args.h)
    if args.h < 1:
        raise CliError("exact forms need h ≥ 1")
    p = _parse_p(args.p) if args.p is not None else float(2 * args.n + 2)
    if p not in admissible_exponents(args.n, args.h):
        raise CliError(f"p={args.p} not admissible for h={args.h}; allowed {admissible_exponents(args.n, args.h)}")
    family = exact_family(args.n, args.h, args.size, random.Random(args.seed), args.max_degree)
    spec = QuadratureSpec(args.grid or 33, args.gauss or 16)
    rep = poincare_ratio_estimate(family, args.n, args.h, p, args.lam, spec, seed=args.seed)
    rows = [{"form-id": r.form_id, "h": r.h, "n": r.n, "norm_p": r.norm_p,
             "norm_inf_primitive": r.norm_inf_primitive, "ratio": r.ratio, "residual": r.residual}
            for r in rep.rows]
    if args.format == "csv":
        _emit(_csv(rows, POINCARE_COLUMNS), args.out)
    else:
        _emit(_dumps({"n": args.n, "h": args.h, "p": repr(p), "lambda": args.lam, "grid": spec.grid,
                      "gauss": spec.gauss, "max_ratio": rep.max_ratio, "rows": rows}), args.out)
    return 0 if rep.all_finite() else 1


# parser ---------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, h: bool = False, fmt: bool = False, numeric: bool = False):
    p.add_argument("--config", help="flat key=value file supplying option defaults")
    p.add_argument("--n", type=int, default=1, help="Heisenberg group ℍⁿ (default 1)")
    if h:
        p.add_argument("--h", type=int, required=True, help="form degree")
    p.add_argument("--out", help="write output here instead of stdout")
    if fmt:
        p.add_argument("--format", choices=("json", "csv"), default="json")
    if numeric:
        p.add_argument("--grid", type=int, help="grid points per axis")
        p.add_argument("--gauss", type=int, help="Gauss nodes in the homotopy parameter")
        p.add_argument("--lambda", dest="lam", type=float, default=2.0, help="outer ball radius λ > 1")
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rumin", description="Rumin complex on Heisenberg groups.")
    parser.add_argument("--version", action="version", version=f"rumin {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="basis of E₀ʰ as JSON")
    _common(p, h=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p, fmt=True, numeric=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="export an operator matrix as JSON")
    p.add_argument("kind", choices=sorted(EXPORTS))
    _common(p, h=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("import", help="load an exported matrix and compare with a fresh computation")
    p.add_argument("path")
    p.add_argument("--config", help=argparse.SUPPRESS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("poincare", help="Poincaré ratio experiment on exact forms")
    _common(p, h=True, fmt=True, numeric=True)
    p.add_argument("--p", help="exponent: a number or 'inf' (default Q)")
    p.add_argument("--size", type=int, default=20, help="number of exact forms")
    p.add_argument("--max-degree", type=int, default=3)
    p.set_defaults(func=cmd_poincare)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv):
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    command = next((a for a in argv if not a.startswith("-")), None)
    subparsers = parser._subparsers._group_actions[0].choices  # noqa: SLF001
    if not known.config or command not in subparsers:
        return parser.parse_args(argv)
    try:
        values = read_config(known.config)
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    values = {("lam" if k == "lambda" else k): v for k, v in values.items()}
    # the file only supplies defaults, so explicit flags still win
    sub = subparsers[command]
    actions = {a.dest: a for a in sub._actions}  # noqa: SLF001
    unknown = sorted(set(values) - set(actions))
    if unknown:
        parser.error(f"unknown config keys: {', '.join(unknown)}")
    defaults = {}
    for k, v in values.items():
        conv = actions[k].type or str
        try:
            defaults[k] = conv(v)
        except ValueError:
            parser.error(f"bad value for {k!r} in config: {v!r}")
        actions[k].required = False
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"rumin: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
