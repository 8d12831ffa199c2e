"""Command-line front end: params, gens, verify and oracle subcommands.

Exit codes: 0 all claims pass, 1 some claim failed, 2 invalid parameters,
3 a resource cap was hit, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .groebner import Caps, DEFAULT_CAPS, ResourceCapExceeded, minimal_generators, rees_oracle
from .poly import Polynomial, Ring, VarSet
from .uniform import InvalidParams, labeled_rees_generators, reduction_data
from .verifier import SUITES, parse_grid, run_grid

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3, 64

_COEFF = re.compile(r"-?\d+(/\d+)?")


# ----------------------------------------------------------------------------
# JSON serialization


def polynomial_to_json(p: Polynomial) -> dict:
    n = (p.ring.nvars - 1) // 2
    if p.ring.nvars != 2 * n + 1:
        raise ValueError("only polynomials over x1..xn, y1..yn, w serialize")
    return {"vars": {"n": n}, "terms": [{"c": str(c), "e": list(m)} for m, c in p.terms]}


def polynomial_from_json(obj: dict, ring: Ring | None = None) -> Polynomial:
    """Parse a JsonPolynomial; validates lengths, coefficients and term order."""
    try:
        n = obj["vars"]["n"]
        terms = obj["terms"]
    except (KeyError, TypeError):
        raise ValueError("JsonPolynomial needs 'vars.n' and 'terms'") from None
    if ring is None:
        ring = Ring.standard(VarSet(n))
    elif ring.nvars != 2 * n + 1:
        raise ValueError(f"ring has {ring.nvars} variables, JSON has n={n}")
    parsed = []
    for t in terms:
        c, e = t["c"], t["e"]
        if not isinstance(c, str) or not _COEFF.fullmatch(c):
            raise ValueError(f"coefficient {c!r} is not a rational string")
        if len(e) != 2 * n + 1 or any(not isinstance(k, int) or k < 0 for k in e):
            raise ValueError(f"bad exponent vector {e!r}")
        c = Fraction(c)
        if c == 0:
            raise ValueError("zero coefficient")
        parsed.append((tuple(e), c))
    p = Polynomial(ring, parsed)
    if len(p.terms) != len(parsed) or [m for m, _ in p.terms] != [m for m, _ in parsed]:
        raise ValueError("terms repeated or not sorted descending")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


# ----------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _point_args(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--a", type=int, required=required)
    p.add_argument("--b", type=int, required=required)


def _cap_args(p: argparse.ArgumentParser):
    p.add_argument("--max-basis", type=int, default=DEFAULT_CAPS.max_basis)
    p.add_argument("--max-exp", type=int, default=DEFAULT_CAPS.max_exp)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rees-uniform",
                     description="Rees ideals of uniform monomial ideals: generators and certification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="reduction data and weights")
    _point_args(p)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("gens", help="list the Rees-ideal generators")
    _point_args(p)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("verify", help="run verification suites on a point or a grid file")
    _point_args(p, required=False)
    p.add_argument("--grid", help="file of 'n a b' lines")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include per-claim milliseconds")
    _cap_args(p)

    p = sub.add_parser("oracle", help="minimal generators from the elimination oracle")
    _point_args(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--basis", action="store_true", help="print the full reduced basis instead")
    _cap_args(p)
    return parser


# ----------------------------------------------------------------------------
# commands


def _params(args):
    return reduction_data(args.n, args.a, args.b)


def cmd_params(args, out) -> int:
    params = _params(args)
    w = params.weights
    data = {"params": params.as_dict(), "weights": {"x": 1, "y": w.wy, "w": w.ww}}
    if args.format == "json":
        print(_dump(data), file=out)
    else:
        for k, v in params.as_dict().items():
            print(f"{k:<5}{'-' if v is None else v}", file=out)
        print(f"{'wy':<5}{w.wy}\n{'ww':<5}{w.ww}", file=out)
    return EXIT_OK


def cmd_gens(args, out) -> int:
    params = _params(args)
    labeled = labeled_rees_generators(params)
    if args.format == "json":
        print(_dump({"params": params.as_dict(),
                     "generators": [{"label": lab, "poly": polynomial_to_json(g)} for lab, g in labeled]}),
              file=out)
    else:
        width = max(len(lab) for lab, _ in labeled)
        for lab, g in labeled:
            print(f"{lab:<{width}}  {g.to_text()}", file=out)
    return EXIT_OK


def _caps(args) -> Caps:
    return Caps(max_basis=args.max_basis, max_exp=args.max_exp)


def cmd_oracle(args, out) -> int:
    params = _params(args)
    gb = rees_oracle(params, caps=_caps(args))
    gens = list(gb.gens) if args.basis else minimal_generators(list(gb.gens), caps=_caps(args))
    key = params.ring.order.key
    gens.sort(key=lambda g: key(g.lm), reverse=True)
    if args.format == "json":
        print(_dump({"params": params.as_dict(), "generators": [polynomial_to_json(g) for g in gens]}),
              file=out)
    else:
        for g in gens:
            print(g.to_text(), file=out)
    return EXIT_OK


def _summary_table(reports, out):
    header = f"{'n':>2} {'a':>2} {'b':>2} {'case':>4} {'r':>2} {'pass':>5} {'fail':>5} {'skip':>5}  status"
    print(header, file=out)
    for rep in reports:
        pr = rep.params
        if rep.error:
            print(f"{pr['n']:>2} {pr['a']:>2} {pr['b']:>2} {'-':>4} {'-':>2} {0:>5} {0:>5} {0:>5}  "
                  f"rejected: {rep.error}", file=out)
            continue
        counts = {s: sum(c.status == s for c in rep.claims) for s in ("pass", "fail", "skipped")}
        status = "ok" if rep.ok and not rep.capped else "capped" if not rep.failed else \
            "FAIL " + ",".join(c.id for c in rep.failed)
        print(f"{pr['n']:>2} {pr['a']:>2} {pr['b']:>2} {pr['case']:>4} {pr['r']:>2} {counts['pass']:>5} "
              f"{counts['fail']:>5} {counts['skipped']:>5}  {status}", file=out)


def cmd_verify(args, out) -> int:
    if args.grid is not None:
        if any(v is not None for v in (args.n, args.a, args.b)):
            raise _UsageError("--grid excludes --n/--a/--b")
        try:
            with open(args.grid, encoding="utf-8") as fh:
                points = parse_grid(fh.read())
        except OSError as exc:
            raise _UsageError(f"cannot read grid file: {exc}") from None
        except ValueError as exc:
            raise _UsageError(f"bad grid file: {exc}") from None
    else:
        if any(v is None for v in (args.n, args.a, args.b)):
            raise _UsageError("verify needs --n, --a and --b or --grid")
        points = [(args.n, args.a, args.b)]
    if args.jobs < 1:
        raise _UsageError("--jobs must be positive")
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = run_grid(points, suites, _caps(args), jobs=args.jobs)
    if args.format == "json":
        data = [r.to_json(args.timing) for r in reports]
        print(_dump(data[0] if args.grid is None else data), file=out)
    else:
        _summary_table(reports, out)
    if any(r.failed for r in reports):
        return EXIT_FAIL
    if any(r.capped for r in reports):
        return EXIT_CAP
    if any(r.error for r in reports):
        return EXIT_PARAMS
    return EXIT_OK


class _UsageError(Exception):
    pass


COMMANDS = {"params": cmd_params, "gens": cmd_gens, "verify": cmd_verify, "oracle": cmd_oracle}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except ResourceCapExceeded as exc:
        print(f"error: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())
