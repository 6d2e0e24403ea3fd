"""Command-line front end.

Exit codes: 0 success / match, 1 usage or I/O error, 2 verification
mismatch, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cache import ClosedFormCache, default_cache_path
from .eisenstein_table import eisenstein_poly, phi_poly
from .errata import errata_report
from .graded_poly import GradedPoly, human_factored, latex_scale, render_latex_integer
from .theta1_derivatives import Theta1ClosedForm, theta1_closed_form
from .theta4_derivatives import IdenticallyZero, Theta4ClosedForm, theta4_closed_form
from .verifier import VerificationReport, verify

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_INTERNAL = 0, 1, 2, 3
FORMATS = ("human", "json", "latex")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means "mismatch" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


def _pos(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


# -- closed forms through the cache ------------------------------------------

def _theta1(cache: ClosedFormCache, nu: int) -> Theta1ClosedForm:
    data = cache.get_or_compute(f"theta1:{nu}", lambda: theta1_closed_form(nu).to_json())
    return Theta1ClosedForm.from_json(data)


def _theta4(cache: ClosedFormCache, nu: int) -> Theta4ClosedForm:
    data = cache.get_or_compute(f"theta4:{nu}", lambda: theta4_closed_form(nu).to_json())
    return Theta4ClosedForm.from_json(data)


def _phi(cache: ClosedFormCache, k: int) -> GradedPoly:
    data = cache.get_or_compute(f"phi:{k}", lambda: _phi_json(k, phi_poly(k)))
    return GradedPoly.from_json(data["poly"])


def _eis(cache: ClosedFormCache, w: int) -> GradedPoly:
    data = cache.get_or_compute(f"eis:{w}", lambda: _eis_json(w, eisenstein_poly(w)))
    return GradedPoly.from_json(data["poly"])


def _phi_json(k: int, poly: GradedPoly) -> dict:
    return {"kind": "phi", "k": k, "poly": poly.to_json()}


def _eis_json(w: int, poly: GradedPoly) -> dict:
    return {"kind": "eisenstein", "weight": w, "poly": poly.to_json()}


def _render_named(name_human: str, name_latex: str, poly: GradedPoly, fmt: str) -> str:
    if fmt == "human":
        return f"{name_human} = {human_factored(poly)}"
    scale, prim = poly.content()
    inner = render_latex_integer(prim)
    body = inner if scale == 1 else f"{latex_scale(scale)}({inner})"
    return f"{name_latex}={body}"


# -- commands ----------------------------------------------------------------

def cmd_theta1(args, cache: ClosedFormCache) -> int:
    print(_theta1(cache, args.nu).render(args.format))
    return EXIT_OK


def cmd_theta4(args, cache: ClosedFormCache) -> int:
    if args.order is not None:
        if args.order % 2:
            print(IdenticallyZero(args.order).render(args.format))
            return EXIT_OK
        nu = args.order // 2
    elif args.nu is not None:
        nu = args.nu
    else:
        raise UsageError("theta4 needs --nu or --order")
    if nu == 0:
        if args.format == "json":
            print(json.dumps({"kind": "theta4", "nu": 0, "prefactor": "theta4_at_0",
                              "poly": GradedPoly.constant(1).to_json()}))
        else:
            print("θ₄(0) itself; ratio 1")
        return EXIT_OK
    print(_theta4(cache, nu).render(args.format))
    return EXIT_OK


def cmd_phi(args, cache: ClosedFormCache) -> int:
    k = args.k
    if k < 1 or k % 2 == 0:
        raise UsageError(f"--k must be odd and >= 1, got {k}")
    poly = _phi(cache, k)
    if args.format == "json":
        print(json.dumps(_phi_json(k, poly)))
    else:
        print(_render_named(f"Φ_{k}", f"\\Phi_{{{k}}}", poly, args.format))
    return EXIT_OK


def cmd_eisenstein(args, cache: ClosedFormCache) -> int:
    w = args.weight
    if w < 2 or w % 2:
        raise UsageError(f"--weight must be even and >= 2, got {w}")
    poly = _eis(cache, w)
    if args.format == "json":
        print(json.dumps(_eis_json(w, poly)))
    else:
        print(_render_named(f"E_{w}", f"E_{{{w}}}", poly, args.format))
    return EXIT_OK


def build_table(max_nu: int, window: int, cache: ClosedFormCache) -> list[dict]:
    rows: list[dict] = []

    def add(obj: dict, report: VerificationReport) -> None:
        rows.append({**obj, "verification": report.to_json()})

    for nu in range(max_nu + 1):
        add(_theta1(cache, nu).to_json(), verify("theta1", 2 * nu + 1, window))
    for nu in range(1, max_nu + 1):
        add(_theta4(cache, nu).to_json(), verify("theta4", 2 * nu, window))
    for k in range(1, 2 * max_nu + 2, 2):
        add(_phi_json(k, _phi(cache, k)), verify("phi", k, window))
    for w in range(2, 2 * max_nu + 3, 2):
        add(_eis_json(w, _eis(cache, w)), verify("eisenstein", w, window))
    return rows


def cmd_table(args, cache: ClosedFormCache) -> int:
    rows = build_table(args.max_nu, args.window, cache)
    text = json.dumps(rows, indent=2) + "\n"
    if args.out is None or str(args.out) == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"wrote {len(rows)} closed forms to {args.out}")
    return EXIT_OK if all(r["verification"]["verdict"] == "match" for r in rows) else EXIT_MISMATCH


def cmd_verify(args, cache: ClosedFormCache) -> int:
    try:
        report = verify(args.target, args.order, args.window)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(json.dumps(report.to_json()))
    else:
        line = f"{report.target} order {report.order} window {report.window}: {report.verdict}"
        if report.first_mismatch is not None:
            m = report.first_mismatch.to_json()
            line += f" at q^({m['exponent']}): {m['lhs']} != {m['rhs']}"
        print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_errata(args, cache: ClosedFormCache) -> int:
    print(json.dumps([f.to_json() for f in errata_report(args.window)], indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", type=Path, default=None, help="cache file (default: $THETAKIT_CACHE or user cache dir)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("-f", "--format", choices=FORMATS, default="human")

    parser = _Parser(prog="thetakit", description="Closed forms for theta-function derivatives at the origin.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("theta1", parents=[common], help="theta_1^(2nu+1)(0) in eta^3 and P, Q, R")
    p.add_argument("-n", "--nu", type=_nonneg, required=True)
    p.set_defaults(func=cmd_theta1)

    p = sub.add_parser("theta4", parents=[common], help="theta_4^(2nu)(0) / theta_4(0)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-n", "--nu", type=_nonneg)
    g.add_argument("--order", type=_pos, help="derivative order; odd orders are identically zero")
    p.set_defaults(func=cmd_theta4)

    p = sub.add_parser("phi", parents=[common], help="Phi_k in Q and R (P for k = 1)")
    p.add_argument("-k", "--k", type=int, required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("eisenstein", parents=[common], help="E_w in Q and R")
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_eisenstein)

    p = sub.add_parser("table", parents=[common], help="all closed forms up to nu, with verification")
    p.add_argument("-n", "--max-nu", type=_nonneg, required=True)
    p.add_argument("-o", "--out", type=Path, default=None)
    p.add_argument("-w", "--window", type=_pos, default=200)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check one closed form against the q-series oracle")
    p.add_argument("--target", choices=("theta1", "theta4", "phi", "eisenstein"), required=True)
    p.add_argument("--order", type=int, required=True,
                   help="derivative order (theta1/theta4), odd index (phi) or weight (eisenstein)")
    p.add_argument("-w", "--window", type=_pos, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("errata", parents=[common], help="printed values refuted by the oracle, as JSON")
    p.add_argument("-w", "--window", type=_pos, default=200)
    p.set_defaults(func=cmd_errata)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    cache = ClosedFormCache(None if args.no_cache else (args.cache or default_cache_path()))
    try:
        code = args.func(args, cache)
    except UsageError as exc:
        print(f"thetakit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"thetakit: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    cache.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
