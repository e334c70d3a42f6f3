"""Command line surface.

Subcommands: tension, classify, generate, oracle, lemma-check, verify-paper.
Exit codes are a stable contract: 0 success, 1 check failure, 2 expression
parse error, 3 algebra closure error, 4 usage or domain error.  The default
operator convention comes from POLYHARM_CONVENTION (metric when unset).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import (
    ClosureError,
    DomainError,
    EXIT_CHECK_FAILED,
    EXIT_CLOSURE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    ParseError,
    UsageError,
)
from .families import (
    FAMILIES,
    AnsatzSystem,
    generate_kernel,
    primitive_normalized,
    log_biharmonic,
    nil_biharmonic12,
    nil_harmonic,
    product_r_harmonic,
    separable_product,
    sl2_biharmonic6,
    sl2_harmonic,
    sol_axis_family,
    sol_h2h3,
    sol_mixed_harmonic,
    sol_tower,
)
from .geometries import (
    CONVENTIONS,
    ProductGeometry,
    by_id,
    classify,
    disc_times_line,
    iterated_tension,
    nil,
    sl2,
    sol,
    sphere_times_line,
)
from .linalg import primitive_rows
from .oracle import OracleConfig, conformal_factor_ratio, cross_validate
from .parser import parse, parse_scalar
from .verify import SuiteContext, lemma_report, run_suite

_CONFORMAL_IDS = ("h2", "s2p", "h2xr", "s2pxr")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with 4, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_convention() -> str:
    value = os.environ.get("POLYHARM_CONVENTION", "metric")
    return value if value in CONVENTIONS else "metric"


def _build_parser() -> _Parser:
    parser = _Parser(prog="polyharm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, geometry=True):
        if geometry:
            p.add_argument("--geometry", "-g", default="sol", help="geometry id")
        p.add_argument(
            "--convention",
            choices=CONVENTIONS,
            default=_default_convention(),
            help="operator convention for the conformal charts",
        )
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("tension", help="print the chain f, tau f, ..., tau^r f")
    common(p)
    p.add_argument("expression")
    p.add_argument("-r", type=int, default=1, help="number of tension applications")

    p = sub.add_parser("classify", help="determine the properness order")
    common(p)
    p.add_argument("expression")
    p.add_argument("--r-max", type=int, default=8)

    p = sub.add_parser("generate", help="build a named family or an ansatz kernel")
    common(p)
    p.add_argument("family", nargs="?", help=f"one of: {', '.join(sorted(FAMILIES))}, product.generic")
    p.add_argument("--params", default="", help="comma-separated exact scalars")
    p.add_argument("--hol", default="", help="holomorphic coefficient list")
    p.add_argument("--antihol", default="", help="antiholomorphic coefficient list")
    p.add_argument("-n", type=int, default=None, help="degree for sol.axis / sol.mixed")
    p.add_argument("-r", type=int, default=1, help="tower order / ansatz kernel power")
    p.add_argument("--axis", choices=("x", "y"), default="x")
    p.add_argument("--ansatz", default=None, help="comma-separated candidate terms")
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--g1", default=None, help="first factor id for product.generic")
    p.add_argument("--f1", default=None, help="first factor expression")
    p.add_argument("--g2", default=None, help="second factor id for product.generic")
    p.add_argument("--f2", default=None, help="second factor expression")

    p = sub.add_parser("oracle", help="finite-difference cross-validation sweep")
    common(p)
    p.add_argument("expression")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("lemma-check", help="randomized product-formula property test")
    p.add_argument("-n", type=int, default=4, help="highest tension power (<= 4)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser(
        "verify-paper", help="run the full suite of reference identities"
    )
    p.add_argument(
        "--convention",
        choices=CONVENTIONS + ("both",),
        default="both",
    )
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--skip-oracle", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _report(command: str, **fields) -> dict:
    base = {
        "command": command,
        "geometry": None,
        "convention": None,
        "input": None,
        "chain": None,
        "order": None,
        "residuals": None,
        "status": "ok",
    }
    base.update(fields)
    return base


def _cmd_tension(args) -> int:
    geometry = by_id(args.geometry, args.convention)
    f = parse(args.expression, geometry.atoms)
    chain = iterated_tension(geometry, f, args.r)
    printed = [str(e) for e in chain]
    payload = _report(
        "tension",
        geometry=geometry.name,
        convention=args.convention,
        input=args.expression,
        chain=printed,
    )
    _emit(args, payload, [f"tau^{k}: {text}" for k, text in enumerate(printed)])
    return EXIT_OK


def _cmd_classify(args) -> int:
    geometry = by_id(args.geometry, args.convention)
    f = parse(args.expression, geometry.atoms)
    report = classify(geometry, f, args.r_max)
    printed = [str(e) for e in report.chain]
    payload = _report(
        "classify",
        geometry=geometry.name,
        convention=args.convention,
        input=args.expression,
        chain=printed,
        order=report.order,
        status="ok" if report.order is not None else "exceeds-bound",
    )
    lines = [f"input: {printed[0]}", f"result: {report.describe()}"]
    lines += [f"tau^{k}: {text}" for k, text in enumerate(printed)]
    _emit(args, payload, lines)
    return EXIT_OK


def _split_scalars(text: str, width: int | None = None, pad: bool = True) -> list:
    values = [parse_scalar(s.strip()) for s in text.split(",") if s.strip()]
    if width is not None:
        if len(values) > width:
            raise UsageError(f"expected at most {width} parameters")
        if pad:
            values += [parse_scalar("0")] * (width - len(values))
    return values


def _build_family(args):
    fid = args.family
    params = args.params
    if fid == "sol.tower":
        vals = _split_scalars(params or "1", 8)
        return sol(), sol_tower(args.r, vals[:4], vals[4:])
    if fid == "sol.axis":
        if args.n is None:
            raise UsageError("sol.axis needs -n")
        return sol(), sol_axis_family(args.n, args.axis)
    if fid == "sol.mixed":
        if args.n is None:
            raise UsageError("sol.mixed needs -n")
        vals = _split_scalars(params or "1,1,1,0,1,0", 6)
        return sol(), sol_mixed_harmonic(args.n, *vals)
    if fid == "sol.h2h3":
        vals = _split_scalars(params or "1,1,1,1", 4)
        return sol(), sol_h2h3(*vals)
    if fid == "nil.f1":
        vals = _split_scalars(params or "1", 2)
        return nil(), nil_harmonic(vals, _split_scalars(args.hol), _split_scalars(args.antihol))
    if fid == "nil.f2":
        return nil(), nil_biharmonic12(_split_scalars(params, 12))
    if fid == "sl2.f1":
        vals = _split_scalars(params or "1", 2)
        return sl2(), sl2_harmonic(vals, _split_scalars(args.hol), _split_scalars(args.antihol))
    if fid == "sl2.f2":
        return sl2(), sl2_biharmonic6(_split_scalars(params, 6))
    if fid in ("h2r.separable", "s2r.separable"):
        builder = disc_times_line if fid.startswith("h2r") else sphere_times_line
        g = builder(args.convention)
        return g, separable_product(
            g, _split_scalars(args.hol or "1"), _split_scalars(args.antihol), _split_scalars(params or "0,0,1", 4)
        )
    if fid in ("h2r.logxp", "s2r.logxp"):
        builder = disc_times_line if fid.startswith("h2r") else sphere_times_line
        g = builder(args.convention)
        return g, log_biharmonic(g, _split_scalars(params or "1", 2))
    if fid == "product.generic":
        if not all((args.g1, args.f1, args.g2, args.f2)):
            raise UsageError("product.generic needs --g1 --f1 --g2 --f2")
        g1 = by_id(args.g1, args.convention)
        g2 = by_id(args.g2, args.convention)
        g = ProductGeometry(g1, g2)
        f1 = parse(args.f1, g.atoms)
        f2 = parse(args.f2, g.atoms)
        return g, product_r_harmonic(g, f1, f2, args.r_max)
    raise UsageError(f"unknown family id {fid!r}")


def _cmd_generate(args) -> int:
    if args.ansatz is not None:
        geometry = by_id(args.geometry, args.convention)
        basis = [
            parse(piece.strip(), geometry.atoms)
            for piece in args.ansatz.split(",")
            if piece.strip()
        ]
        system = AnsatzSystem.build(geometry, basis, order=args.r)
        kernel = generate_kernel(system)
        matrix_rows = [
            [str(v) for v in row] for row in primitive_rows(system.matrix)
        ]
        kernel_info = [
            {
                "expr": str(primitive_normalized(f)),
                "order": classify(geometry, f, args.r_max).order,
            }
            for f in kernel
        ]
        payload = _report(
            "generate",
            geometry=geometry.name,
            convention=args.convention,
            input=args.ansatz,
            matrix=matrix_rows,
            kernel=kernel_info,
            order=kernel_info[0]["order"] if kernel_info else None,
        )
        lines = ["basis: " + ", ".join(str(b) for b in system.basis)]
        lines.append("matrix (rows scaled to primitive integers):")
        lines += ["  [" + ", ".join(row) + "]" for row in matrix_rows]
        if kernel:
            for i, info in enumerate(kernel_info):
                lines.append(f"kernel[{i}]: {info['expr']}  (order {info['order']})")
        else:
            lines.append("kernel: trivial")
        _emit(args, payload, lines)
        return EXIT_OK

    if not args.family:
        raise UsageError("generate needs a family id or --ansatz")
    geometry, f = _build_family(args)
    report = classify(geometry, f, args.r_max)
    payload = _report(
        "generate",
        geometry=geometry.name,
        convention=args.convention,
        input=args.family,
        chain=[str(e) for e in report.chain],
        order=report.order,
        expr=str(f),
        status="ok" if report.order is not None else "exceeds-bound",
    )
    lines = [
        f"family: {args.family}",
        f"expr: {f}",
        f"result: {report.describe()}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    geometry = by_id(args.geometry, args.convention)
    f = parse(args.expression, geometry.atoms)
    config = OracleConfig(
        step=args.step,
        levels=args.levels,
        rel_tol=args.tol,
        samples=args.samples,
        seed=args.seed,
    )
    report = cross_validate(geometry, f, config)
    status = "ok" if report.within_tolerance else "tolerance-exceeded"
    sentinel = None
    if args.convention == "paper" and args.geometry in _CONFORMAL_IDS:
        ratios = conformal_factor_ratio(geometry, f, config, count=20)
        if ratios:
            sentinel = sum(ratios) / len(ratios)
        if not report.within_tolerance:
            status = "expected-mismatch"
    payload = _report(
        "oracle",
        geometry=geometry.name,
        convention=args.convention,
        input=args.expression,
        residuals={"max_rel": report.max_rel, "points": report.points},
        status=status,
        sentinel_ratio=sentinel,
    )
    lines = [
        f"geometry: {geometry.name} ({args.convention} convention)",
        f"expression: {f}",
        f"points: {report.points}",
        f"max abs residual: {report.max_abs:.3e}",
        f"max rel residual: {report.max_rel:.3e}  (tolerance {report.rel_tol:.1e})",
        f"status: {status}",
    ]
    if sentinel is not None:
        lines.append(f"mean symbolic/oracle ratio: {sentinel:.6f}")
    _emit(args, payload, lines)
    if args.convention == "metric" and not report.within_tolerance:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _results_payload(command: str, results) -> tuple[dict, list[str], int]:
    checks = [
        {"id": r.check_id, "status": r.status, "detail": r.detail} for r in results
    ]
    ok = all(r.ok for r in results)
    payload = _report(command, checks=checks, status="ok" if ok else "failed")
    width = max(len(r.check_id) for r in results)
    lines = [f"{r.status:<18} {r.check_id:<{width}}  {r.detail}".rstrip() for r in results]
    passed = sum(1 for r in results if r.ok)
    lines.append(f"summary: {passed}/{len(results)} checks ok")
    return payload, lines, EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_lemma_check(args) -> int:
    if args.n > 4:
        raise UsageError("lemma-check is capped at -n 4")
    if args.trials < 1:
        raise UsageError("lemma-check needs at least one trial")
    results = lemma_report(args.n, args.trials, args.seed)
    payload, lines, code = _results_payload("lemma-check", results)
    _emit(args, payload, lines)
    return code


def _cmd_verify_paper(args) -> int:
    conventions = CONVENTIONS if args.convention == "both" else (args.convention,)
    ctx = SuiteContext(
        conventions=conventions,
        r_max=args.r_max,
        seed=args.seed,
        oracle=not args.skip_oracle,
    )
    results = run_suite(ctx)
    payload, lines, code = _results_payload("verify-paper", results)
    _emit(args, payload, lines)
    return code


_DISPATCH = {
    "tension": _cmd_tension,
    "classify": _cmd_classify,
    "generate": _cmd_generate,
    "oracle": _cmd_oracle,
    "lemma-check": _cmd_lemma_check,
    "verify-paper": _cmd_verify_paper,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ClosureError as exc:
        print(f"closure error: {exc}", file=sys.stderr)
        return EXIT_CLOSURE
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
