"""Command-line interface: verify suites, run surfaces, evaluate expressions.

Exit codes: 0 all checks passed, 1 at least one check failed,
2 invalid options or input.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .localization import InversionError, RationalExpr
from .parsing import ParseError, parse_expression, print_expression
from .presentations import fuzzy_sphere, weyl_lambda, weyl_uv
from .reporting import Report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

PRESENTATIONS = {
    "fuzzy": fuzzy_sphere,
    "weyl-uv": weyl_uv,
    "weyl-lambda": weyl_lambda,
    "weyl": weyl_lambda,
}


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _spin(text: str) -> Fraction:
    value = _fraction(text)
    if (2 * value).denominator != 1 or value <= 0:
        raise argparse.ArgumentTypeError("spin must be a positive half-integer")
    return value


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncgeo",
        description="exact verification of fuzzy-sphere geometry and "
        "noncommutative minimal surfaces, with matrix cross-checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify_sub = verify.add_subparsers(dest="target", required=True)

    vf = verify_sub.add_parser("fuzzy", help="fuzzy-sphere identity suite")
    vf.add_argument("--mode", choices=("symbolic", "matrix"), default="symbolic")
    vf.add_argument("--spin", type=_spin, action="append",
                    help="spin value for matrix mode (repeatable)")
    vf.add_argument("--connection", choices=("zero", "epsilon", "both"),
                    default="both")

    vm = verify_sub.add_parser("monopole", help="monopole bundle suite")
    vm.add_argument("--t", type=_fraction, default=Fraction(2),
                    help="rational parameter t > 1 (hbar = t - 1/t)")
    vm.add_argument("--mode", choices=("symbolic", "matrix"), default="symbolic")
    vm.add_argument("--spin", type=_spin, action="append")

    vk = verify_sub.add_parser("kernel", help="rewriting-kernel property battery")
    vk.add_argument("--cases", type=int, default=1000)
    vk.add_argument("--pairs", type=int, default=500)
    vk.add_argument("--seed", type=int, default=11)

    ve = verify_sub.add_parser("embedding", help="doubled-module embedding checks")

    vl = verify_sub.add_parser("levi-civita",
                               help="random symmetric-gamma connection battery")
    vl.add_argument("--samples", type=int, default=20)
    vl.add_argument("--seed", type=int, default=7)

    minimal = sub.add_parser("minimal", help="minimal-surface pipeline")
    minimal.add_argument("--F", dest="f_text", default="1",
                         help="generating polynomial in L")
    minimal.add_argument("--gamma1", default=None)
    minimal.add_argument("--gamma2", default=None)
    minimal.add_argument("--fock-dim", type=int,
                         default=int(os.environ.get("NCGEO_FOCK_DIM", "64")))
    minimal.add_argument("--hbar", type=_fraction, action="append",
                         help="rational hbar for the numeric checks (repeatable)")

    ev = sub.add_parser("eval", help="parse, normalize and print an expression")
    ev.add_argument("--presentation", choices=sorted(PRESENTATIONS), default="fuzzy")
    ev.add_argument("expression")

    suite = sub.add_parser("suite", help="run every acceptance suite")

    for p in (vf, vm, vk, ve, vl, minimal, ev, suite):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report to a file")
    return parser


def _emit(report: Report, args) -> int:
    if args.format == "text":
        payload = report.to_text() + "\n"
    else:
        payload = report.to_json_text() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _run_verify_fuzzy(args) -> int:
    from .suites import ACCEPTANCE_SPINS, fuzzy_matrix_report, fuzzy_symbolic_report

    if args.mode == "symbolic":
        report = fuzzy_symbolic_report(connection=args.connection)
    else:
        spins = tuple(args.spin) if args.spin else ACCEPTANCE_SPINS
        report = fuzzy_matrix_report(spins=spins, connection=args.connection)
    return _emit(report, args)


def _run_verify_monopole(args) -> int:
    from .suites import ACCEPTANCE_SPINS, monopole_matrix_report, monopole_report

    if args.mode == "matrix":
        spins = tuple(args.spin) if args.spin else ACCEPTANCE_SPINS
        return _emit(monopole_matrix_report(spins=spins), args)
    if args.t <= 1:
        print("error: --t must be a rational number greater than 1",
              file=sys.stderr)
        return EXIT_USAGE
    return _emit(monopole_report(args.t), args)


def _run_minimal(args) -> int:
    from .minimal import (
        integrate,
        levi_civita_connection,
        numeric_connection_checks,
        weierstrass_from_polynomial,
    )
    from .reporting import CheckResult
    from .suites import minimal_exact_report

    pres = weyl_lambda()
    try:
        f = parse_expression(args.f_text, pres)
    except (ParseError, InversionError) as exc:
        print(f"error: invalid --F expression: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(f, RationalExpr):
        print("error: --F must be a plain polynomial in L", file=sys.stderr)
        return EXIT_USAGE

    gammas = []
    for text in (args.gamma1, args.gamma2):
        if text is None:
            gammas.append(None)
            continue
        try:
            value = parse_expression(text, pres)
        except (ParseError, InversionError) as exc:
            print(f"error: invalid gamma expression: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if isinstance(value, RationalExpr):
            print("error: gamma parameters must be plain elements",
                  file=sys.stderr)
            return EXIT_USAGE
        gammas.append(value)

    report = Report(command=f"minimal --F {args.f_text!r}",
                    presentation="weyl-lambda")
    try:
        data = weierstrass_from_polynomial(f)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    surface = integrate(data)
    report.add(data.validate())
    report.add(
        CheckResult(
            check_id="metric-components",
            statement="diagonal metric components in canonical text",
            mode="exact",
            passed=True,
            extra={
                "S": surface.s_component.canonical_text(),
                "T": surface.t_component.canonical_text(),
            },
        )
    )
    sc = levi_civita_connection(surface, gammas[0], gammas[1])
    hbars = tuple(args.hbar) if args.hbar else (Fraction(1, 2),)
    for hbar in hbars:
        if sc.is_diagonal:
            report.extend(numeric_connection_checks(sc, hbar,
                                                    base_dim=args.fock_dim))
        else:
            from .minimal import metric_compatibility_expressions, torsion_expressions
            from .oracles import expr_max_abs, fock_rep
            from .reporting import VerdictReport

            defects = metric_compatibility_expressions(sc) + list(
                torsion_expressions(sc)
            )
            dims = (args.fock_dim, 2 * args.fock_dim)
            residuals = tuple(
                max(expr_max_abs(e, fock_rep(hbar, n)) for e in defects)
                for n in dims
            )
            stable = abs(residuals[0] - residuals[1]) < 1e-8
            report.add(
                VerdictReport(
                    check_id=f"minimal-gamma-connection@hbar={hbar}",
                    statement="parametrized connection is metric and torsion-free",
                    verdict="numeric-equal"
                    if max(residuals) < 1e-8 and stable
                    else "inconclusive",
                    residuals=residuals,
                    dims=dims,
                    stable=stable,
                )
            )
    if args.f_text.strip() == "1":
        exact = minimal_exact_report()
        for check in exact.checks:
            if check.check_id.startswith("enneper"):
                report.add(check)
    return _emit(report, args)


def _run_eval(args) -> int:
    pres = PRESENTATIONS[args.presentation]()
    try:
        value = parse_expression(args.expression, pres)
    except (ParseError, InversionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report(command="eval", presentation=pres.name)
    from .reporting import CheckResult

    report.add(
        CheckResult(
            check_id="normal-form",
            statement="input normalizes and round-trips",
            mode="exact",
            passed=True,
            extra={"canonical": print_expression(value)},
        )
    )
    if args.format == "text":
        payload = print_expression(value) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
        return EXIT_PASS
    return _emit(report, args)


def _run_suite(args) -> int:
    from .suites import full_suite_reports

    reports = full_suite_reports()
    combined = Report(command="suite", presentation="all")
    for r in reports:
        combined.extend(r.checks)
    return _emit(combined, args)


def main(argv=None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.command == "verify":
        if args.target == "fuzzy":
            return _run_verify_fuzzy(args)
        if args.target == "monopole":
            return _run_verify_monopole(args)
        if args.target == "kernel":
            from .suites import kernel_property_report

            return _emit(
                kernel_property_report(
                    seed=args.seed,
                    confluence_cases=args.cases,
                    oracle_pairs=args.pairs,
                ),
                args,
            )
        if args.target == "embedding":
            from .suites import embedding_report

            return _emit(embedding_report(), args)
        if args.target == "levi-civita":
            from .suites import levi_civita_report

            return _emit(
                levi_civita_report(samples=args.samples, seed=args.seed), args
            )
    if args.command == "minimal":
        return _run_minimal(args)
    if args.command == "eval":
        return _run_eval(args)
    if args.command == "suite":
        return _run_suite(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
