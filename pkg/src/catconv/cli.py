"""Command-line front end.

Subcommands run one verification family each; ``all`` runs the whole
acceptance suite.  Reports stream to stdout as text or JSON; exit codes:
0 all pass, 1 at least one mismatch, 2 usage or configuration error,
3 numeric failure (non-convergence, pole, rule construction).

JSON reports are deterministic for a fixed configuration once timings
are suppressed with ``--no-timing``.  Exact rationals appear as
``"num/den"`` strings.  Beyond the flat ``cases_run`` / ``skipped`` /
``failures`` keys, reports carry a ``flagged`` list (documented
closed-form discrepancies, never counted as passes) and per-check
``reports`` detail; ``--strict-printed`` makes flagged cases count as
mismatches for the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import hyperseries, numerics, suite
from .exactnum import ZeroLowerPochhammer
from .hyperseries import DegenerateLambda
from .identities import IdentityId, verify_grid
from .report import VerificationReport, encode_value

__all__ = ["main", "build_parser"]

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_NUMERIC_ERRORS = (
    numerics.NonConvergent,
    numerics.TailBoundExceeded,
    numerics.RuleConstructionFailure,
    numerics.PoleError,
)
_CONFIG_ERRORS = (ZeroLowerPochhammer, ValueError)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected an integer or lo..hi range, got {text!r}"
        ) from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"expected a rational like 3 or 5/2, got {text!r}"
        ) from None


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_parse_fraction(part) for part in text.split(","))


def _fmt(value: Any) -> Any:
    if isinstance(value, tuple) and len(value) == 2 and all(
        isinstance(v, int) for v in value
    ):
        return f"{value[0]}..{value[1]}"
    if isinstance(value, tuple):
        return ",".join(str(encode_value(v)) for v in value)
    return encode_value(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catconv",
        description=(
            "Exact and high-precision verification of alternating "
            "convolution identities for Catalan numbers and binomial "
            "coefficients."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="report format (default text)",
    )
    common.add_argument(
        "--no-timing", action="store_true",
        help="omit timings so identical configs give identical bytes",
    )
    common.add_argument(
        "--out", default=None, help="also write the report to this path"
    )
    common.add_argument(
        "--jobs", type=int, default=1,
        help="worker processes for grid sweeps (default 1)",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify", parents=[common],
        help="exact check of one identity over parameter ranges",
    )
    verify.add_argument(
        "--identity", required=True,
        choices=[ident.value for ident in IdentityId],
    )
    verify.add_argument("--n", type=_parse_range, default=(0, 24))
    verify.add_argument("--lambda", dest="lam", type=_parse_range, default=None)
    verify.add_argument("--mu", type=_parse_range, default=None)
    verify.add_argument(
        "--a", type=_parse_fraction_list, default=None,
        help="comma-separated rationals for the a grid",
    )
    verify.add_argument(
        "--c", type=_parse_fraction_list, default=None,
        help="comma-separated rationals for the c grid",
    )
    verify.add_argument("--strict-printed", action="store_true")

    coeffs = sub.add_parser(
        "coeffs", parents=[common],
        help="coefficientwise check of a product formula",
    )
    coeffs.add_argument(
        "--formula", required=True, choices=hyperseries.PRODUCT_FORMULAE
    )
    coeffs.add_argument("--a", type=_parse_fraction, default=None)
    coeffs.add_argument("--c", type=_parse_fraction, default=None)
    coeffs.add_argument(
        "--lambda", dest="lam", type=_parse_fraction, default=None
    )
    coeffs.add_argument(
        "--order", type=int, default=hyperseries.DEFAULT_ORDER
    )

    fourf3 = sub.add_parser(
        "fourf3", parents=[common],
        help="terminating 4F3 evaluation and contiguous relation",
    )
    fourf3.add_argument("--n", type=_parse_range, default=(0, 12))
    fourf3.add_argument(
        "--lambda", dest="lam", type=_parse_range, default=(1, 4)
    )
    fourf3.add_argument("--c", type=_parse_fraction_list, default=None)
    fourf3.add_argument("--e", type=_parse_fraction_list, default=None)

    gamma = sub.add_parser(
        "gamma-selftest", parents=[common],
        help="reflection and duplication identities at one precision",
    )
    gamma.add_argument("--prec", type=int, default=40)

    numeric = sub.add_parser(
        "numeric", parents=[common],
        help="nonterminating series against Gamma closed forms",
    )
    numeric.add_argument(
        "--family", required=True, choices=numerics.NUMERIC_FAMILIES
    )
    numeric.add_argument("--a", type=_parse_fraction, default=None)
    numeric.add_argument("--c", type=_parse_fraction, default=None)
    numeric.add_argument("--e", type=_parse_fraction, default=None)
    numeric.add_argument(
        "--lambda", dest="lam", type=_parse_fraction, default=None
    )
    numeric.add_argument("--prec", type=int, default=40)
    numeric.add_argument("--max-terms", type=int, default=100000)

    integral = sub.add_parser(
        "integral", parents=[common],
        help="double-integral representations by Gauss-Jacobi quadrature",
    )
    integral.add_argument(
        "--which", required=True, choices=numerics.INTEGRAL_FAMILIES
    )
    integral.add_argument("--n", type=_parse_range, default=(0, 8))
    integral.add_argument(
        "--lambda", dest="lam", type=_parse_range, default=(0, 3)
    )
    integral.add_argument("--prec", type=int, default=40)
    integral.add_argument(
        "--nodes", type=int, default=None,
        help="override the node count (default n//2 + 2)",
    )

    everything = sub.add_parser(
        "all", parents=[common], help="run the whole acceptance suite"
    )
    everything.add_argument("--quick", action="store_true")
    everything.add_argument("--strict-printed", action="store_true")

    return parser


def _cmd_verify(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    ident = IdentityId(args.identity)
    report = verify_grid(
        ident,
        args.n,
        lam_range=args.lam,
        mu_range=args.mu,
        jobs=args.jobs,
        a_grid=args.a,
        c_grid=args.c,
    )
    return [report], {}


def _cmd_coeffs(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    if (args.a is None) != (args.c is None):
        raise ValueError("give both --a and --c, or neither for a grid sweep")
    if args.a is not None:
        report = hyperseries.check_product_formula(
            args.formula, args.a, args.c, args.lam, args.order
        )
    else:
        lam_grid = (args.lam,) if args.lam is not None else None
        report = hyperseries.check_product_grid(
            args.formula, order=args.order, lam_grid=lam_grid
        )
    return [report], {}


def _cmd_fourf3(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    grid_c = args.c or hyperseries.DEFAULT_RATIONAL_GRID
    grid_e = args.e or hyperseries.DEFAULT_RATIONAL_GRID
    evaluation = VerificationReport(name="terminating-4f3")
    contiguous = VerificationReport(name="contiguous-relation")
    for n in range(args.n[0], args.n[1] + 1):
        for lam in range(args.lam[0], args.lam[1] + 1):
            for c in grid_c:
                for e in grid_e:
                    try:
                        first = hyperseries.terminating_4f3_check(n, c, e, lam)
                        second = hyperseries.contiguous_relation_check(
                            n, c, e, lam
                        )
                    except (DegenerateLambda, ZeroLowerPochhammer):
                        evaluation.record_skip()
                        contiguous.record_skip()
                        continue
                    first.elapsed_ms = None
                    second.elapsed_ms = None
                    evaluation.merge(first)
                    contiguous.merge(second)
    return [evaluation, contiguous], {}


def _cmd_gamma(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    return [numerics.gamma_selftest(args.prec)], {}


_NUMERIC_TABLES = {
    "dixon": (suite.DIXON_TRIPLES, suite.DIXON_TERMINATING),
    "dminus": (suite.DMINUS_TRIPLES, suite.DMINUS_TERMINATING),
    "linear4f3": (suite.LINEAR4F3_TRIPLES, suite.LINEAR4F3_TERMINATING),
}


def _cmd_numeric(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    family = args.family
    if args.a is None:
        convergent, terminating = _NUMERIC_TABLES[family]
        merged = VerificationReport(name=family)
        for point in convergent + terminating:
            merged.merge(_run_numeric(family, point, args))
        return [merged], {}
    if args.c is None or args.e is None:
        raise ValueError("a single point needs --a, --c, and --e")
    point: tuple = (args.a, args.c, args.e)
    if family == "linear4f3":
        if args.lam is None:
            raise ValueError("linear4f3 needs --lambda")
        point = point + (args.lam,)
    return [_run_numeric(family, point, args)], {}


def _run_numeric(family: str, point: tuple, args) -> VerificationReport:
    if family == "dixon":
        return numerics.dixon_check(*point, args.prec, args.max_terms)
    if family == "dminus":
        return numerics.dminus_check(*point, args.prec, args.max_terms)
    return numerics.linear4f3_check(*point, args.prec, args.max_terms)


def _cmd_integral(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    merged = VerificationReport(name=f"integral-{args.which}")
    for n in range(args.n[0], args.n[1] + 1):
        for lam in range(args.lam[0], args.lam[1] + 1):
            merged.merge(
                numerics.integral_check(
                    args.which, n, lam, precision=args.prec, m=args.nodes
                )
            )
    return [merged], {}


def _cmd_all(args) -> tuple[list[VerificationReport], dict[str, Any]]:
    result = suite.run_all(quick=args.quick, jobs=args.jobs)
    reports = [r for criterion in result.criteria for r in criterion.reports]
    extra = {
        "ok": result.ok,
        "criteria": result.criteria,
        "suite_elapsed_s": result.elapsed_s,
    }
    return reports, extra


_HANDLERS: dict[str, Callable] = {
    "verify": _cmd_verify,
    "coeffs": _cmd_coeffs,
    "fourf3": _cmd_fourf3,
    "gamma-selftest": _cmd_gamma,
    "numeric": _cmd_numeric,
    "integral": _cmd_integral,
    "all": _cmd_all,
}

_ECHO_KEYS = (
    "identity", "formula", "family", "which", "quick",
    "n", "lam", "mu", "a", "c", "e",
    "order", "prec", "max_terms", "nodes", "jobs", "strict_printed",
)


def _config_echo(args) -> dict[str, Any]:
    echo: dict[str, Any] = {}
    for key in _ECHO_KEYS:
        if hasattr(args, key):
            value = getattr(args, key)
            if value is not None:
                echo[key] = _fmt(value)
    return echo


def _emit(
    args,
    reports: list[VerificationReport],
    extra: dict[str, Any],
    error: dict[str, str] | None,
    elapsed_ms: float,
) -> int:
    include_timing = not args.no_timing
    strict = getattr(args, "strict_printed", False)
    failures = [case for r in reports for case in r.failures]
    flagged = [case for r in reports for case in r.flagged]
    payload: dict[str, Any] = {
        "command": args.command,
        "config_echo": _config_echo(args),
        "cases_run": sum(r.cases_run for r in reports),
        "skipped": sum(r.skipped for r in reports),
        "failures": [case.as_dict() for case in failures],
        "flagged": [case.as_dict() for case in flagged],
    }
    if "ok" in extra:
        payload["ok"] = extra["ok"]
    if "criteria" in extra:
        payload["criteria"] = [
            c.as_dict(include_timing=include_timing)
            for c in extra["criteria"]
        ]
    else:
        payload["reports"] = [
            r.as_dict(include_timing=include_timing) for r in reports
        ]
    if error is not None:
        payload["error"] = {
            "type": error["type"], "message": error["message"]
        }
    if include_timing:
        payload["elapsed_ms"] = round(elapsed_ms, 3)
        if "suite_elapsed_s" in extra:
            payload["suite_elapsed_s"] = round(extra["suite_elapsed_s"], 3)

    if args.format == "json":
        rendered = json.dumps(payload, indent=2)
    else:
        rendered = _render_text(args, payload, extra, include_timing)
    print(rendered)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered + "\n")

    if error is not None:
        return EXIT_USAGE if error["exit"] == "usage" else EXIT_NUMERIC
    if payload["failures"]:
        return EXIT_MISMATCH
    if "ok" in payload and not payload["ok"]:
        return EXIT_MISMATCH
    if strict and payload["flagged"]:
        return EXIT_MISMATCH
    return EXIT_PASS


def _render_text(args, payload, extra, include_timing: bool) -> str:
    lines = [f"command: {payload['command']}"]
    if "criteria" in payload:
        for criterion in extra["criteria"]:
            verdict = "PASS" if criterion.passed else "FAIL"
            timing = (
                f" ({criterion.elapsed_s:.1f}s)" if include_timing else ""
            )
            lines.append(
                f"criterion {criterion.number:2d} {verdict}  "
                f"{criterion.title}{timing}"
            )
    else:
        for report in payload["reports"]:
            verdict = "PASS" if not report["failures"] else "FAIL"
            lines.append(
                "{name}: cases={cases_run} skipped={skipped} "
                "failures={nfail} flagged={nflag} {verdict}".format(
                    name=report["name"],
                    cases_run=report["cases_run"],
                    skipped=report["skipped"],
                    nfail=len(report["failures"]),
                    nflag=len(report["flagged"]),
                    verdict=verdict,
                )
            )
    for case in payload["failures"][:20]:
        lines.append(f"  FAIL {case['params']} lhs={case['lhs']} rhs={case['rhs']}")
    for case in payload["flagged"][:20]:
        lines.append(f"  FLAG {case['params']} lhs={case['lhs']} rhs={case['rhs']}")
    if payload.get("error"):
        lines.append(
            f"error: {payload['error']['type']}: {payload['error']['message']}"
        )
    overall = "PASS"
    if payload["failures"] or payload.get("error") or not payload.get("ok", True):
        overall = "FAIL"
    elif payload["flagged"]:
        overall = (
            "FAIL (flagged, strict)"
            if getattr(args, "strict_printed", False)
            else "PASS (with flagged discrepancies)"
        )
    timing = f" in {payload['elapsed_ms']:.0f} ms" if include_timing else ""
    lines.append(f"overall: {overall}{timing}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    reports: list[VerificationReport] = []
    extra: dict[str, Any] = {}
    error = None
    try:
        reports, extra = _HANDLERS[args.command](args)
    except _NUMERIC_ERRORS as exc:
        error = {
            "type": type(exc).__name__,
            "message": str(exc),
            "exit": "numeric",
        }
        print(f"catconv: {type(exc).__name__}: {exc}", file=sys.stderr)
    except _CONFIG_ERRORS as exc:
        error = {
            "type": type(exc).__name__,
            "message": str(exc),
            "exit": "usage",
        }
        print(f"catconv: {type(exc).__name__}: {exc}", file=sys.stderr)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return _emit(args, reports, extra, error, elapsed_ms)
