"""Acceptance suite: every verification family, one runner per criterion.

Each criterion function takes a :class:`SuiteSizes` describing grid caps
and precision, runs the corresponding checks, and returns a
:class:`CriterionResult`.  ``run_all`` executes all ten; the full sizes
are the shipping targets, the quick sizes keep the whole run under the
CI budget.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import hyperseries, numerics
from .identities import (
    ARITY,
    CHI_BEARING,
    IdentityId,
    IdentityParams,
    DomainError,
    lhs_value,
    rhs_value,
    validate,
    verify_grid,
)
from .report import CaseRecord, VerificationReport

__all__ = [
    "SuiteSizes",
    "FULL_SIZES",
    "QUICK_SIZES",
    "CriterionResult",
    "SuiteResult",
    "CRITERIA",
    "run_all",
    "DIXON_TRIPLES",
    "DIXON_TERMINATING",
    "DMINUS_TRIPLES",
    "DMINUS_TERMINATING",
    "LINEAR4F3_TRIPLES",
    "LINEAR4F3_TERMINATING",
]


@dataclass(frozen=True)
class SuiteSizes:
    thm_n: int = 60
    thm_lam: int = 12
    thm_mu: int = 12
    mikic_n: int = 200
    prop_n: int = 40
    cor_n: int = 30
    cor_lam: int = 8
    order: int = 48
    f43_n: int = 40
    f43_lam: int = 8
    precision: int = 40
    gamma_precisions: tuple[int, ...] = (20, 40, 60)
    int_n: int = 8
    int_lam: int = 3


FULL_SIZES = SuiteSizes()
QUICK_SIZES = SuiteSizes(
    thm_n=24,
    thm_lam=6,
    thm_mu=6,
    mikic_n=24,
    prop_n=24,
    cor_n=24,
    cor_lam=6,
    order=24,
    f43_n=24,
    f43_lam=6,
    precision=30,
    gamma_precisions=(20, 30),
)

_F = Fraction

# nonterminating triples all satisfy the convergence margin of their
# family; the terminating lists share instances with the exact engine
DIXON_TRIPLES = (
    (_F(1, 2), _F(1, 4), _F(1, 4)),
    (_F(1), _F(1, 2), _F(1, 4)),
    (_F(3, 2), _F(1, 2), _F(1, 2)),
    (_F(2), _F(3, 4), _F(1, 2)),
    (_F(5, 2), _F(1), _F(1, 2)),
    (_F(3), _F(1), _F(1)),
    (_F(7, 2), _F(3, 2), _F(1, 2)),
    (_F(4), _F(3, 2), _F(1)),
    (_F(3), _F(1, 2), _F(3, 4)),
    (_F(5), _F(2), _F(1, 2)),
)
DIXON_TERMINATING = tuple(
    (_F(a), _F(1, 3), _F(1, 5)) for a in (-2, -4, -6, -8, -10)
)
DMINUS_TRIPLES = (
    (_F(3), _F(1, 2), _F(1, 2)),
    (_F(5, 2), _F(1, 4), _F(1, 2)),
    (_F(4), _F(3, 4), _F(3, 4)),
    (_F(7, 2), _F(1, 2), _F(1, 2)),
    (_F(4), _F(1), _F(1, 2)),
    (_F(9, 2), _F(3, 4), _F(1)),
    (_F(5), _F(1), _F(1)),
    (_F(3), _F(1, 4), _F(3, 4)),
    (_F(6), _F(3, 2), _F(1)),
    (_F(5), _F(1, 2), _F(3, 2)),
)
DMINUS_TERMINATING = tuple(
    (_F(a), _F(1, 3), _F(1, 5)) for a in (-3, -4, -5, -6, -7)
)
# the (6, 3/2, 1, 1/2) entry sits at lam = c - 1, the linear-factor
# value the product-formula variant specializes to
LINEAR4F3_TRIPLES = (
    (_F(3), _F(1, 2), _F(1, 2), _F(1)),
    (_F(5, 2), _F(1, 4), _F(1, 2), _F(2)),
    (_F(4), _F(3, 4), _F(3, 4), _F(1, 2)),
    (_F(7, 2), _F(1, 2), _F(1, 2), _F(3)),
    (_F(4), _F(1), _F(1, 2), _F(3, 2)),
    (_F(9, 2), _F(3, 4), _F(1), _F(1)),
    (_F(5), _F(1), _F(1), _F(2)),
    (_F(3), _F(1, 4), _F(3, 4), _F(1, 2)),
    (_F(6), _F(3, 2), _F(1), _F(1, 2)),
    (_F(5), _F(1, 2), _F(3, 2), _F(5, 2)),
)
LINEAR4F3_TERMINATING = (
    (_F(-2), _F(1, 3), _F(1, 5), _F(2)),
    (_F(-4), _F(1, 3), _F(1, 5), _F(2)),
    (_F(-6), _F(1, 3), _F(1, 5), _F(2)),
    (_F(-7), _F(1, 2), _F(1, 5), _F(3)),
    (_F(-9), _F(1, 3), _F(2, 5), _F(1)),
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    reports: list[VerificationReport]
    elapsed_s: float
    details: str = ""

    def as_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
        }
        if self.details:
            out["details"] = self.details
        if include_timing:
            out["elapsed_s"] = round(self.elapsed_s, 3)
        out["reports"] = [
            r.as_dict(include_timing=include_timing) for r in self.reports
        ]
        return out


def _finish(
    number: int,
    title: str,
    reports: list[VerificationReport],
    start: float,
    passed: bool | None = None,
    details: str = "",
) -> CriterionResult:
    if passed is None:
        passed = all(r.ok for r in reports)
    return CriterionResult(
        number=number,
        title=title,
        passed=passed,
        reports=reports,
        elapsed_s=time.perf_counter() - start,
        details=details,
    )


def criterion_theorems(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 1: the five convolution theorems, exact, full grid."""
    start = time.perf_counter()
    reports = []
    for ident in (
        IdentityId.THM_A,
        IdentityId.THM_B,
        IdentityId.THM_C,
        IdentityId.THM_D,
        IdentityId.THM_E,
    ):
        mu_range = (0, sizes.thm_mu) if "mu" in ARITY[ident] else None
        reports.append(
            verify_grid(
                ident,
                (0, sizes.thm_n),
                lam_range=(0, sizes.thm_lam),
                mu_range=mu_range,
                jobs=jobs,
            )
        )
    return _finish(1, "alternating convolution theorems", reports, start)


def criterion_mikic(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 2: the base identities coincide with lam=0 throughout."""
    start = time.perf_counter()
    report = VerificationReport(name="mikic-specialization")
    pairs = (
        (IdentityId.MIKIC1, IdentityId.THM_A),
        (IdentityId.MIKIC2, IdentityId.THM_B),
    )
    for base, general in pairs:
        for n in range(sizes.mikic_n + 1):
            p_base = IdentityParams(n=n)
            p_gen = IdentityParams(n=n, lam=0)
            values = (
                lhs_value(base, p_base),
                rhs_value(base, p_base),
                lhs_value(general, p_gen),
                rhs_value(general, p_gen),
            )
            if all(v == values[0] for v in values[1:]):
                report.record_pass()
            else:
                report.record_failure(
                    CaseRecord(
                        params=(
                            ("base", base.value),
                            ("general", general.value),
                            ("n", n),
                        ),
                        lhs=values[0],
                        rhs=values[2],
                        note="all four of base lhs/rhs and lam=0 lhs/rhs must agree",
                    )
                )
    return _finish(
        2, "base identities match lam=0 specializations", [report], start
    )


def criterion_props(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 3: rational-parameter propositions over the default grid."""
    start = time.perf_counter()
    reports = []
    counts = []
    grid = hyperseries.DEFAULT_RATIONAL_GRID
    for ident in (IdentityId.PROP_A, IdentityId.PROP_B, IdentityId.PROP_C):
        reports.append(verify_grid(ident, (0, sizes.prop_n), jobs=jobs))
        admissible = 0
        for a in grid:
            for c in grid:
                try:
                    validate(ident, IdentityParams(n=sizes.prop_n, a=a, c=c))
                except DomainError:
                    continue
                admissible += 1
        counts.append((ident.value, admissible))
    passed = all(r.ok for r in reports) and all(
        count >= 40 for _, count in counts
    )
    details = "admissible pairs: " + ", ".join(
        f"{name} {count}" for name, count in counts
    )
    return _finish(
        3,
        "rational-parameter propositions",
        reports,
        start,
        passed=passed,
        details=details,
    )


def criterion_cors(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 4: reciprocal corollaries; documented mismatches flag."""
    start = time.perf_counter()
    reports = []
    for ident in (
        IdentityId.COR_1,
        IdentityId.COR_2,
        IdentityId.COR_3,
        IdentityId.COR_4,
    ):
        reports.append(
            verify_grid(
                ident,
                (0, sizes.cor_n),
                lam_range=(0, sizes.cor_lam),
                jobs=jobs,
            )
        )
    flagged = sum(len(r.flagged) for r in reports)
    details = f"{flagged} flagged closed-form discrepancies"
    return _finish(
        4,
        "reciprocal corollaries (exact or flagged)",
        reports,
        start,
        details=details,
    )


def criterion_products(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 5: product formulae, coefficientwise to the fixed order."""
    start = time.perf_counter()
    reports = [
        hyperseries.check_product_grid(formula, order=sizes.order)
        for formula in hyperseries.PRODUCT_FORMULAE
    ]
    return _finish(5, "product formulae through fixed order", reports, start)


def _f43_worker(point: tuple) -> tuple[VerificationReport, VerificationReport]:
    n, c, e, lam = point
    first = hyperseries.terminating_4f3_check(n, c, e, lam)
    second = hyperseries.contiguous_relation_check(n, c, e, lam)
    first.elapsed_ms = None
    second.elapsed_ms = None
    return first, second


def criterion_f43(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 6: terminating 4F3 evaluation plus contiguous relation."""
    start = time.perf_counter()
    grid = hyperseries.DEFAULT_RATIONAL_GRID
    points = [
        (n, c, e, Fraction(lam))
        for n in range(sizes.f43_n + 1)
        for lam in range(1, sizes.f43_lam + 1)
        for c in grid
        for e in grid
    ]
    evaluation = VerificationReport(name="terminating-4f3")
    contiguous = VerificationReport(name="contiguous-relation")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for first, second in pool.map(
                _f43_worker, points, chunksize=max(1, len(points) // (jobs * 8))
            ):
                evaluation.merge(first)
                contiguous.merge(second)
    else:
        for point in points:
            first, second = _f43_worker(point)
            evaluation.merge(first)
            contiguous.merge(second)
    evaluation.elapsed_ms = None
    contiguous.elapsed_ms = None
    return _finish(
        6,
        "terminating 4f3 and contiguous relation",
        [evaluation, contiguous],
        start,
    )


def criterion_gamma(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 7: reflection/duplication self-test at several precisions."""
    start = time.perf_counter()
    reports = [
        numerics.gamma_selftest(precision)
        for precision in sizes.gamma_precisions
    ]
    return _finish(7, "gamma self-test", reports, start)


def criterion_numeric(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 8: nonterminating series against Gamma closed forms."""
    start = time.perf_counter()
    precision = sizes.precision
    reports: list[VerificationReport] = []
    for a, c, e in DIXON_TRIPLES + DIXON_TERMINATING:
        reports.append(numerics.dixon_check(a, c, e, precision))
    for a, c, e in DMINUS_TRIPLES + DMINUS_TERMINATING:
        reports.append(numerics.dminus_check(a, c, e, precision))
    for a, c, e, lam in LINEAR4F3_TRIPLES + LINEAR4F3_TERMINATING:
        reports.append(numerics.linear4f3_check(a, c, e, lam, precision))
    merged: dict[str, VerificationReport] = {}
    for sub in reports:
        merged.setdefault(
            sub.name, VerificationReport(name=sub.name)
        ).merge(sub)
    return _finish(
        8,
        "nonterminating series vs gamma closed forms",
        list(merged.values()),
        start,
    )


def criterion_integrals(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 9: double-integral representations by exact-weight rules."""
    start = time.perf_counter()
    merged: dict[str, VerificationReport] = {}
    for which in numerics.INTEGRAL_FAMILIES:
        for n in range(sizes.int_n + 1):
            for lam in range(sizes.int_lam + 1):
                sub = numerics.integral_check(
                    which, n, lam, precision=sizes.precision
                )
                merged.setdefault(
                    sub.name, VerificationReport(name=sub.name)
                ).merge(sub)
    return _finish(
        9, "double-integral representations", list(merged.values()), start
    )


def _parity_worker(
    args: tuple[IdentityId, IdentityParams]
) -> tuple[str, CaseRecord | None]:
    ident, p = args
    try:
        value = lhs_value(ident, p)
    except DomainError:
        return ("skip", None)
    if value == 0:
        return ("pass", None)
    return (
        "fail",
        CaseRecord(params=p.items_for(ident), lhs=value, rhs=Fraction(0)),
    )


def _parity_points(
    sizes: SuiteSizes,
) -> list[tuple[IdentityId, IdentityParams]]:
    grid = hyperseries.DEFAULT_RATIONAL_GRID
    points: list[tuple[IdentityId, IdentityParams]] = []
    for ident in CHI_BEARING:
        names = ARITY[ident]
        if ident is IdentityId.MIKIC1:
            n_hi = sizes.mikic_n
        elif names == ("n", "a", "c"):
            n_hi = sizes.prop_n
        elif ident in (IdentityId.COR_1, IdentityId.COR_3):
            n_hi = sizes.cor_n
        else:
            n_hi = sizes.thm_n
        odd = range(1, n_hi + 1, 2)
        if names == ("n",):
            points.extend((ident, IdentityParams(n=n)) for n in odd)
        elif names == ("n", "lam"):
            lam_hi = (
                sizes.cor_lam
                if ident in (IdentityId.COR_1, IdentityId.COR_3)
                else sizes.thm_lam
            )
            points.extend(
                (ident, IdentityParams(n=n, lam=lam))
                for n in odd
                for lam in range(lam_hi + 1)
            )
        elif names == ("n", "lam", "mu"):
            points.extend(
                (ident, IdentityParams(n=n, lam=lam, mu=mu))
                for n in odd
                for lam in range(sizes.thm_lam + 1)
                for mu in range(sizes.thm_mu + 1)
            )
        else:
            points.extend(
                (ident, IdentityParams(n=n, a=a, c=c))
                for n in odd
                for a in grid
                for c in grid
            )
    return points


def criterion_parity(sizes: SuiteSizes, jobs: int = 1) -> CriterionResult:
    """Criterion 10: every chi-bearing sum vanishes exactly at odd index."""
    start = time.perf_counter()
    points = _parity_points(sizes)
    report = VerificationReport(name="odd-index-vanishing")
    if jobs > 1 and len(points) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = pool.map(
                _parity_worker,
                points,
                chunksize=max(1, len(points) // (jobs * 8)),
            )
            for status, record in outcomes:
                if status == "skip":
                    report.record_skip()
                elif status == "fail":
                    report.record_failure(record)
                else:
                    report.record_pass()
    else:
        for point in points:
            status, record = _parity_worker(point)
            if status == "skip":
                report.record_skip()
            elif status == "fail":
                report.record_failure(record)
            else:
                report.record_pass()
    return _finish(10, "odd-index vanishing", [report], start)


CRITERIA: tuple[tuple[int, Callable[[SuiteSizes, int], CriterionResult]], ...] = (
    (1, criterion_theorems),
    (2, criterion_mikic),
    (3, criterion_props),
    (4, criterion_cors),
    (5, criterion_products),
    (6, criterion_f43),
    (7, criterion_gamma),
    (8, criterion_numeric),
    (9, criterion_integrals),
    (10, criterion_parity),
)


@dataclass
class SuiteResult:
    quick: bool
    criteria: list[CriterionResult] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.criteria)

    def as_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "quick": self.quick,
            "ok": self.ok,
            "criteria": [
                c.as_dict(include_timing=include_timing)
                for c in self.criteria
            ],
        }
        if include_timing:
            out["elapsed_s"] = round(self.elapsed_s, 3)
        return out


def run_all(quick: bool = False, jobs: int = 1) -> SuiteResult:
    """Run criteria 1-10 at full or quick sizes."""
    sizes = QUICK_SIZES if quick else FULL_SIZES
    start = time.perf_counter()
    result = SuiteResult(quick=quick)
    for _, fn in CRITERIA:
        result.criteria.append(fn(sizes, jobs))
    result.elapsed_s = time.perf_counter() - start
    return result
