"""Truncated formal power series over exact rationals.

Builds hypergeometric series coefficient lists, multiplies them by exact
Cauchy product, and certifies the catalogued product formulae
coefficient-by-coefficient.  Also evaluates terminating series at unit
argument exactly, which backs the closed-form and contiguous-relation
checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import RationalLike, ZeroLowerPochhammer, poch_quotient
from .report import CaseRecord, VerificationReport

__all__ = [
    "ARG_PLUS",
    "ARG_MINUS",
    "ARG_SQUARED",
    "BAILEY_DIXON",
    "BAILEY_WATSON",
    "CLAUSEN",
    "LEMMA_LINEAR",
    "VARIANT_LINEAR",
    "PRODUCT_FORMULAE",
    "DEFAULT_ORDER",
    "DEFAULT_RATIONAL_GRID",
    "DegenerateLambda",
    "SeriesSpec",
    "TruncatedSeries",
    "pfq_truncate",
    "series_mul",
    "series_add",
    "series_sub",
    "check_product_formula",
    "check_product_grid",
    "pfq_unity_sum_exact",
    "terminating_4f3_closed_form",
    "terminating_4f3_check",
    "contiguous_relation_check",
]

# Argument tags: the only forms the product formulae use.  The squared tag
# places raw term k at x^(2k) scaled by 4^(-k).
ARG_PLUS = "+x"
ARG_MINUS = "-x"
ARG_SQUARED = "x^2/4"
_ARGUMENTS = (ARG_PLUS, ARG_MINUS, ARG_SQUARED)

BAILEY_DIXON = "bailey-dixon"
BAILEY_WATSON = "bailey-watson"
CLAUSEN = "clausen"
LEMMA_LINEAR = "lemma-linear"
VARIANT_LINEAR = "variant-linear"
PRODUCT_FORMULAE = (
    BAILEY_DIXON,
    BAILEY_WATSON,
    CLAUSEN,
    LEMMA_LINEAR,
    VARIANT_LINEAR,
)

DEFAULT_ORDER = 48
DEFAULT_RATIONAL_GRID: tuple[Fraction, ...] = tuple(
    Fraction(v)
    for v in (
        Fraction(1, 2),
        1,
        Fraction(3, 2),
        2,
        Fraction(5, 2),
        3,
        Fraction(1, 3),
        Fraction(2, 3),
    )
)


class DegenerateLambda(ValueError):
    """The extra linear factor's parameter is zero, so its series is undefined."""


@dataclass(frozen=True)
class SeriesSpec:
    """Parameter lists, argument tag and optional monomial prefactor.

    ``prefactor=(q, p)`` multiplies the whole series by ``q * x**p``.
    """

    uppers: tuple[Fraction, ...]
    lowers: tuple[Fraction, ...]
    argument: str = ARG_PLUS
    prefactor: tuple[Fraction, int] = (Fraction(1), 0)

    def __post_init__(self):
        object.__setattr__(self, "uppers", tuple(Fraction(u) for u in self.uppers))
        object.__setattr__(self, "lowers", tuple(Fraction(l) for l in self.lowers))
        if self.argument not in _ARGUMENTS:
            raise ValueError(f"unknown argument tag {self.argument!r}")
        coeff, power = self.prefactor
        if power < 0:
            raise ValueError("prefactor power must be nonnegative")
        object.__setattr__(self, "prefactor", (Fraction(coeff), int(power)))


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact coefficients of x^0 .. x^order."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient list length must equal order + 1")

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k]


def pfq_truncate(spec: SeriesSpec, order: int) -> TruncatedSeries:
    """Expand a hypergeometric series spec to exact coefficients.

    Raw term k carries the Pochhammer quotient over k!.  The argument tag
    maps it onto a power of x (with sign or quarter-square scaling), then
    the prefactor shifts and scales the whole series.  An upper parameter
    hitting zero terminates the expansion; a lower parameter hitting zero
    first raises :class:`ZeroLowerPochhammer`.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    pref_coeff, pref_power = spec.prefactor
    coeffs = [Fraction(0)] * (order + 1)
    term = Fraction(1)
    k = 0
    while True:
        position = 2 * k if spec.argument == ARG_SQUARED else k
        position += pref_power
        if position > order:
            break
        value = term
        if spec.argument == ARG_MINUS and k % 2:
            value = -value
        elif spec.argument == ARG_SQUARED:
            value = value / Fraction(4) ** k
        coeffs[position] = pref_coeff * value
        # advance the running term; numerator zero means termination
        numerator = Fraction(1)
        terminated = False
        for u in spec.uppers:
            factor = u + k
            if factor == 0:
                terminated = True
                break
            numerator *= factor
        if terminated:
            break
        denominator = Fraction(k + 1)
        for l in spec.lowers:
            factor = l + k
            if factor == 0:
                raise ZeroLowerPochhammer(l, k)
            denominator *= factor
        term = term * numerator / denominator
        k += 1
    return TruncatedSeries(order, tuple(coeffs))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller order."""
    order = min(a.order, b.order)
    out = []
    for n in range(order + 1):
        acc = Fraction(0)
        for i in range(n + 1):
            ai = a.coeffs[i]
            if ai:
                bj = b.coeffs[n - i]
                if bj:
                    acc += ai * bj
        out.append(acc)
    return TruncatedSeries(order, tuple(out))


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    return TruncatedSeries(
        order, tuple(a.coeffs[i] + b.coeffs[i] for i in range(order + 1))
    )


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = min(a.order, b.order)
    return TruncatedSeries(
        order, tuple(a.coeffs[i] - b.coeffs[i] for i in range(order + 1))
    )


def _product_sides(
    formula: str,
    a: Fraction,
    c: Fraction,
    lam: Fraction | None,
    order: int,
) -> tuple[TruncatedSeries, TruncatedSeries]:
    half = Fraction(1, 2)
    if formula == BAILEY_DIXON:
        lhs = series_mul(
            pfq_truncate(SeriesSpec((a,), (c,), ARG_PLUS), order),
            pfq_truncate(SeriesSpec((a,), (c,), ARG_MINUS), order),
        )
        rhs = pfq_truncate(
            SeriesSpec((a, c - a), (c, c / 2, (1 + c) / 2), ARG_SQUARED), order
        )
        return lhs, rhs
    if formula == BAILEY_WATSON:
        lhs = series_mul(
            pfq_truncate(SeriesSpec((a,), (2 * a,), ARG_PLUS), order),
            pfq_truncate(SeriesSpec((c,), (2 * c,), ARG_MINUS), order),
        )
        rhs = pfq_truncate(
            SeriesSpec(
                ((a + c) / 2, (a + c + 1) / 2),
                (a + c, a + half, c + half),
                ARG_SQUARED,
            ),
            order,
        )
        return lhs, rhs
    if formula == CLAUSEN:
        f = pfq_truncate(SeriesSpec((a, c), (a + c + half,), ARG_PLUS), order)
        lhs = series_mul(f, f)
        rhs = pfq_truncate(
            SeriesSpec(
                (a + c, 2 * a, 2 * c), (a + c + half, 2 * a + 2 * c), ARG_PLUS
            ),
            order,
        )
        return lhs, rhs
    if formula == LEMMA_LINEAR:
        if lam is None or lam == 0:
            raise DegenerateLambda("linear-factor parameter must be nonzero")
        lhs = series_mul(
            pfq_truncate(SeriesSpec((a,), (c,), ARG_PLUS), order),
            pfq_truncate(SeriesSpec((1 + lam, a), (lam, c), ARG_MINUS), order),
        )
        even_part = pfq_truncate(
            SeriesSpec(
                (1 + lam, a, c - a), (lam, c, c / 2, (1 + c) / 2), ARG_SQUARED
            ),
            order,
        )
        odd_part = pfq_truncate(
            SeriesSpec(
                (1 + a, c - a),
                (c, (1 + c) / 2, (2 + c) / 2),
                ARG_SQUARED,
                prefactor=(a / (c * lam), 1),
            ),
            order,
        )
        return lhs, series_sub(even_part, odd_part)
    if formula == VARIANT_LINEAR:
        # The lemma specialized at lam = c - 1; the factor with lowered
        # parameter takes the negated argument so odd coefficients agree.
        lam = c - 1
        if lam == 0:
            raise DegenerateLambda("variant requires c != 1")
        lhs = series_mul(
            pfq_truncate(SeriesSpec((a,), (c,), ARG_PLUS), order),
            pfq_truncate(SeriesSpec((a,), (c - 1,), ARG_MINUS), order),
        )
        even_part = pfq_truncate(
            SeriesSpec((a, c - a), (c - 1, c / 2, (1 + c) / 2), ARG_SQUARED),
            order,
        )
        odd_part = pfq_truncate(
            SeriesSpec(
                (1 + a, c - a),
                (c, (1 + c) / 2, (2 + c) / 2),
                ARG_SQUARED,
                prefactor=(a / (c * (c - 1)), 1),
            ),
            order,
        )
        return lhs, series_sub(even_part, odd_part)
    raise ValueError(f"unknown product formula {formula!r}")


def check_product_formula(
    formula: str,
    a: RationalLike,
    c: RationalLike,
    lam: RationalLike | None = None,
    order: int = DEFAULT_ORDER,
) -> VerificationReport:
    """Certify one product formula coefficient-by-coefficient.

    Both sides are built independently (left by Cauchy product of the two
    factors, right from its own series) and compared exactly through
    ``order``.  The report's failure record, if any, names the first
    mismatching coefficient index.
    """
    start = time.perf_counter()
    a = Fraction(a)
    c = Fraction(c)
    lam_f = None if lam is None else Fraction(lam)
    lhs, rhs = _product_sides(formula, a, c, lam_f, order)
    params: list[tuple[str, object]] = [("formula", formula), ("a", a), ("c", c)]
    if formula == LEMMA_LINEAR:
        params.append(("lam", lam_f))
    params.append(("order", order))
    report = VerificationReport(name=formula)
    mismatch = None
    for i in range(min(lhs.order, rhs.order) + 1):
        if lhs.coeffs[i] != rhs.coeffs[i]:
            mismatch = i
            break
    if mismatch is None:
        report.record_pass()
    else:
        report.record_failure(
            CaseRecord(
                params=tuple(params) + (("coeff_index", mismatch),),
                lhs=lhs.coeffs[mismatch],
                rhs=rhs.coeffs[mismatch],
            )
        )
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def check_product_grid(
    formula: str,
    order: int = DEFAULT_ORDER,
    grid: Sequence[RationalLike] | None = None,
    lam_grid: Sequence[RationalLike] | None = None,
) -> VerificationReport:
    """Sweep a product formula over the default rational grid.

    Inadmissible parameter combinations (zero lower Pochhammer, degenerate
    linear factor) are counted as skipped, never silently dropped.
    """
    start = time.perf_counter()
    grid = tuple(Fraction(g) for g in (grid or DEFAULT_RATIONAL_GRID))
    report = VerificationReport(name=formula)
    if formula == LEMMA_LINEAR:
        lams = tuple(Fraction(g) for g in (lam_grid or DEFAULT_RATIONAL_GRID))
        combos: Iterable[tuple] = (
            (a, c, l) for a in grid for c in grid for l in lams
        )
    else:
        combos = ((a, c, None) for a in grid for c in grid)
    for a, c, lam in combos:
        try:
            sub = check_product_formula(formula, a, c, lam, order)
        except (ZeroLowerPochhammer, DegenerateLambda):
            report.record_skip()
            continue
        sub.elapsed_ms = None
        report.merge(sub)
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def pfq_unity_sum_exact(
    uppers: Sequence[RationalLike],
    lowers: Sequence[RationalLike],
    last_index: int,
) -> Fraction:
    """Exact partial sum of a hypergeometric series at unit argument.

    Sums terms k = 0 .. last_index.  Intended for terminating series where
    ``last_index`` reaches the cutoff, making the partial sum the full
    value.  Termination by a zero numerator factor short-circuits.
    """
    ups = [Fraction(u) for u in uppers]
    lows = [Fraction(l) for l in lowers]
    total = Fraction(0)
    term = Fraction(1)
    for k in range(last_index + 1):
        total += term
        if k == last_index:
            break
        numerator = Fraction(1)
        dead = False
        for u in ups:
            factor = u + k
            if factor == 0:
                dead = True
                break
            numerator *= factor
        if dead:
            break
        denominator = Fraction(k + 1)
        for l in lows:
            factor = l + k
            if factor == 0:
                raise ZeroLowerPochhammer(l, k)
            denominator *= factor
        term = term * numerator / denominator
    return total


def terminating_4f3_closed_form(
    n: int,
    c: RationalLike,
    e: RationalLike,
    lam: RationalLike,
) -> Fraction:
    """Closed-form value of the terminating 4F3 with the (1+lam, lam) column.

    A half-order Pochhammer quotient times a parity-dependent linear factor
    in lam.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = Fraction(c)
    e = Fraction(e)
    lam = Fraction(lam)
    if lam == 0:
        raise DegenerateLambda("linear-factor parameter must be nonzero")
    base = poch_quotient(
        [Fraction(-n), 1 - c - e - n], [1 - c - n, 1 - e - n], n // 2
    )
    if n % 2 == 0:
        tail = (2 * lam + n) / (2 * lam)
    else:
        tail = Fraction(-(1 + n)) / (2 * lam)
    return base * tail


def terminating_4f3_check(
    n: int,
    c: RationalLike,
    e: RationalLike,
    lam: RationalLike,
) -> VerificationReport:
    """Exact check of the terminating 4F3(..., 1+lam; ..., lam; 1) evaluation.

    The left side is the finite sum over k = 0..n; the right side is the
    closed form from ``terminating_4f3_closed_form``.  Both sides are exact
    rationals.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = Fraction(c)
    e = Fraction(e)
    lam = Fraction(lam)
    rhs = terminating_4f3_closed_form(n, c, e, lam)
    start = time.perf_counter()
    lhs = pfq_unity_sum_exact(
        [Fraction(-n), c, e, 1 + lam],
        [1 - c - n, 1 - e - n, lam],
        n,
    )
    report = VerificationReport(name="terminating-4f3")
    params = (("n", n), ("c", c), ("e", e), ("lam", lam))
    if lhs == rhs:
        report.record_pass()
    else:
        report.record_failure(CaseRecord(params=params, lhs=lhs, rhs=rhs))
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def contiguous_relation_check(
    n: int,
    c: RationalLike,
    e: RationalLike,
    lam: RationalLike,
) -> VerificationReport:
    """Exact check of the extra-column contiguous relation at a = -n.

    The 4F3 with the appended (1+lam)/(lam) column must equal
    ``(lam - a)/lam`` times the plain 3F2 plus ``a/lam`` times the 3F2 with
    raised first parameter.  All three series terminate and are summed
    exactly.  The split comes from (lam+k)/lam = (lam-a)/lam + (a+k)/lam.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    c = Fraction(c)
    e = Fraction(e)
    lam = Fraction(lam)
    if lam == 0:
        raise DegenerateLambda("linear-factor parameter must be nonzero")
    start = time.perf_counter()
    a = Fraction(-n)
    lowers = [1 + a - c, 1 + a - e]
    four = pfq_unity_sum_exact([a, c, e, 1 + lam], lowers + [lam], n)
    plain = pfq_unity_sum_exact([a, c, e], lowers, n)
    if n == 0:
        # raised-parameter series does not terminate at a = 0, but its
        # coefficient a/lam vanishes, so it never contributes
        rhs = plain
    else:
        raised = pfq_unity_sum_exact([1 + a, c, e], lowers, n - 1)
        rhs = (lam - a) / lam * plain + a / lam * raised
    report = VerificationReport(name="contiguous-relation")
    params = (("n", n), ("c", c), ("e", e), ("lam", lam))
    if four == rhs:
        report.record_pass()
    else:
        report.record_failure(CaseRecord(params=params, lhs=four, rhs=rhs))
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report
