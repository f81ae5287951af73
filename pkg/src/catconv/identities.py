"""Catalog of alternating convolution identities.

Each catalog entry pairs an independent brute-force summation (the left
side, summed term by term with no reference to any closed form) with a
closed-form evaluator (the right side, transcribed as stated).  Both are
exact rationals, so verification is literal equality.

One catalogued closed form (``cor-2``) is known to disagree with the
oracle sum by the factor ``(1+2*lam+2*n)/(1+lam+n)``; its mismatches are
recorded as flagged discrepancies (with both exact values) and the
corrected denominator variant is validated alongside.  Nothing is
silently patched.
"""

from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exactnum import RationalLike, binomial, catalan, chi, pochhammer
from .hyperseries import DEFAULT_RATIONAL_GRID
from .report import CaseRecord, VerificationReport

__all__ = [
    "IdentityId",
    "IdentityParams",
    "ARITY",
    "DomainError",
    "validate",
    "lhs_value",
    "rhs_value",
    "cor2_rhs_corrected",
    "verify_case",
    "verify_grid",
    "dictionary_check",
    "specialization_check",
    "specialization_findings",
    "VALIDATED_SPECIALIZATIONS",
    "PRINTED_SPECIALIZATIONS",
    "CHI_BEARING",
    "INTEGER_VALUED",
]


class IdentityId(enum.Enum):
    RECURRENCE = "recurrence"
    TOUCHARD = "touchard"
    MIKIC1 = "mikic-1"
    MIKIC2 = "mikic-2"
    THM_A = "thm-a"
    THM_B = "thm-b"
    THM_C = "thm-c"
    THM_D = "thm-d"
    THM_E = "thm-e"
    PROP_A = "prop-a"
    PROP_B = "prop-b"
    PROP_C = "prop-c"
    COR_1 = "cor-1"
    COR_2 = "cor-2"
    COR_3 = "cor-3"
    COR_4 = "cor-4"


# parameter names each identity reads, in reporting order
ARITY: dict[IdentityId, tuple[str, ...]] = {
    IdentityId.RECURRENCE: ("n",),
    IdentityId.TOUCHARD: ("n",),
    IdentityId.MIKIC1: ("n",),
    IdentityId.MIKIC2: ("n",),
    IdentityId.THM_A: ("n", "lam"),
    IdentityId.THM_B: ("n", "lam"),
    IdentityId.THM_C: ("n", "lam"),
    IdentityId.THM_D: ("n", "lam"),
    IdentityId.THM_E: ("n", "lam", "mu"),
    IdentityId.PROP_A: ("n", "a", "c"),
    IdentityId.PROP_B: ("n", "a", "c"),
    IdentityId.PROP_C: ("n", "a", "c"),
    IdentityId.COR_1: ("n", "lam"),
    IdentityId.COR_2: ("n", "lam"),
    IdentityId.COR_3: ("n", "lam"),
    IdentityId.COR_4: ("n", "lam"),
}

# identities whose right side carries the even-index indicator; their sums
# vanish identically for odd n
CHI_BEARING = (
    IdentityId.MIKIC1,
    IdentityId.THM_A,
    IdentityId.THM_C,
    IdentityId.THM_E,
    IdentityId.PROP_A,
    IdentityId.PROP_B,
    IdentityId.COR_1,
    IdentityId.COR_3,
)

# sums that take integer values on their whole valid domain
INTEGER_VALUED = (
    IdentityId.THM_A,
    IdentityId.THM_B,
    IdentityId.THM_C,
    IdentityId.THM_D,
)


class DomainError(ValueError):
    """A parameter combination the identity's statement does not cover."""


@dataclass(frozen=True)
class IdentityParams:
    n: int
    lam: int | None = None
    mu: int | None = None
    a: Fraction | None = None
    c: Fraction | None = None

    def __post_init__(self):
        if self.a is not None:
            object.__setattr__(self, "a", Fraction(self.a))
        if self.c is not None:
            object.__setattr__(self, "c", Fraction(self.c))

    def items_for(self, ident: IdentityId) -> tuple[tuple[str, object], ...]:
        return tuple((name, getattr(self, name)) for name in ARITY[ident])


def _nonpos_int_hit(x: Fraction, span: int) -> bool:
    # does x + j == 0 for some 0 <= j < span?
    return x.denominator == 1 and 0 >= x.numerator > -span


def validate(ident: IdentityId, p: IdentityParams) -> None:
    """Raise DomainError when the statement does not cover the parameters."""
    if p.n < 0:
        raise DomainError("n must be nonnegative")
    for name in ARITY[ident]:
        if getattr(p, name) is None:
            raise DomainError(f"{ident.value} requires parameter {name}")
    if "lam" in ARITY[ident] and ident not in (
        IdentityId.PROP_A,
        IdentityId.PROP_B,
        IdentityId.PROP_C,
    ):
        if p.lam < 0:
            raise DomainError("lam must be nonnegative")
    if "mu" in ARITY[ident] and p.mu is not None and p.mu < 0:
        raise DomainError("mu must be nonnegative")
    n = p.n
    if ident is IdentityId.THM_D:
        # the stated right side contains lam!/(n)_lam, undefined at n=0
        # for positive lam; n=0 is covered only at lam=0
        if n == 0 and p.lam > 0:
            raise DomainError("thm-d right side is undefined at n=0 with lam>0")
    if ident is IdentityId.PROP_A:
        if _nonpos_int_hit(p.c, n):
            raise DomainError("prop-a requires (c)_k nonzero through k=n")
    if ident is IdentityId.PROP_B:
        if _nonpos_int_hit(2 * p.a, n):
            raise DomainError("prop-b requires (2a)_k nonzero through k=n")
        if _nonpos_int_hit(2 * p.c, n):
            raise DomainError("prop-b requires (2c)_k nonzero through k=n")
        if _nonpos_int_hit(p.a + p.c, n // 2):
            raise DomainError("prop-b requires (a+c)_h nonzero")
    if ident is IdentityId.PROP_C:
        if _nonpos_int_hit(p.c, n):
            raise DomainError("prop-c requires (c)_k nonzero through k=n")
        if _nonpos_int_hit(p.c - 1, n + 1):
            raise DomainError("prop-c requires (c-1)_k nonzero through k=n+1")
    # cor-2 case branches divide by 1-n (even) and 2-n (odd); the points
    # where those vanish have the opposite parity, so no guard is needed


# --- left sides: brute-force sums -------------------------------------

def _lhs_recurrence(p: IdentityParams) -> Fraction:
    n = p.n
    return Fraction(sum(catalan(k) * catalan(n - k) for k in range(n + 1)))


def _lhs_touchard(p: IdentityParams) -> Fraction:
    n = p.n
    total = 0
    for k in range(n // 2 + 1):
        total += 2 ** (n - 2 * k) * binomial(n, 2 * k) * catalan(k)
    return Fraction(total)


def _lhs_mikic1(p: IdentityParams) -> Fraction:
    n = p.n
    total = 0
    for k in range(n + 1):
        term = binomial(n, k) * catalan(k) * catalan(n - k)
        total += -term if k % 2 else term
    return Fraction(total)


def _lhs_mikic2(p: IdentityParams) -> Fraction:
    n = p.n
    total = 0
    for k in range(n + 1):
        term = binomial(n, k) * binomial(2 * n - 2 * k, n - k) * catalan(k)
        total += -term if k % 2 else term
    return Fraction(total)


def _lhs_thm_a(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    total = 0
    for k in range(n + 1):
        term = binomial(n, k) * catalan(k + lam) * catalan(n - k + lam)
        total += -term if k % 2 else term
    return Fraction(total)


def _lhs_thm_b(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    total = 0
    for k in range(n + 1):
        term = (
            binomial(n, k)
            * binomial(2 * (n - k) + 2 * lam, n - k + lam)
            * catalan(k + lam)
        )
        total += -term if k % 2 else term
    return Fraction(total)


def _lhs_thm_c(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    total = 0
    for k in range(n + 1):
        term = (
            binomial(n, k)
            * binomial(2 * k + 2 * lam, k + lam)
            * binomial(2 * (n - k) + 2 * lam, n - k + lam)
        )
        total += -term if k % 2 else term
    return Fraction(total)


def _lhs_thm_d(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    total = 0
    for k in range(n + 1):
        term = (
            binomial(n, k)
            * binomial(2 * k + 2 * lam, k + lam)
            * binomial(2 * (n - k) + 2 * lam, n - k + lam)
            * (n - k + lam)
        )
        total += -term if k % 2 else term
    return Fraction(total)


def _lhs_thm_e(p: IdentityParams) -> Fraction:
    n, lam, mu = p.n, p.lam, p.mu
    total = Fraction(0)
    for k in range(n + 1):
        num = (
            binomial(n, k)
            * binomial(2 * k + 2 * lam, k + lam)
            * binomial(2 * (n - k) + 2 * mu, n - k + mu)
        )
        den = binomial(k + 2 * lam, lam) * binomial(n - k + 2 * mu, mu)
        term = Fraction(num, den)
        total += -term if k % 2 else term
    return total


def _poch_row(x: Fraction, n: int) -> list[Fraction]:
    # (x)_0 .. (x)_n
    row = [Fraction(1)]
    acc = Fraction(1)
    for j in range(n):
        acc *= x + j
        row.append(acc)
    return row


def _lhs_prop_a(p: IdentityParams) -> Fraction:
    n, a, c = p.n, p.a, p.c
    pa = _poch_row(a, n)
    pc = _poch_row(c, n)
    total = Fraction(0)
    for k in range(n + 1):
        term = binomial(n, k) * pa[k] * pa[n - k] / (pc[k] * pc[n - k])
        total += -term if k % 2 else term
    return total


def _lhs_prop_b(p: IdentityParams) -> Fraction:
    n, a, c = p.n, p.a, p.c
    pa = _poch_row(a, n)
    pc = _poch_row(c, n)
    p2a = _poch_row(2 * a, n)
    p2c = _poch_row(2 * c, n)
    total = Fraction(0)
    for k in range(n + 1):
        term = binomial(n, k) * pa[k] * pc[n - k] / (p2a[k] * p2c[n - k])
        total += -term if k % 2 else term
    return total


def _lhs_prop_c(p: IdentityParams) -> Fraction:
    n, a, c = p.n, p.a, p.c
    pa = _poch_row(a, n)
    pc = _poch_row(c, n)
    pcm = _poch_row(c - 1, n)
    total = Fraction(0)
    for k in range(n + 1):
        term = binomial(n, k) * pa[k] * pa[n - k] / (pc[k] * pcm[n - k])
        total += -term if k % 2 else term
    return total


def _lhs_cor_1(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    scale = (n - 1) * (n - 3) * catalan(lam) ** 2
    total = Fraction(0)
    for k in range(n + 1):
        term = Fraction(
            binomial(n, k) * scale, catalan(k + lam) * catalan(n - k + lam)
        )
        total += -term if k % 2 else term
    return total


def _lhs_cor_2(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    scale = n * binomial(1 + 2 * lam, lam) * catalan(lam)
    total = Fraction(0)
    for k in range(n + 1):
        term = Fraction(
            binomial(n, k) * scale,
            binomial(1 + 2 * k + 2 * lam, k + lam) * catalan(n - k + lam),
        )
        total += -term if k % 2 else term
    return total


def _lhs_cor_3(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    scale = (1 - n) * binomial(2 * lam, lam) ** 2
    total = Fraction(0)
    for k in range(n + 1):
        term = Fraction(
            binomial(n, k) * scale,
            binomial(2 * k + 2 * lam, k + lam)
            * binomial(2 * (n - k) + 2 * lam, n - k + lam),
        )
        total += -term if k % 2 else term
    return total


def _lhs_cor_4(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    scale = n * (1 + 2 * lam) * (1 + 2 * n + 2 * lam) * binomial(2 * lam, lam) ** 2
    total = Fraction(0)
    for k in range(n + 1):
        term = Fraction(
            binomial(n, k) * scale,
            (1 + 2 * k + 2 * lam)
            * binomial(2 * k + 2 * lam, k + lam)
            * binomial(2 * (n - k) + 2 * lam, n - k + lam),
        )
        total += -term if k % 2 else term
    return total


# --- right sides: closed forms as catalogued ---------------------------

def _rhs_recurrence(p: IdentityParams) -> Fraction:
    return Fraction(catalan(p.n + 1))


_rhs_touchard = _rhs_recurrence


def _rhs_mikic1(p: IdentityParams) -> Fraction:
    n = p.n
    h = n // 2
    return Fraction(2 * chi(n % 2 == 0) * binomial(n, h) ** 2, n + 2)


def _rhs_mikic2(p: IdentityParams) -> Fraction:
    h = p.n // 2
    return Fraction(binomial(p.n, h) ** 2)


def _rhs_thm_a(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    h = n // 2
    num = (
        math.factorial(lam)
        * chi(n % 2 == 0)
        * binomial(2 * lam, lam)
        * binomial(n, h)
        * catalan(lam + h)
    )
    return num / pochhammer(2 + n, lam)


def _rhs_thm_b(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    h = n // 2
    num = (
        math.factorial(lam)
        * binomial(2 * lam, lam)
        * binomial(n, h)
        * binomial(n + 2 * lam, lam + h)
    )
    return num / pochhammer(2 + n, lam)


def _rhs_thm_c(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    h = n // 2
    num = (
        math.factorial(lam)
        * chi(n % 2 == 0)
        * binomial(2 * lam, lam)
        * binomial(n, h)
        * binomial(2 * lam + n, lam + h)
    )
    return num / pochhammer(1 + n, lam)


def _rhs_thm_d(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    if n == 0 and lam == 0:
        # both case branches carry a factor n; the sum is 0 by inspection
        return Fraction(0)
    h = n // 2
    base = (
        math.factorial(lam)
        * binomial(n, h)
        * binomial(2 * lam, lam)
        * binomial(2 * lam + n, lam + h)
        / pochhammer(n, lam)
    )
    if n % 2 == 0:
        branch = Fraction(n * (2 * lam + n), 2 * (lam + n))
    else:
        branch = Fraction((n + 1) * (2 * lam + n + 1), 2 * (lam + n))
    return base * branch


def _rhs_thm_e(p: IdentityParams) -> Fraction:
    n, lam, mu = p.n, p.lam, p.mu
    if n % 2:
        return Fraction(0)
    h = n // 2
    return Fraction(
        binomial(n, h) * binomial(n + lam + mu, h),
        binomial(lam + h, lam) * binomial(mu + h, mu),
    )


def _rhs_prop_a(p: IdentityParams) -> Fraction:
    n, a, c = p.n, p.a, p.c
    if n % 2:
        return Fraction(0)
    h = n // 2
    return (
        math.factorial(n)
        / pochhammer(c, n)
        * pochhammer(a, h)
        * pochhammer(c - a, h)
        / (math.factorial(h) * pochhammer(c, h))
    )


def _rhs_prop_b(p: IdentityParams) -> Fraction:
    n, a, c = p.n, p.a, p.c
    if n % 2:
        return Fraction(0)
    h = n // 2
    first = (
        math.factorial(n)
        * pochhammer(a + c, n)
        / (pochhammer(2 * a, n) * pochhammer(2 * c, n))
    )
    second = (
        pochhammer(a, h)
        * pochhammer(c, h)
        / (math.factorial(h) * pochhammer(a + c, h))
    )
    return first * second


def _rhs_prop_c(p: IdentityParams) -> Fraction:
    n, a, c = p.n, p.a, p.c
    h = n // 2
    base = (
        math.factorial(n)
        / pochhammer(c - 1, n + 1)
        * pochhammer(a, h)
        * pochhammer(c - a, h)
        / (math.factorial(h) * pochhammer(c, h))
    )
    if n % 2 == 0:
        branch = c + Fraction(n - 2, 2)
    else:
        branch = a + Fraction(n - 1, 2)
    return base * branch


def _rhs_cor_1(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    h = n // 2
    num = 3 * catalan(lam) * binomial(2 * lam, lam) * binomial(n, h) * chi(n % 2 == 0)
    den = (
        catalan(lam + h)
        * binomial(lam + n, lam)
        * binomial(2 * lam + 2 * n, lam + n)
    )
    return Fraction(num, den)


def _cor_2_shell(p: IdentityParams, central: int) -> Fraction:
    # everything in the cor-2 right side except the contested binomial,
    # which the caller supplies
    n, lam = p.n, p.lam
    h = n // 2
    num = (
        (1 + n + 2 * lam)
        * catalan(lam)
        * binomial(1 + 2 * lam, lam)
        * binomial(n, h)
    )
    den = binomial(lam + n + 1, n) * central * binomial(1 + 2 * lam + n, lam + h)
    if n % 2 == 0:
        branch = Fraction(n, 1 - n)
    else:
        branch = Fraction(1 + n, 2 - n)
    return Fraction(num, den) * branch


def _rhs_cor_2(p: IdentityParams) -> Fraction:
    return _cor_2_shell(p, binomial(2 * p.lam + 2 * p.n, p.lam + p.n))


def cor2_rhs_corrected(p: IdentityParams) -> Fraction:
    """The cor-2 closed form with the corrected central binomial.

    Replacing ``binomial(2lam+2n, lam+n)`` by ``binomial(1+2lam+2n, lam+n)``
    in the denominator makes the closed form agree with the brute-force
    sum everywhere; the two differ by the factor (1+2lam+2n)/(1+lam+n).
    """
    return _cor_2_shell(p, binomial(1 + 2 * p.lam + 2 * p.n, p.lam + p.n))


def _rhs_cor_3(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    h = n // 2
    num = binomial(2 * lam, lam) ** 2 * binomial(n, h) * chi(n % 2 == 0)
    den = (
        binomial(lam + n, n)
        * binomial(2 * lam + 2 * n, lam + n)
        * binomial(2 * lam + n, lam + h)
    )
    return Fraction(num, den)


def _rhs_cor_4(p: IdentityParams) -> Fraction:
    n, lam = p.n, p.lam
    h = n // 2
    num = (1 + 2 * lam) * binomial(2 * lam, lam) ** 2 * binomial(n, h)
    den = (
        binomial(lam + n, n)
        * binomial(2 * lam + 2 * n, lam + n)
        * binomial(2 * lam + n, lam + h)
    )
    return Fraction(num, den) * (n if n % 2 == 0 else n + 1)


_LHS: dict[IdentityId, Callable[[IdentityParams], Fraction]] = {
    IdentityId.RECURRENCE: _lhs_recurrence,
    IdentityId.TOUCHARD: _lhs_touchard,
    IdentityId.MIKIC1: _lhs_mikic1,
    IdentityId.MIKIC2: _lhs_mikic2,
    IdentityId.THM_A: _lhs_thm_a,
    IdentityId.THM_B: _lhs_thm_b,
    IdentityId.THM_C: _lhs_thm_c,
    IdentityId.THM_D: _lhs_thm_d,
    IdentityId.THM_E: _lhs_thm_e,
    IdentityId.PROP_A: _lhs_prop_a,
    IdentityId.PROP_B: _lhs_prop_b,
    IdentityId.PROP_C: _lhs_prop_c,
    IdentityId.COR_1: _lhs_cor_1,
    IdentityId.COR_2: _lhs_cor_2,
    IdentityId.COR_3: _lhs_cor_3,
    IdentityId.COR_4: _lhs_cor_4,
}

_RHS: dict[IdentityId, Callable[[IdentityParams], Fraction]] = {
    IdentityId.RECURRENCE: _rhs_recurrence,
    IdentityId.TOUCHARD: _rhs_touchard,
    IdentityId.MIKIC1: _rhs_mikic1,
    IdentityId.MIKIC2: _rhs_mikic2,
    IdentityId.THM_A: _rhs_thm_a,
    IdentityId.THM_B: _rhs_thm_b,
    IdentityId.THM_C: _rhs_thm_c,
    IdentityId.THM_D: _rhs_thm_d,
    IdentityId.THM_E: _rhs_thm_e,
    IdentityId.PROP_A: _rhs_prop_a,
    IdentityId.PROP_B: _rhs_prop_b,
    IdentityId.PROP_C: _rhs_prop_c,
    IdentityId.COR_1: _rhs_cor_1,
    IdentityId.COR_2: _rhs_cor_2,
    IdentityId.COR_3: _rhs_cor_3,
    IdentityId.COR_4: _rhs_cor_4,
}

# closed forms with a documented mismatch against the oracle, mapped to
# the evaluator for the corrected variant
PRINTED_FORM_DISCREPANCIES: dict[
    IdentityId, Callable[[IdentityParams], Fraction]
] = {
    IdentityId.COR_2: cor2_rhs_corrected,
}


def lhs_value(ident: IdentityId, p: IdentityParams) -> Fraction:
    """Brute-force sum of the identity's left side. Exact."""
    validate(ident, p)
    return _LHS[ident](p)


def rhs_value(ident: IdentityId, p: IdentityParams) -> Fraction:
    """Closed-form value of the identity's right side. Exact."""
    validate(ident, p)
    return _RHS[ident](p)


def verify_case(ident: IdentityId, p: IdentityParams) -> VerificationReport:
    """Compare both sides of one case exactly.

    A mismatch on an identity with a documented closed-form discrepancy is
    recorded as flagged when the corrected variant matches the oracle;
    any other mismatch is a failure.
    """
    validate(ident, p)
    report = VerificationReport(name=ident.value)
    lhs = _LHS[ident](p)
    rhs = _RHS[ident](p)
    if lhs == rhs:
        report.record_pass()
        return report
    params = p.items_for(ident)
    corrected = PRINTED_FORM_DISCREPANCIES.get(ident)
    if corrected is not None and lhs == corrected(p):
        report.record_flagged(
            CaseRecord(
                params=params,
                lhs=lhs,
                rhs=rhs,
                note=(
                    "catalogued closed form disagrees with the oracle sum; "
                    "the corrected central binomial matches exactly"
                ),
            )
        )
    else:
        report.record_failure(CaseRecord(params=params, lhs=lhs, rhs=rhs))
    return report


def _case_points(
    ident: IdentityId,
    n_range: tuple[int, int],
    lam_range: tuple[int, int] | None,
    mu_range: tuple[int, int] | None,
    rational_grid: Sequence[RationalLike] | None,
    a_grid: Sequence[RationalLike] | None = None,
    c_grid: Sequence[RationalLike] | None = None,
) -> list[IdentityParams]:
    names = ARITY[ident]
    n_lo, n_hi = n_range
    points: list[IdentityParams] = []
    if names == ("n",):
        points = [IdentityParams(n=n) for n in range(n_lo, n_hi + 1)]
    elif names == ("n", "lam"):
        if lam_range is None:
            raise ValueError(f"{ident.value} needs a lam range")
        points = [
            IdentityParams(n=n, lam=l)
            for n in range(n_lo, n_hi + 1)
            for l in range(lam_range[0], lam_range[1] + 1)
        ]
    elif names == ("n", "lam", "mu"):
        if lam_range is None or mu_range is None:
            raise ValueError(f"{ident.value} needs lam and mu ranges")
        points = [
            IdentityParams(n=n, lam=l, mu=m)
            for n in range(n_lo, n_hi + 1)
            for l in range(lam_range[0], lam_range[1] + 1)
            for m in range(mu_range[0], mu_range[1] + 1)
        ]
    elif names == ("n", "a", "c"):
        base = tuple(Fraction(g) for g in (rational_grid or DEFAULT_RATIONAL_GRID))
        a_values = tuple(Fraction(g) for g in a_grid) if a_grid else base
        c_values = tuple(Fraction(g) for g in c_grid) if c_grid else base
        points = [
            IdentityParams(n=n, a=a, c=c)
            for n in range(n_lo, n_hi + 1)
            for a in a_values
            for c in c_values
        ]
    return points


def _grid_worker(args: tuple[IdentityId, IdentityParams]) -> tuple[str, CaseRecord | None]:
    ident, p = args
    try:
        sub = verify_case(ident, p)
    except DomainError:
        return ("skip", None)
    if sub.failures:
        return ("fail", sub.failures[0])
    if sub.flagged:
        return ("flag", sub.flagged[0])
    return ("pass", None)


def verify_grid(
    ident: IdentityId,
    n_range: tuple[int, int],
    lam_range: tuple[int, int] | None = None,
    mu_range: tuple[int, int] | None = None,
    rational_grid: Sequence[RationalLike] | None = None,
    jobs: int = 1,
    a_grid: Sequence[RationalLike] | None = None,
    c_grid: Sequence[RationalLike] | None = None,
) -> VerificationReport:
    """Verify an identity over the Cartesian product of parameter ranges.

    Points outside the identity's valid domain count as skipped.  The
    iteration order is fixed, so reports are reproducible; with ``jobs``
    greater than one the grid is mapped across worker processes and
    results are merged in submission order.  ``a_grid``/``c_grid``
    override ``rational_grid`` per axis for the rational-parameter
    identities.
    """
    start = time.perf_counter()
    points = _case_points(
        ident, n_range, lam_range, mu_range, rational_grid, a_grid, c_grid
    )
    report = VerificationReport(name=ident.value)
    if jobs > 1 and len(points) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(
                _grid_worker,
                [(ident, p) for p in points],
                chunksize=max(1, len(points) // (jobs * 8)),
            )
            for status, record in results:
                if status == "skip":
                    report.record_skip()
                elif status == "fail":
                    report.record_failure(record)
                elif status == "flag":
                    report.record_flagged(record)
                else:
                    report.record_pass()
    else:
        for p in points:
            status, record = _grid_worker((ident, p))
            if status == "skip":
                report.record_skip()
            elif status == "fail":
                report.record_failure(record)
            elif status == "flag":
                report.record_flagged(record)
            else:
                report.record_pass()
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


# --- shifted-factorial / binomial dictionary ---------------------------

def dictionary_check(k_max: int = 40, lam_max: int = 12) -> VerificationReport:
    """Verify the four quotient-to-binomial conversions exactly.

    Each conversion rewrites a quotient of half-integer-shifted rising
    factorials as a ratio of central-type binomials over powers of four.
    """
    start = time.perf_counter()
    half = Fraction(1, 2)
    report = VerificationReport(name="dictionary")
    for lam in range(lam_max + 1):
        for k in range(k_max + 1):
            four_k = Fraction(4) ** k
            cases = (
                (
                    "half-over-one",
                    pochhammer(half + lam, k) / pochhammer(1 + lam, k),
                    Fraction(binomial(2 * k + 2 * lam, k + lam))
                    / (four_k * binomial(2 * lam, lam)),
                ),
                (
                    "three-half-over-one",
                    pochhammer(Fraction(3, 2) + lam, k) / pochhammer(1 + lam, k),
                    Fraction(
                        binomial(2 * k + 2 * lam, k + lam) * (1 + 2 * k + 2 * lam)
                    )
                    / (four_k * binomial(2 * lam, lam) * (1 + 2 * lam)),
                ),
                (
                    "half-over-two",
                    pochhammer(half + lam, k) / pochhammer(2 + lam, k),
                    Fraction(catalan(k + lam)) / (four_k * catalan(lam)),
                ),
                (
                    "three-half-over-two",
                    pochhammer(Fraction(3, 2) + lam, k) / pochhammer(2 + lam, k),
                    Fraction(binomial(1 + 2 * k + 2 * lam, k + lam))
                    / (four_k * binomial(1 + 2 * lam, lam)),
                ),
            )
            for tag, lhs, rhs in cases:
                if lhs == rhs:
                    report.record_pass()
                else:
                    report.record_failure(
                        CaseRecord(
                            params=(("conversion", tag), ("k", k), ("lam", lam)),
                            lhs=lhs,
                            rhs=rhs,
                        )
                    )
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


# --- theorem-to-proposition specializations ----------------------------

@dataclass(frozen=True)
class SpecializationRule:
    """How a two-parameter convolution theorem sits inside a proposition.

    ``scale`` multiplies the proposition's sum to recover the theorem's sum
    after substituting ``a_of``/``c_of``; the dictionary conversions above
    supply the factor.
    """

    theorem: IdentityId
    proposition: IdentityId
    a_of: Callable[[int, int | None], Fraction]
    c_of: Callable[[int, int | None], Fraction]
    scale: Callable[[int, int, int | None], Fraction]
    lam_min: int = 0


_HALF = Fraction(1, 2)

VALIDATED_SPECIALIZATIONS: dict[IdentityId, SpecializationRule] = {
    IdentityId.THM_A: SpecializationRule(
        theorem=IdentityId.THM_A,
        proposition=IdentityId.PROP_A,
        a_of=lambda lam, mu: _HALF + lam,
        c_of=lambda lam, mu: Fraction(2 + lam),
        scale=lambda n, lam, mu: Fraction(4) ** n * catalan(lam) ** 2,
    ),
    IdentityId.THM_B: SpecializationRule(
        theorem=IdentityId.THM_B,
        proposition=IdentityId.PROP_C,
        a_of=lambda lam, mu: _HALF + lam,
        c_of=lambda lam, mu: Fraction(2 + lam),
        scale=lambda n, lam, mu: Fraction(4) ** n
        * catalan(lam)
        * binomial(2 * lam, lam),
    ),
    IdentityId.THM_C: SpecializationRule(
        theorem=IdentityId.THM_C,
        proposition=IdentityId.PROP_A,
        a_of=lambda lam, mu: _HALF + lam,
        c_of=lambda lam, mu: Fraction(1 + lam),
        scale=lambda n, lam, mu: Fraction(4) ** n * binomial(2 * lam, lam) ** 2,
    ),
    IdentityId.THM_D: SpecializationRule(
        theorem=IdentityId.THM_D,
        proposition=IdentityId.PROP_C,
        a_of=lambda lam, mu: _HALF + lam,
        c_of=lambda lam, mu: Fraction(1 + lam),
        scale=lambda n, lam, mu: Fraction(4) ** n
        * binomial(2 * lam, lam) ** 2
        * lam,
        lam_min=1,
    ),
    IdentityId.THM_E: SpecializationRule(
        theorem=IdentityId.THM_E,
        proposition=IdentityId.PROP_B,
        a_of=lambda lam, mu: _HALF + lam,
        c_of=lambda lam, mu: _HALF + mu,
        scale=lambda n, lam, mu: Fraction(4) ** n,
    ),
}

# the substitutions as stated in the source catalog, for comparison with
# the oracle-validated table above
PRINTED_SPECIALIZATIONS: dict[IdentityId, tuple[str, str]] = {
    IdentityId.THM_A: ("1/2+lam", "2+lam"),
    IdentityId.THM_B: ("1/2+lam", "2+lam"),
    IdentityId.THM_C: ("1/2+lam", "1+lam"),
    IdentityId.THM_D: ("1/2+lam", "1+mu"),
    IdentityId.THM_E: ("1/2+lam", "2+mu"),
}

_VALIDATED_AS_TEXT: dict[IdentityId, tuple[str, str]] = {
    IdentityId.THM_A: ("1/2+lam", "2+lam"),
    IdentityId.THM_B: ("1/2+lam", "2+lam"),
    IdentityId.THM_C: ("1/2+lam", "1+lam"),
    IdentityId.THM_D: ("1/2+lam", "1+lam"),
    IdentityId.THM_E: ("1/2+lam", "1/2+mu"),
}


def specialization_check(
    theorem: IdentityId,
    n_max: int = 20,
    lam_max: int = 8,
    mu_max: int = 6,
) -> VerificationReport:
    """Confirm a theorem is its proposition rescaled, on both sides.

    For each grid point the proposition's sum and closed form are evaluated
    at the substituted (a, c) and multiplied by the dictionary scale; both
    must equal the theorem's sum and closed form exactly.
    """
    rule = VALIDATED_SPECIALIZATIONS[theorem]
    start = time.perf_counter()
    report = VerificationReport(name=f"{theorem.value}-specialization")
    mus: Iterable[int | None]
    if "mu" in ARITY[theorem]:
        mus = range(mu_max + 1)
    else:
        mus = (None,)
    for lam in range(rule.lam_min, lam_max + 1):
        for mu in mus:
            a = rule.a_of(lam, mu)
            c = rule.c_of(lam, mu)
            for n in range(n_max + 1):
                thm_p = IdentityParams(n=n, lam=lam, mu=mu)
                prop_p = IdentityParams(n=n, a=a, c=c)
                try:
                    validate(theorem, thm_p)
                    validate(rule.proposition, prop_p)
                except DomainError:
                    report.record_skip()
                    continue
                scale = rule.scale(n, lam, mu)
                params = thm_p.items_for(theorem) + (
                    ("a", a),
                    ("c", c),
                )
                ok = True
                for side, get in (("lhs", lhs_value), ("rhs", rhs_value)):
                    t_val = get(theorem, thm_p)
                    p_val = get(rule.proposition, prop_p)
                    if t_val != scale * p_val:
                        ok = False
                        report.record_failure(
                            CaseRecord(
                                params=params + (("side", side),),
                                lhs=t_val,
                                rhs=scale * p_val,
                            )
                        )
                        break
                if ok:
                    report.record_pass()
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def specialization_findings() -> VerificationReport:
    """Compare the stated substitution list against the validated one.

    Mismatches are flagged findings, each with a concrete witness point
    showing that the stated substitution does not reproduce the theorem
    while the validated one does.
    """
    report = VerificationReport(name="specialization-catalog")
    for theorem, rule in VALIDATED_SPECIALIZATIONS.items():
        printed = PRINTED_SPECIALIZATIONS[theorem]
        validated = _VALIDATED_AS_TEXT[theorem]
        if printed == validated:
            report.record_pass()
            continue
        witness = _specialization_witness(theorem, rule, printed)
        if witness is not None:
            note = (
                "stated substitution does not reproduce the theorem; "
                "lhs is the theorem value, rhs the rescaled proposition "
                "value under the stated substitution"
            )
        else:
            note = (
                "stated substitution leaves the proposition's domain at "
                "every probed point; the validated column reproduces the "
                "theorem exactly"
            )
            if any(
                "mu" in text and "mu" not in ARITY[theorem]
                for text in printed
            ):
                note += (
                    "; the stated text also names a parameter the theorem "
                    "does not have"
                )
        report.record_flagged(
            CaseRecord(
                params=(
                    ("theorem", theorem.value),
                    ("stated_a", printed[0]),
                    ("stated_c", printed[1]),
                    ("validated_a", validated[0]),
                    ("validated_c", validated[1]),
                )
                + (witness[0] if witness else ()),
                lhs=witness[1] if witness else None,
                rhs=witness[2] if witness else None,
                note=note,
            )
        )
    return report


def _parse_substitution(text: str, lam: int, mu: int) -> Fraction:
    base, _, shift = text.partition("+")
    offset = lam if shift == "lam" else mu
    return Fraction(base) + offset


def _specialization_witness(
    theorem: IdentityId,
    rule: SpecializationRule,
    printed: tuple[str, str],
):
    # find a small point where the stated substitution visibly fails
    for n in (2, 4, 6):
        for lam in range(rule.lam_min, 4):
            for mu in range(0, 4) if "mu" in ARITY[theorem] else (0,):
                mu_val = mu if "mu" in ARITY[theorem] else None
                thm_p = IdentityParams(n=n, lam=lam, mu=mu_val)
                a = _parse_substitution(printed[0], lam, mu)
                c = _parse_substitution(printed[1], lam, mu)
                prop_p = IdentityParams(n=n, a=a, c=c)
                try:
                    validate(theorem, thm_p)
                    validate(rule.proposition, prop_p)
                except DomainError:
                    continue
                t_val = lhs_value(theorem, thm_p)
                mapped = rule.scale(n, lam, mu_val) * lhs_value(
                    rule.proposition, prop_p
                )
                if t_val != mapped:
                    return (thm_p.items_for(theorem), t_val, mapped)
    return None
