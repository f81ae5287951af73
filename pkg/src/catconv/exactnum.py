"""Exact integer and rational building blocks.

Binomial coefficients, Catalan numbers, rising factorials (Pochhammer
symbols) and their quotients, plus the 0/1 indicator used to kill
odd-index cases.  Everything returns Python ``int`` or
``fractions.Fraction``; nothing here rounds.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction]

__all__ = [
    "RationalLike",
    "ZeroLowerPochhammer",
    "binomial",
    "catalan",
    "set_catalan_cache_cap",
    "chi",
    "pochhammer",
    "poch_quotient",
]


class ZeroLowerPochhammer(ArithmeticError):
    """A denominator-side rising factorial contains a zero factor.

    Raised when a lower parameter ``x`` satisfies ``x + j == 0`` for some
    offset ``0 <= j < n`` inside ``(x)_n``.  Zero numerators are meaningful
    (they terminate series); zero denominators are not.
    """

    def __init__(self, parameter: RationalLike, index: int):
        self.parameter = Fraction(parameter)
        self.index = index
        super().__init__(
            f"lower parameter {parameter} hits zero at offset {index}"
        )


def binomial(n: int, k: int) -> int:
    """Binomial coefficient ``n`` choose ``k``.

    Parameters
    ----------
    n : int
        Row index, must be nonnegative.
    k : int
        Column index; any integer is accepted.

    Returns
    -------
    int
        ``n! / (k! (n-k)!)`` when ``0 <= k <= n``, otherwise 0.  The
        out-of-range convention lets alternating sums run over a full
        index range without boundary guards.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


_catalan_lock = threading.Lock()
_catalan_cache: dict[int, int] = {}
_catalan_cache_cap = 512


def set_catalan_cache_cap(cap: int) -> None:
    """Resize the Catalan memo table; entries above the new cap are dropped."""
    global _catalan_cache_cap
    if cap < 0:
        raise ValueError("cache cap must be nonnegative")
    with _catalan_lock:
        _catalan_cache_cap = cap
        for key in [k for k in _catalan_cache if k > cap]:
            del _catalan_cache[key]


def catalan(n: int) -> int:
    """Catalan number ``binomial(2n, n) // (n + 1)``.

    Values with ``n`` up to the configured cap (default 512) are memoized
    because grid sweeps reuse them heavily; larger arguments are computed
    on the fly.  The division is exact.
    """
    if n < 0:
        raise ValueError(f"catalan requires n >= 0, got n={n}")
    value = _catalan_cache.get(n)
    if value is None:
        value = math.comb(2 * n, n) // (n + 1)
        if n <= _catalan_cache_cap:
            with _catalan_lock:
                _catalan_cache[n] = value
    return value


def chi(condition: bool) -> int:
    """Indicator: 1 when the condition holds, 0 otherwise."""
    return 1 if condition else 0


def pochhammer(x: RationalLike, n: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+n-1)`` with ``(x)_0 = 1``.

    A nonpositive-integer ``x`` within range is legal here and yields 0;
    only quotients (see :func:`poch_quotient`) reject such values in the
    denominator.
    """
    if n < 0:
        raise ValueError(f"pochhammer requires n >= 0, got n={n}")
    x = Fraction(x)
    out = Fraction(1)
    for j in range(n):
        out *= x + j
    return out


def _zero_offset(x: Fraction, n: int) -> int | None:
    # Offset j < n with x + j == 0, if any.  Only integer x can hit.
    if x.denominator == 1 and -x.numerator >= 0 and -x.numerator < n:
        return -x.numerator
    return None


def poch_quotient(
    uppers: Iterable[RationalLike],
    lowers: Iterable[RationalLike],
    n: int,
) -> Fraction:
    """Quotient of rising-factorial products at a shared order ``n``.

    Computes ``prod (u)_n / prod (l)_n`` exactly.  Every lower parameter
    must stay clear of ``{0, -1, ..., -(n-1)}``; a hit raises
    :class:`ZeroLowerPochhammer` naming the offending parameter and offset.
    """
    if n < 0:
        raise ValueError(f"poch_quotient requires n >= 0, got n={n}")
    lower_fracs = [Fraction(l) for l in lowers]
    for l in lower_fracs:
        offset = _zero_offset(l, n)
        if offset is not None:
            raise ZeroLowerPochhammer(l, offset)
    num = Fraction(1)
    for u in uppers:
        num *= pochhammer(u, n)
    den = Fraction(1)
    for l in lower_fracs:
        den *= pochhammer(l, n)
    return num / den
