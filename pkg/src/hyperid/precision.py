"""Precision context and scalar conversion helpers.

All arithmetic in this package is mpmath-backed. Evaluations run at
``digits + guard_digits`` decimal places and results are meaningful to
roughly ``digits`` places. Small integers and dyadic rationals convert
exactly at any precision, which keeps pole detection and terminating-index
detection decidable: a value counts as an integer only when its imaginary
part is exactly zero and its real part equals an integer exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

INF = mpmath.inf


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus evaluation budgets shared by every evaluator.

    digits       reported decimal precision
    guard_digits extra internal digits absorbed by rounding and stopping rules
    max_terms    hard budget on the number of series terms per evaluation
    pole_margin  minimum accepted distance from gamma poles (0 = exact poles only)
    """

    digits: int = 30
    guard_digits: int = 10
    max_terms: int = 1_000_000
    pole_margin: float = 0.0

    def __post_init__(self):
        if self.digits < 10:
            raise ValueError("digits must be >= 10")
        if self.guard_digits < 5:
            raise ValueError("guard_digits must be >= 5")
        if self.max_terms < 1000:
            raise ValueError("max_terms must be >= 1000")
        if self.pole_margin < 0:
            raise ValueError("pole_margin must be nonnegative")

    @property
    def dps(self) -> int:
        return self.digits + self.guard_digits

    def working(self):
        """Context manager installing the working precision."""
        return mp.workdps(self.dps)

    def eps(self):
        """10^-dps, the unit used by stopping rules (valid at any ambient dps)."""
        return mpf(10) ** (-self.dps)


def to_mp(value):
    """Convert int/float/Fraction/complex/str/mpf/mpc to mpf or mpc.

    Conversion happens at the ambient mpmath precision; dyadic rationals and
    small integers are exact.
    """
    if isinstance(value, (mpf, mpc)):
        return value
    if isinstance(value, Fraction):
        return mpf(value.numerator) / mpf(value.denominator)
    if isinstance(value, complex):
        return mpc(value.real, value.imag)
    if isinstance(value, (int, float, str)):
        return mpmath.mpmathify(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an mp number")


def exact_int(value):
    """Return value as a Python int when it is exactly an integer, else None."""
    v = value
    if isinstance(v, (mpc, complex)):
        if v.imag != 0:
            return None
        v = v.real
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else None
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return int(v) if v.is_integer() else None
    if isinstance(v, mpf):
        return int(v) if mpmath.isint(v) else None
    return None


def nonpositive_int(value):
    """Return n >= 0 such that value == -n exactly, or None."""
    m = exact_int(value)
    if m is not None and m <= 0:
        return -m
    return None


def realify(value):
    """Drop an exactly-zero imaginary part."""
    if isinstance(value, (mpc, complex)) and value.imag == 0:
        return to_mp(value).real if isinstance(value, mpc) else value.real
    return value


def format_value(value, digits: int) -> str:
    """Deterministic decimal string at `digits` significant places."""
    v = realify(to_mp(value))
    if isinstance(v, mpc):
        re = mpmath.nstr(v.real, digits)
        im = mpmath.nstr(abs(v.imag), digits)
        sign = "-" if v.imag < 0 else "+"
        return f"{re} {sign} {im}j"
    return mpmath.nstr(v, digits)
