"""Gamma, log-gamma, Pochhammer symbols and gamma-product ratios.

mpmath supplies the precision-scalable gamma kernel (Stirling series with
argument shifting, reflection on the left half plane). This module adds the
bookkeeping the identity evaluators rely on: exact-integer pole detection,
Pochhammer symbols for negative index, and log-space gamma ratios that
return an exact zero when a denominator pole wins.

Gamma products of more than one factor always go through log-gamma so that
individually overflowing factors stay representable.
"""

from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

from .errors import DivisionByZero, IndeterminateError, PoleError
from .precision import PrecisionContext, nonpositive_int, to_mp


def _at_pole(z, margin: float) -> bool:
    """True when z is an exact nonpositive integer, or within margin of one."""
    if nonpositive_int(z) is not None:
        return True
    if margin > 0:
        zz = to_mp(z)
        re = zz.real if isinstance(zz, mpc) else zz
        m = int(mpmath.nint(re))
        if m <= 0 and abs(zz - m) < margin:
            return True
    return False


def gamma(z, ctx: PrecisionContext):
    """Gamma function at working precision.

    Raises PoleError at (or within ctx.pole_margin of) nonpositive integers.
    """
    with ctx.working():
        zz = to_mp(z)
        if _at_pole(zz, ctx.pole_margin):
            raise PoleError(f"gamma pole at z = {zz}")
        return mpmath.gamma(zz)


def log_gamma(z, ctx: PrecisionContext):
    """Principal-branch log-gamma; exp(log_gamma(z)) == gamma(z) to precision."""
    with ctx.working():
        zz = to_mp(z)
        if _at_pole(zz, ctx.pole_margin):
            raise PoleError(f"log-gamma pole at z = {zz}")
        return mpmath.loggamma(zz)


def pochhammer(x, n: int, ctx: PrecisionContext):
    """Shifted factorial (x)_n for any integer n.

    (x)_0 = 1; for n > 0 the rising product x (x+1) ... (x+n-1); for n < 0
    the reciprocal falling product 1 / ((x-1)(x-2)...(x+n)). Exact when x is
    exactly representable.
    """
    with ctx.working():
        xx = to_mp(x)
        if n == 0:
            return mpf(1)
        if n > 0:
            prod = mpf(1)
            for i in range(n):
                prod = prod * (xx + i)
            return prod
        prod = mpf(1)
        for j in range(1, -n + 1):
            factor = xx - j
            if factor == 0:
                raise DivisionByZero(f"(x)_n with n={n} hits zero factor at x-{j}")
            prod = prod * factor
        return 1 / prod


def _real_log_abs_gamma(x):
    """log|Gamma(x)| for real non-pole x."""
    lg = mpmath.loggamma(x)
    return lg.real if isinstance(lg, mpc) else lg


def _real_gamma_sign(x) -> int:
    """Sign of Gamma(x) for real non-pole x."""
    if x > 0:
        return 1
    return -1 if int(mpmath.ceil(-x)) % 2 else 1


def gamma_ratio(numer, denom, ctx: PrecisionContext):
    """prod Gamma(numer_i) / prod Gamma(denom_j) via summed log-gamma.

    Returns exact 0 when a denominator argument is a nonpositive integer and
    no numerator argument is. Raises PoleError for a numerator-only pole and
    IndeterminateError when poles coincide on both sides (the caller must
    cancel those through pochhammer instead).
    """
    with ctx.working():
        ns = [to_mp(v) for v in numer]
        ds = [to_mp(v) for v in denom]
        n_poles = [v for v in ns if _at_pole(v, ctx.pole_margin)]
        d_poles = [v for v in ds if _at_pole(v, ctx.pole_margin)]
        if n_poles and d_poles:
            raise IndeterminateError(
                "coinciding gamma poles in numerator and denominator"
            )
        if n_poles:
            raise PoleError(f"gamma pole in numerator at {n_poles[0]}")
        if d_poles:
            return mpf(0)
        if all(isinstance(v, mpf) for v in ns + ds):
            logsum = mpf(0)
            sign = 1
            for v in ns:
                logsum += _real_log_abs_gamma(v)
                sign *= _real_gamma_sign(v)
            for v in ds:
                logsum -= _real_log_abs_gamma(v)
                sign *= _real_gamma_sign(v)
            return sign * mpmath.exp(logsum)
        logsum = mpc(0)
        for v in ns:
            logsum += mpmath.loggamma(v)
        for v in ds:
            logsum -= mpmath.loggamma(v)
        return mpmath.exp(logsum)
