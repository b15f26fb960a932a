"""Summation engine for generalized and bilateral hypergeometric series.

A unilateral series here is sum_{k>=0} of prod (a_i)_k / (k! prod (b_j)_k)
z^k; a bilateral series extends the sum over all integers k (with no k!).
Terms are always generated by the running term ratio, one multiply/divide
per parameter per term, never by recomputing Pochhammer products.

Routes, chosen by convergence class:
  terminating  exact finite sum (an upper parameter is a nonpositive integer)
  geometric    |z| < 1, direct summation with a geometric tail bound
  algebraic    |z| = 1 with decay exponent s > 1: direct summation plus an
               integral tail bound when the needed term count fits the
               budget, otherwise the Levin u-transform
Bilateral sums are split at k = 0; the negative tail becomes a unilateral
series with reflected parameters via (x)_{-k} = (-1)^k / (1-x)_k.

Error estimates are heuristic, not certified; callers compare at tolerances
well above them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from mpmath import mp, mpf

from .accel import levin_core, wynn_core
from .errors import (
    BudgetExceeded,
    DivergentError,
    IndeterminateError,
    LowerPoleError,
    NotConvergent,
    PoleError,
)
from .precision import PrecisionContext, nonpositive_int, to_mp


@dataclass(frozen=True)
class SeriesSpec:
    """Parameter lists and argument of a (bi)lateral hypergeometric series."""

    uppers: tuple
    lowers: tuple
    argument: object
    kind: str = "unilateral"  # or "bilateral"

    def __post_init__(self):
        if self.kind not in ("unilateral", "bilateral"):
            raise ValueError(f"unknown series kind {self.kind!r}")
        if self.kind == "unilateral" and len(self.uppers) < 1:
            raise ValueError("unilateral series needs at least one upper parameter")
        if self.kind == "bilateral" and len(self.uppers) != len(self.lowers):
            raise ValueError("bilateral series requires equal parameter counts")
        object.__setattr__(self, "uppers", tuple(self.uppers))
        object.__setattr__(self, "lowers", tuple(self.lowers))


@dataclass(frozen=True)
class ConvergenceClass:
    tag: str  # terminating | geometric | algebraic | divergent
    n: Optional[int] = None
    ratio: Optional[float] = None
    exponent: object = None  # real decay exponent s (mpf)

    @classmethod
    def terminating(cls, n):
        return cls("terminating", n=n)

    @classmethod
    def geometric(cls, rho):
        if not abs(rho) < 1:
            raise ValueError("geometric class requires |ratio| < 1")
        return cls("geometric", ratio=float(rho))

    @classmethod
    def algebraic(cls, s):
        if not s > 1:
            raise ValueError("algebraic class requires decay exponent > 1")
        return cls("algebraic", exponent=s)

    @classmethod
    def divergent(cls):
        return cls("divergent")


@dataclass
class SeriesResult:
    value: object
    err_estimate: object
    terms_used: int
    method: str  # terminating | direct | direct+tail | levin | wynn
    convergence: Optional[ConvergenceClass] = None


_DIRECT_CAP = 20_000  # direct algebraic summation beyond this is slower than Levin


def tail_bound_algebraic(K: int, s, last_term_mag):
    """Integral-comparison bound on sum_{k>K} C k^-s given |term_K|.

    The bound is last_term_mag * K / (s - 1); monotone in each argument.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    s = to_mp(s)
    if not s > 1:
        raise ValueError("tail bound requires s > 1")
    return to_mp(last_term_mag) * K / (s - 1)


def classify(spec: SeriesSpec) -> ConvergenceClass:
    """Convergence class of a series spec.

    Terminating when an upper parameter is a nonpositive integer (bilateral
    series additionally need a positive-integer lower parameter to cut the
    negative tail). At |z| = 1 the decay exponent is
    Re(sum lowers + 1 - sum uppers) for unilateral series and
    Re(sum lowers - sum uppers) for bilateral ones; exponents <= 1 diverge.
    """
    with mp.workdps(30):
        ns = [nonpositive_int(u) for u in spec.uppers]
        term_n = min((n for n in ns if n is not None), default=None)
        z = to_mp(spec.argument)
        az = abs(z)
        if spec.kind == "unilateral":
            if term_n is not None:
                return ConvergenceClass.terminating(term_n)
            if az < 1:
                return ConvergenceClass.geometric(az)
            if az == 1:
                if len(spec.uppers) > len(spec.lowers) + 1:
                    return ConvergenceClass.divergent()
                s = sum(to_mp(b) for b in spec.lowers) + 1 - sum(to_mp(a) for a in spec.uppers)
                s = s.real if hasattr(s, "real") else s
                if s > 1:
                    return ConvergenceClass.algebraic(s)
            return ConvergenceClass.divergent()
        # bilateral
        low_cut = None
        for b in spec.lowers:
            m = nonpositive_int(-to_mp(b))  # positive integer lower
            if m is not None and m > 0:
                low_cut = m if low_cut is None else min(low_cut, m)
        if term_n is not None and low_cut is not None:
            return ConvergenceClass.terminating(term_n)
        if az == 1:
            s = sum(to_mp(b) for b in spec.lowers) - sum(to_mp(a) for a in spec.uppers)
            s = s.real if hasattr(s, "real") else s
            if s > 1:
                return ConvergenceClass.algebraic(s)
        return ConvergenceClass.divergent()


def _term_stream(uppers, lowers, z, max_k=None):
    """Yield t_0, t_1, ... via t_{k+1} = t_k z prod(a+k) / ((1+k) prod(b+k))."""
    t = mpf(1)
    k = 0
    while True:
        yield t
        if max_k is not None and k >= max_k:
            return
        num = z
        for a in uppers:
            num = num * (a + k)
        den = mpf(k + 1)
        for b in lowers:
            den = den * (b + k)
        if den == 0:
            raise LowerPoleError(f"denominator parameter reaches a pole at k = {k}")
        t = t * num / den
        k += 1


def _lower_pole_check(uppers, lowers, term_n):
    """Reject lower parameters that hit zero before the terminating index."""
    for b in lowers:
        m = nonpositive_int(b)
        if m is None:
            continue
        if term_n is None or m < term_n:
            raise LowerPoleError(
                f"lower parameter {b} is a nonpositive integer reached before termination"
            )


def _sum_terminating(uppers, lowers, z, n, ctx, cls):
    gen = _term_stream(uppers, lowers, z, max_k=n)
    total = mpf(0)
    peak = mpf(0)
    for t in gen:
        total = total + t
        peak = max(peak, abs(t))
    err = peak * ctx.eps() * (n + 2)
    return SeriesResult(total, err, n + 1, "terminating", cls)


def _sum_geometric(uppers, lowers, z, ctx, cls):
    stop_eps = ctx.eps()
    rho = mpf(cls.ratio)
    total = mpf(0)
    peak = mpf(0)
    small_run = 0
    used = 0
    last = mpf(0)
    for t in _term_stream(uppers, lowers, z):
        if used >= ctx.max_terms:
            raise BudgetExceeded(f"geometric summation needs more than {ctx.max_terms} terms")
        total = total + t
        peak = max(peak, abs(t))
        used += 1
        last = t
        scale = abs(total) if total != 0 else mpf(1)
        if abs(t) < stop_eps * scale:
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
    tail = abs(last) * rho / (1 - rho) if rho > 0 else abs(last)
    err = tail + peak * ctx.eps() * used
    return SeriesResult(total, err, used, "direct", cls)


def _sum_levin(uppers, lowers, z, ctx, cls):
    cap = min(4 * ctx.digits + 40, ctx.max_terms, 400)
    with mp.workdps(2 * ctx.dps + 10):
        ups = [to_mp(u) for u in uppers]
        lows = [to_mp(b) for b in lowers]
        zz = to_mp(z)
        value, err, used = levin_core(
            _term_stream(ups, lows, zz),
            tol_target=mpf(10) ** (-(ctx.dps - 3)),
            accept_tol=mpf(10) ** (-(ctx.digits + 1)),
            cap=cap,
            err_floor=mpf(10) ** (-ctx.dps),
        )
    return SeriesResult(value, err, used, "levin", cls)


def _sum_algebraic(uppers, lowers, z, ctx, cls):
    s = to_mp(cls.exponent)
    probe = 48
    total = mpf(0)
    peak = mpf(0)
    used = 0
    last = mpf(1)
    stop_eps = ctx.eps()
    small_run = 0
    gen = _term_stream(uppers, lowers, z)
    for t in gen:
        total = total + t
        peak = max(peak, abs(t))
        used += 1
        last = t
        scale = abs(total) if total != 0 else mpf(1)
        if abs(t) < stop_eps * scale:
            small_run += 1
            if small_run >= 3:
                err = abs(last) * used / (s - 1) + peak * ctx.eps() * used
                return SeriesResult(total, err, used, "direct+tail", cls)
        else:
            small_run = 0
        if used >= probe:
            break
    scale = max(mpf(1), abs(total), peak)
    target = mpf(10) ** (-(ctx.digits + 4)) * scale
    c_coeff = abs(last) * mpf(used) ** s
    if c_coeff == 0:
        return SeriesResult(total, peak * ctx.eps() * used, used, "direct+tail", cls)
    k_needed = (c_coeff / target) ** (1 / (s - 1))
    # the direct route is only worth it while it stays cheap; slowly decaying
    # series (small exponents) go to the accelerator
    if k_needed > min(ctx.max_terms, _DIRECT_CAP):
        return _sum_levin(uppers, lowers, z, ctx, cls)
    k_stop = max(used + 1, int(k_needed) + 1)
    for t in gen:
        total = total + t
        peak = max(peak, abs(t))
        used += 1
        last = t
        if used >= k_stop:
            break
        if used >= ctx.max_terms:
            raise BudgetExceeded(f"algebraic summation needs more than {ctx.max_terms} terms")
    tail = tail_bound_algebraic(used, s, abs(last))
    err = tail + peak * ctx.eps() * used
    return SeriesResult(total, err, used, "direct+tail", cls)


def sum_unilateral(spec: SeriesSpec, ctx: PrecisionContext) -> SeriesResult:
    """Sum a unilateral series, dispatching on its convergence class."""
    if spec.kind != "unilateral":
        raise ValueError("sum_unilateral expects a unilateral spec")
    cls = classify(spec)
    if cls.tag == "divergent":
        raise DivergentError("series diverges at the given argument")
    with ctx.working():
        ups = [to_mp(u) for u in spec.uppers]
        lows = [to_mp(b) for b in spec.lowers]
        z = to_mp(spec.argument)
        _lower_pole_check(ups, lows, cls.n if cls.tag == "terminating" else None)
        if cls.tag == "terminating":
            return _sum_terminating(ups, lows, z, cls.n, ctx, cls)
        if cls.tag == "geometric":
            return _sum_geometric(ups, lows, z, ctx, cls)
        return _sum_algebraic(ups, lows, z, ctx, cls)


def split_bilateral(spec: SeriesSpec, ctx: PrecisionContext):
    """Split a bilateral series at k = 0.

    Returns (plus_spec, prefactor, minus_spec): the k >= 0 part as a
    unilateral spec (an extra upper 1 absorbs the k! of the unilateral
    definition), and the k <= -1 part re-expressed through the reflection
    (x)_{-k} = (-1)^k / (1-x)_k as prefactor * unilateral series at 1/z.
    minus_spec is None when the reflected prefactor is exactly zero (a lower
    parameter equal to 1 kills the whole negative tail).
    """
    if spec.kind != "bilateral":
        raise ValueError("split_bilateral expects a bilateral spec")
    with ctx.working():
        ups = [to_mp(u) for u in spec.uppers]
        lows = [to_mp(b) for b in spec.lowers]
        z = to_mp(spec.argument)
        if z == 0:
            raise DivergentError("bilateral series undefined at z = 0")
        plus = SeriesSpec((mpf(1), *ups), tuple(lows), z, "unilateral")
        pnum = mpf(1)
        for b in lows:
            pnum = pnum * (1 - b)
        pden = mpf(1)
        for a in ups:
            pden = pden * (1 - a)
        if pnum == 0 and pden == 0:
            raise IndeterminateError(
                "an upper and a lower parameter both equal 1; cancel the pair first"
            )
        if pnum == 0:
            return plus, mpf(0), None
        if pden == 0:
            raise PoleError("an upper parameter equal to 1 makes the negative tail singular")
        pref = pnum / pden / z
        minus = SeriesSpec(
            (mpf(1), *(2 - b for b in lows)),
            tuple(2 - a for a in ups),
            1 / z,
            "unilateral",
        )
        return plus, pref, minus


def sum_bilateral(spec: SeriesSpec, ctx: PrecisionContext) -> SeriesResult:
    """Sum a bilateral series by splitting at k = 0."""
    if spec.kind != "bilateral":
        raise ValueError("sum_bilateral expects a bilateral spec")
    cls = classify(spec)
    if cls.tag == "divergent":
        s = None
        with mp.workdps(30):
            if abs(to_mp(spec.argument)) == 1:
                s = sum(to_mp(b) for b in spec.lowers) - sum(to_mp(a) for a in spec.uppers)
                s = s.real if hasattr(s, "real") else s
        if s is not None:
            raise NotConvergent(f"bilateral decay exponent Re = {s} is not > 1")
        raise DivergentError("bilateral series diverges at the given argument")
    plus, pref, minus = split_bilateral(spec, ctx)
    res_plus = sum_unilateral(plus, ctx)
    if minus is None:
        return SeriesResult(
            res_plus.value, res_plus.err_estimate, res_plus.terms_used, res_plus.method, cls
        )
    res_minus = sum_unilateral(minus, ctx)
    with ctx.working():
        value = res_plus.value + pref * res_minus.value
        err = res_plus.err_estimate + abs(pref) * res_minus.err_estimate
    methods = {res_plus.method, res_minus.method}
    if "levin" in methods:
        method = "levin"
    elif methods == {"terminating"}:
        method = "terminating"
    else:
        method = "direct+tail" if "direct+tail" in methods else "direct"
    return SeriesResult(value, err, res_plus.terms_used + res_minus.terms_used, method, cls)


def levin_u(terms, ctx: PrecisionContext, convergence=None) -> SeriesResult:
    """Levin u-transform of a term stream (terms, not partial sums).

    The table runs at doubled working precision to absorb its own
    cancellation. Terms supplied from outside carry the caller's rounding
    noise, which the table amplifies, so the acceptance threshold here is
    looser than the engine-internal one (the engine regenerates terms at the
    boosted precision itself). The reported err_estimate is the last
    diagonal difference. Raises AccelerationFailed when the estimate
    stagnates above tolerance.
    """
    cap = min(4 * ctx.digits + 40, ctx.max_terms, 400)
    with mp.workdps(2 * ctx.dps + 10):
        value, err, used = levin_core(
            iter(terms),
            tol_target=mpf(10) ** (-(ctx.dps - 3)),
            accept_tol=mpf(10) ** (-max(ctx.digits - 8, 6)),
            cap=cap,
            err_floor=mpf(10) ** (-ctx.dps),
        )
    return SeriesResult(value, err, used, "levin", convergence)


def wynn_epsilon(partials):
    """Even-column limit estimate of Wynn's epsilon algorithm.

    Used as a consistency check against levin_u; needs >= 5 partial sums.
    """
    value, _err = wynn_core(list(partials))
    return value
