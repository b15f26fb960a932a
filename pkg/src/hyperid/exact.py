"""Exact big-rational evaluation of terminating sums.

Terminating identities at rational q and dyadic parameters are checked in
Fraction arithmetic, where equality is literal; a tolerance window cannot
hide an off-by-one in a termination index. The very-well-poised +-sqrt(a)
parameter pairs only ever enter through pairwise products, which stay
rational: (sqrt(a);q)_k (-sqrt(a);q)_k = (a;q^2)_k, so the q-side helpers
take the paired product directly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero


def rising(x: Fraction, n: int) -> Fraction:
    """Shifted factorial (x)_n in exact rational arithmetic, any integer n."""
    x = Fraction(x)
    if n == 0:
        return Fraction(1)
    if n > 0:
        prod = Fraction(1)
        for i in range(n):
            prod *= x + i
        return prod
    prod = Fraction(1)
    for j in range(1, -n + 1):
        factor = x - j
        if factor == 0:
            raise DivisionByZero(f"exact (x)_{n} hits a zero factor")
        prod *= factor
    return 1 / prod


def pfq_terminating(uppers, lowers, z: Fraction, n: int) -> Fraction:
    """Exact finite sum of a hypergeometric series terminating at index n."""
    uppers = [Fraction(u) for u in uppers]
    lowers = [Fraction(b) for b in lowers]
    z = Fraction(z)
    total = Fraction(0)
    t = Fraction(1)
    for k in range(n + 1):
        total += t
        if k == n:
            break
        num = z
        for a in uppers:
            num *= a + k
        den = Fraction(k + 1)
        for b in lowers:
            den *= b + k
        if den == 0:
            raise DivisionByZero(f"exact terminating sum hits a lower pole at k={k}")
        t = t * num / den
    return total


def qpoch(x: Fraction, q: Fraction, n: int) -> Fraction:
    """(x;q)_n in exact rational arithmetic, any integer n."""
    x, q = Fraction(x), Fraction(q)
    if n == 0:
        return Fraction(1)
    if n > 0:
        prod = Fraction(1)
        xq = x
        for _ in range(n):
            prod *= 1 - xq
            xq *= q
        return prod
    m = -n
    y = x / q**m
    prod = Fraction(1)
    yq = y
    for _ in range(m):
        factor = 1 - yq
        if factor == 0:
            raise DivisionByZero(f"exact (x;q)_{n} hits a zero factor")
        prod *= factor
        yq *= q
    return 1 / prod


def qbracket_n(numers, denoms, q: Fraction, n: int) -> Fraction:
    """prod (x;q)_n / prod (y;q)_n in exact rational arithmetic."""
    num = Fraction(1)
    for x in numers:
        num *= qpoch(x, q, n)
    den = Fraction(1)
    for y in denoms:
        den *= qpoch(y, q, n)
    if den == 0:
        raise DivisionByZero("exact q-bracket denominator vanishes")
    return num / den


def saalschuetz_sides(a, b, c, n: int):
    """Both sides of the balanced terminating 3F2 summation, exactly."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    lhs = pfq_terminating([a, b, Fraction(-n)], [c, 1 + a + b - c - n], Fraction(1), n)
    rhs_den = rising(c, n) * rising(c - a - b, n)
    if rhs_den == 0:
        raise DivisionByZero("exact product side vanishes in the denominator")
    rhs = rising(c - a, n) * rising(c - b, n) / rhs_den
    return lhs, rhs


def phi_symmetric_terminating_sides(a, c, d, n: int):
    """Both sides of the terminating reduction of the symmetric Phi identity."""
    a, c, d = Fraction(a), Fraction(c), Fraction(d)
    lhs = pfq_terminating(
        [a, a + c + d - 1 - n, Fraction(-n)], [a + c - n, a + d - n], Fraction(1), n
    )
    rhs_den = rising(1 - a - c, n) * rising(1 - a - d, n)
    if rhs_den == 0:
        raise DivisionByZero("exact product side vanishes in the denominator")
    rhs = rising(1 - c, n) * rising(1 - d, n) / rhs_den
    return lhs, rhs


def jackson_8phi7_sides(a, b, c, d, q, n: int):
    """Both sides of the terminating very-well-poised 8phi7 summation, exactly.

    The +-sqrt(a) pairs are folded: uppers contribute (q^2 a; q^2)_k, lowers
    (a; q^2)_k, reproducing the (1 - a q^2k)/(1 - a) kernel without leaving
    the rationals.
    """
    a, b, c, d, q = (Fraction(v) for v in (a, b, c, d, q))
    big_a = q ** (1 + n) * a**2 / (b * c * d)
    low_b = b * c * d / (a * q**n)
    low_c = q ** (1 + n) * a
    total = Fraction(0)
    zk = Fraction(1)
    up = {
        "a": (a, q), "pair": (q * q * a, q * q), "b": (b, q), "c": (c, q),
        "d": (d, q), "A": (big_a, q), "N": (Fraction(1) / q**n, q),
    }
    low = {
        "q": (q, q), "pair": (a, q * q), "qab": (q * a / b, q), "qac": (q * a / c, q),
        "qad": (q * a / d, q), "B": (low_b, q), "C": (low_c, q),
    }
    upval = {k: Fraction(1) for k in up}
    lowval = {k: Fraction(1) for k in low}
    upcur = {k: v[0] for k, v in up.items()}
    lowcur = {k: v[0] for k, v in low.items()}
    for k in range(n + 1):
        num = Fraction(1)
        for key in upval:
            num *= upval[key]
        den = Fraction(1)
        for key in lowval:
            den *= lowval[key]
        if den == 0:
            raise DivisionByZero(f"exact 8phi7 hits a lower pole at k={k}")
        total += num / den * zk
        zk *= q
        for key, (_, step) in up.items():
            upval[key] *= 1 - upcur[key]
            upcur[key] *= step
        for key, (_, step) in low.items():
            lowval[key] *= 1 - lowcur[key]
            lowcur[key] *= step
    rhs = qbracket_n(
        [q * a, q * a / (b * c), q * a / (b * d), q * a / (c * d)],
        [q * a / b, q * a / c, q * a / d, q * a / (b * c * d)],
        q, n,
    )
    return total, rhs
