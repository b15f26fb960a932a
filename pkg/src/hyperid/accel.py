"""Nonlinear sequence transformations: Levin u-transform and Wynn epsilon.

The Levin u-transform is the workhorse for the k^-2 algebraic tails this
package meets (direct summation of those gains about one digit per decade
of terms). Wynn's epsilon algorithm is kept as an independent cross-check.

Both tables amplify rounding error as they deepen, so callers run them at a
boosted precision and this module tracks the best estimate seen, stopping
once the diagonal starts to churn instead of converge.
"""

from __future__ import annotations

from mpmath import mp, mpf

from .errors import AccelerationFailed, NumericalBreakdown


def levin_core(terms, *, tol_target, accept_tol, cap, beta=1, err_floor=None):
    """Incremental Levin u-transform over a term stream.

    terms       iterable of mp numbers (series terms, not partial sums)
    tol_target  relative tolerance for early stop
    accept_tol  relative tolerance below which the best estimate is accepted
                once cap is reached (above it -> AccelerationFailed)
    cap         maximum number of terms consumed
    err_floor   relative floor added to the reported error estimate

    Returns (value, err_estimate, terms_used). The error estimate is the
    difference between the last two diagonal entries, floored at err_floor
    relative; honesty of the estimate is a test-suite property, not a proof.
    """
    if err_floor is None:
        err_floor = mpf(10) ** (-(mp.dps - 4))
    num, den = [], []
    partial = mpf(0)
    val_prev = None
    best = best_err = None
    hits = 0
    used = 0
    zero_run = 0
    for t in terms:
        if used >= cap:
            break
        used += 1
        partial = partial + t
        if t == 0:
            # a numerator factor crossed zero; the transform skips the entry
            zero_run += 1
            if zero_run >= 3:
                return partial, abs(partial) * err_floor, used
            continue
        zero_run = 0
        m = len(num)
        omega = (beta + m) * t
        num.append(partial / omega)
        den.append(1 / omega)
        for k in range(1, m + 1):
            j = m - k
            if k == 1:
                c = mpf(1)
            else:
                c = (beta + j) * mpf(beta + j + k - 1) ** (k - 2) / mpf(beta + j + k) ** (k - 1)
            num[j] = num[j + 1] - c * num[j]
            den[j] = den[j + 1] - c * den[j]
        if len(num) >= 2 and den[0] != 0:
            val = num[0] / den[0]
            if val_prev is not None:
                err = abs(val - val_prev)
                scale = abs(val)
                if scale == 0:
                    scale = mpf(1)
                if best_err is None or err < best_err:
                    best, best_err = val, err
                if err <= tol_target * scale:
                    hits += 1
                    if hits >= 2:
                        return val, max(err, scale * err_floor), used
                else:
                    hits = 0
                # deep in the table roundoff takes over; stop once estimates
                # have degraded far past the best one seen
                if len(num) > 30 and err > best_err * mpf(10) ** 8:
                    break
            val_prev = val
    if best is not None:
        scale = abs(best)
        if scale == 0:
            scale = mpf(1)
        if best_err <= accept_tol * scale:
            return best, max(best_err, scale * err_floor), used
    raise AccelerationFailed(
        f"Levin u-transform stagnated after {used} terms "
        f"(best error {best_err if best_err is not None else 'n/a'})"
    )


def wynn_core(partials):
    """Wynn epsilon algorithm over a list of partial sums.

    Returns (value, err_gauge) where value is the deepest even-column entry.
    The gauge combines the step between the last two even columns with the
    scatter inside the final column scaled by the table depth; on stalled
    (logarithmically convergent) input the within-column scatter is what
    reveals the remaining distance to the limit. Column construction stops
    at near-equal adjacent entries (cancellation); if that happens before
    any even column exists, NumericalBreakdown is raised.
    """
    if len(partials) < 5:
        raise ValueError("wynn epsilon needs at least 5 partial sums")
    tiny = mpf(10) ** (-(mp.dps - 4))
    if all(p == partials[0] for p in partials):
        return partials[0], mpf(0)
    prev = [mpf(0)] * (len(partials) + 1)
    curr = list(partials)
    col = 0
    even_vals = [partials[-1]]
    even_scatter = mpf(0)
    while len(curr) >= 2:
        nxt = []
        stop = False
        for i in range(len(curr) - 1):
            d = curr[i + 1] - curr[i]
            scale = max(abs(curr[i + 1]), abs(curr[i]), mpf(1))
            if d == 0 or abs(d) < tiny * scale:
                stop = True
                break
            nxt.append(prev[i + 1] + 1 / d)
        if not nxt:
            break
        col += 1
        prev, curr = curr, nxt
        if col % 2 == 0:
            even_vals.append(curr[-1])
            even_scatter = abs(curr[-1] - curr[-2]) if len(curr) >= 2 else mpf(0)
        if stop:
            break
    if col < 2:
        if partials[-1] == partials[-2]:
            return partials[-1], mpf(0)
        raise NumericalBreakdown("epsilon table broke down before any even column")
    err = abs(even_vals[-1] - even_vals[-2]) if len(even_vals) >= 2 else mpf("inf")
    depth = max(1, col // 2)
    return even_vals[-1], err + depth * even_scatter
