"""Special functions used by the rate bounds and the closed-form allocator.

Only three pieces are needed: the digamma function at positive integer
arguments, the principal branch of the Lambert W function (an exact iterative
solver plus the classic two-log approximation for large arguments), and the
Euler-Mascheroni constant. All of them are scalar, pure, and thread-safe.
"""

from __future__ import annotations

import math
import threading

# Euler-Mascheroni constant, accurate to the last float64 bit
# (0.57721566490153286060... truncated to double precision).
EULER_GAMMA = 0.5772156649015329

# ---------------------------------------------------------------------------
# digamma at positive integers
# ---------------------------------------------------------------------------

# Cumulative harmonic numbers H[n] = sum_{k=1}^{n} 1/k, grown on demand so that
# digamma(n) is O(1) amortized even when called for every n up to 1e4.
_harmonic = [0.0]
_harmonic_lock = threading.Lock()


def digamma(n):
    """Digamma function psi(n) for a positive integer n.

    Uses the exact recurrence psi(n) = -gamma + sum_{k=1}^{n-1} 1/k, which is
    the identity (no series truncation) for integer arguments.
    """
    if not isinstance(n, (int,)) or isinstance(n, bool):
        # Accept integer-valued floats defensively but reject everything else.
        if isinstance(n, float) and n.is_integer():
            n = int(n)
        else:
            raise TypeError(f"digamma requires a positive integer, got {n!r}")
    if n < 1:
        raise ValueError(f"digamma requires n >= 1, got {n}")
    idx = n - 1
    if idx >= len(_harmonic):
        with _harmonic_lock:
            # Re-check under the lock, then extend the cumulative sums.
            while len(_harmonic) <= idx:
                m = len(_harmonic)
                _harmonic.append(_harmonic[m - 1] + 1.0 / m)
    return -EULER_GAMMA + _harmonic[idx]


# ---------------------------------------------------------------------------
# Lambert W, principal branch
# ---------------------------------------------------------------------------

_INV_E = math.exp(-1.0)
_MAX_ITER = 100


def lambert_w0(x):
    """Principal-branch Lambert W: the real w >= -1 with w * exp(w) = x.

    Valid for x >= -1/e. Solved by Halley iteration to a residual
    |w e^w - x| <= 1e-12 * max(1, |x|); raises ArithmeticError if the
    iteration fails to reach that residual within the iteration cap.
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("lambert_w0 requires a real argument, got nan")
    if x < -_INV_E:
        # Allow for the representation error of -1/e itself.
        if x < -_INV_E * (1.0 + 1e-12) - 1e-300:
            raise ValueError(f"lambert_w0 requires x >= -1/e, got {x}")
        x = -_INV_E
    if x == 0.0:
        return 0.0

    # Initial guess: log1p(x) tracks W0 well on x >= 0; near the branch point
    # use the series W0(-1/e + eps) = -1 + p - p^2/3 + ... with p = sqrt(2 e eps).
    if x > 0.0:
        w = math.log1p(x)
        if x > math.e:
            # Large-argument asymptote converges in fewer steps.
            lx = math.log(x)
            w = lx - math.log(lx)
    else:
        p = math.sqrt(2.0 * (math.e * x + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0

    target = 1e-12 * max(1.0, abs(x))
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= target:
            return w
        # Halley step: f' = e^w (w + 1), f'' = e^w (w + 2).
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if w < -1.0:
            # Stay on the principal branch.
            w = -1.0 + 1e-16
    ew = math.exp(w)
    if abs(w * ew - x) <= target:
        return w
    raise ArithmeticError(f"lambert_w0 failed to converge for x={x}")


def lambert_w0_log_approx(x):
    """Two-log approximation to Lambert W0: log(x) - log(log(x)).

    Only defined for x > e, where log(log(x)) > 0 and the approximation's
    large-argument regime applies.
    """
    x = float(x)
    if not x > math.e:
        raise ValueError(f"lambert_w0_log_approx requires x > e, got {x}")
    lx = math.log(x)
    return lx - math.log(lx)
