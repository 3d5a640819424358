"""Closed-form coefficients and ergodic-rate lower bounds.

The Monte Carlo rates of the simulator admit closed-form lower bounds built
from three ingredients: a coefficient rho capturing the high-SNR behavior of
the common stream's worst-user SINR, exponential-of-digamma factors capturing
the geometric mean of the relevant channel gains, and the large-scale gain of
the weakest user in the relevant set. The common-stream bounds are asymptotic
(they hold as the private power P*t grows large); the private-stream bounds
hold at any SNR. Evaluators compute the formulas on their full domains and
leave regime judgments to the callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rsma.specfun import EULER_GAMMA, digamma

_LN2 = math.log(2.0)


def _round_half_away(x):
    # Positive arguments only; round-half-away-from-zero equals floor(x + 0.5).
    return int(math.floor(x + 0.5))


def _check_overloaded(n_antennas, n_users):
    if n_antennas < 1:
        raise ValueError(f"n_antennas must be >= 1, got {n_antennas}")
    if n_users <= n_antennas:
        raise ValueError(
            f"requires n_users > n_antennas, got K={n_users}, N={n_antennas}"
        )


def rho_zf(n_antennas, n_users):
    """Common-stream coefficient for the zero-forcing scheme.

    With m the nearest integer to N * (K - N + 1),
    rho = N / (m - 1) * exp(-gamma - 1 / (2 (m - 1))).
    """
    _check_overloaded(n_antennas, n_users)
    m = _round_half_away(n_antennas * (n_users - n_antennas + 1))
    if m < 2:
        raise ValueError(f"degenerate coefficient denominator (m={m})")
    d = m - 1
    return n_antennas / d * math.exp(-EULER_GAMMA - 1.0 / (2.0 * d))


def rho_mrt(n_antennas, n_users):
    """Common-stream coefficient for the matched-filter scheme.

    With d = (N + K - 1) * K - 1,
    rho = K / d * exp(-gamma - 1 / (2 d)).
    """
    _check_overloaded(n_antennas, n_users)
    d = (n_antennas + n_users - 1) * n_users - 1
    return n_users / d * math.exp(-EULER_GAMMA - 1.0 / (2.0 * d))


@dataclass(frozen=True)
class ZfBoundParams:
    """Bound coefficients for the zero-forcing scheme.

    rho : common-stream coefficient in (0, 1).
    sigma : v_min_g1 * (P / N) * exp(psi(1)), the private-SINR scale of the
        weakest group-1 user.
    v_min_g1 : smallest large-scale gain inside group 1.
    """

    rho: float
    sigma: float
    v_min_g1: float

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class MrtBoundParams:
    """Bound coefficients for the matched-filter scheme.

    rho : common-stream coefficient in (0, 1).
    alpha : v_min * (P / K) * exp(psi(N + K - 1)), the private-signal scale.
    lam : v_min * P * (K - 1) / K, the private-interference scale.
    v_min : smallest large-scale gain over all users.
    """

    rho: float
    alpha: float
    lam: float
    v_min: float

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if not (self.alpha > 0.0 and self.lam > 0.0):
            raise ValueError("alpha and lam must be positive")


def zf_bound_params(config, groups):
    """Coefficients for the zero-forcing bounds from a system configuration.
    The large-scale gain entering sigma is the minimum over group 1."""
    n, k = config.n_antennas, config.n_users
    v_min_g1 = min(config.large_scale[i] for i in groups.g1)
    sigma = v_min_g1 * config.power / n * math.exp(digamma(1))
    return ZfBoundParams(rho=rho_zf(n, k), sigma=sigma, v_min_g1=v_min_g1)


def mrt_bound_params(config):
    """Coefficients for the matched-filter bounds from a system configuration.
    The large-scale gain entering alpha and lam is the global minimum."""
    n, k = config.n_antennas, config.n_users
    v_min = min(config.large_scale)
    alpha = v_min * config.power / k * math.exp(digamma(n + k - 1))
    lam = v_min * config.power * (k - 1) / k
    return MrtBoundParams(rho=rho_mrt(n, k), alpha=alpha, lam=lam, v_min=v_min)


# ---------------------------------------------------------------------------
# Lower-bound evaluators
# ---------------------------------------------------------------------------


def _check_t_closed(t):
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t}")


def _check_t_open(t):
    if not (0.0 < t <= 1.0):
        raise ValueError(f"t must lie in (0, 1], got {t}")


def lb_private_zf(t, params):
    """Lower bound on the weakest group-1 user's private ergodic rate:
    log2(1 + sigma * t). Valid at any SNR."""
    _check_t_closed(t)
    return math.log1p(params.sigma * t) / _LN2


def lb_common_zf(t, params):
    """Asymptotic lower bound on the common ergodic rate under zero-forcing:
    log2(1 - rho + rho / t). Requires t > 0."""
    _check_t_open(t)
    return math.log2(1.0 - params.rho + params.rho / t)


def lb_private_mrt(t, params):
    """Lower bound on the weakest user's private ergodic rate under matched
    filtering: log2(1 + alpha t) - log2(1 + lam t). Valid at any SNR."""
    _check_t_closed(t)
    return (math.log1p(params.alpha * t) - math.log1p(params.lam * t)) / _LN2


def lb_common_mrt(t, params):
    """Asymptotic lower bound on the common ergodic rate under matched
    filtering: log2(1 - rho + rho / t). Requires t > 0."""
    _check_t_open(t)
    return math.log2(1.0 - params.rho + params.rho / t)
