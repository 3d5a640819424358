"""Closed-form max-min power and rate allocation.

Four candidate operating points are computed in closed form and the best one
is kept:

  1. Zero-forcing, power split balancing the two sides of the max-min
     objective in the moderate-t regime.
  2. Zero-forcing, power split from the small-t fixed point solved through
     the Lambert W function (shipped with its two-log approximation).
  3./4. Matched filtering, power splits from the two roots of the quadratic
     stationarity condition of the (approximated) objective.

Every candidate keeps beta = 0: giving group-1 users a share of the common
rate only drags the group-2 side down (the share objective below is strictly
decreasing in beta), so the common rate is reserved for group 2 entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from rsma.bounds import (
    lb_common_mrt,
    lb_common_zf,
    lb_private_mrt,
    lb_private_zf,
    mrt_bound_params,
    zf_bound_params,
)
from rsma.precoding import default_groups

SCHEME_ZF = "ZF-RSMA"
SCHEME_MRT = "MRT-RSMA"

# Numerical floor for the private power fraction before 1/t terms are
# evaluated. The closed forms never return 0 analytically, but extreme inputs
# could underflow.
MIN_T = 1e-9


@dataclass(frozen=True)
class Candidate:
    """One closed-form operating point.

    index : 1..4 (1-2 zero-forcing, 3-4 matched filtering).
    t : private power fraction in (0, 1].
    beta : common-rate share per group-1 user; always 0.
    r_mm : the candidate's predicted max-min rate (from the lower bounds).
    scheme : "ZF-RSMA" or "MRT-RSMA".
    """

    index: int
    t: float
    r_mm: float
    scheme: str
    beta: float = 0.0

    def __post_init__(self):
        if self.index not in (1, 2, 3, 4):
            raise ValueError(f"candidate index must be 1..4, got {self.index}")
        if not (0.0 < self.t <= 1.0):
            raise ValueError(f"candidate t must lie in (0, 1], got {self.t}")
        if self.beta != 0.0:
            raise ValueError("candidate beta is always 0")
        if not (self.r_mm >= 0.0 and math.isfinite(self.r_mm)):
            raise ValueError(f"candidate r_mm must be finite and >= 0, got {self.r_mm}")
        expected = SCHEME_ZF if self.index <= 2 else SCHEME_MRT
        if self.scheme != expected:
            raise ValueError(f"candidate {self.index} must use scheme {expected}")


@dataclass(frozen=True)
class AllocationDecision:
    """The selected candidate plus everything it was compared against."""

    chosen: Candidate
    all: tuple
    groups: object = None

    def __post_init__(self):
        values = [c.r_mm for c in self.all]
        best = max(values)
        if self.chosen.r_mm != best:
            raise ValueError("chosen candidate does not attain the maximum value")
        first_best = min(c.index for c in self.all if c.r_mm == best)
        if self.chosen.index != first_best:
            raise ValueError("ties must resolve to the smallest candidate index")

    @property
    def n_hat(self):
        return self.chosen.index

    @property
    def t_opt(self):
        return self.chosen.t

    @property
    def beta_opt(self):
        return 0.0


def _clamp_t(t):
    return min(1.0, max(MIN_T, t))


# ---------------------------------------------------------------------------
# Objective evaluators (shared by candidates, oracle comparisons and tests)
# ---------------------------------------------------------------------------


def zf_rate_objective(t, params, n_antennas, n_users):
    """Zero-forcing max-min bound value at beta = 0: the smaller of the
    group-2 common share and the weakest group-1 private rate."""
    return min(
        lb_common_zf(t, params) / (n_users - n_antennas),
        lb_private_zf(t, params),
    )


def mrt_rate_objective(t, params, n_users):
    """Matched-filter max-min bound value: equal 1/K common share plus the
    weakest private rate."""
    return lb_common_mrt(t, params) / n_users + lb_private_mrt(t, params)


def _mrt_approx_objective(t, params, n_users):
    """The approximated matched-filter objective whose stationarity yields the
    quadratic roots: the common term is taken as log2(rho / t)."""
    return math.log2(params.rho / t) / n_users + lb_private_mrt(t, params)


# ---------------------------------------------------------------------------
# Zero-forcing candidates
# ---------------------------------------------------------------------------


def candidate_zf_high(params, n_antennas, n_users):
    """Candidate 1: equalize the common share against the linearized private
    rate; closed form t = min{ (rho / sigma^(K-N))^(1/(1+K-N)), 1 }."""
    excess = n_users - n_antennas
    log_t = (math.log(params.rho) - excess * math.log(params.sigma)) / (1.0 + excess)
    t = _clamp_t(math.exp(log_t))
    return Candidate(
        index=1,
        t=t,
        r_mm=zf_rate_objective(t, params, n_antennas, n_users),
        scheme=SCHEME_ZF,
    )


def zf_low_delta(params, n_antennas, n_users):
    """Scale factor of the small-t fixed point: delta = ln(2) (K - N) sigma."""
    return math.log(2.0) * (n_users - n_antennas) * params.sigma


def candidate_zf_low(params, n_antennas, n_users):
    """Candidate 2: small-t balance solved via the two-log Lambert
    approximation; t = (log(delta rho) - log(log(delta rho))) / delta when
    delta * rho >= e, else t = 1."""
    delta = zf_low_delta(params, n_antennas, n_users)
    x = delta * params.rho
    if x >= math.e:
        u = math.log(x)
        t = _clamp_t((u - math.log(u)) / delta)
    else:
        t = 1.0
    return Candidate(
        index=2,
        t=t,
        r_mm=zf_rate_objective(t, params, n_antennas, n_users),
        scheme=SCHEME_ZF,
    )


# ---------------------------------------------------------------------------
# Matched-filter candidates
# ---------------------------------------------------------------------------


def candidates_mrt(params, n_antennas, n_users):
    """Candidates 3 and 4: the two roots of a t^2 + b t - 1 = 0 with
    a = -alpha*lam and b = K (alpha - lam) - (alpha + lam).

    A root is used only when the discriminant is nonnegative, b >= 0, and the
    root itself is positive and finite; otherwise that candidate falls back to
    t = 1. Candidate 3 takes the '+' root, candidate 4 the '-' root.
    """
    alpha, lam = params.alpha, params.lam
    a = -alpha * lam
    b = n_users * (alpha - lam) - (alpha + lam)
    disc = b * b + 4.0 * a
    out = []
    for index, sign in ((3, 1.0), (4, -1.0)):
        t = 1.0
        if disc >= 0.0 and b >= 0.0:
            root = (-b + sign * math.sqrt(disc)) / (2.0 * a)
            if math.isfinite(root) and root > 0.0:
                t = _clamp_t(root)
        out.append(
            Candidate(
                index=index,
                t=t,
                r_mm=mrt_rate_objective(t, params, n_users),
                scheme=SCHEME_MRT,
            )
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# Selection
# ---------------------------------------------------------------------------


def select(config, groups=None):
    """Build all four candidates for a configuration and keep the best.

    The zero-forcing coefficients use the weakest large-scale gain inside
    group 1; the matched-filter coefficients use the global weakest gain.
    Ties resolve to the smallest candidate index. beta is 0 always.
    """
    if groups is None:
        groups = default_groups(config)
    n, k = config.n_antennas, config.n_users
    zf = zf_bound_params(config, groups)
    mrt = mrt_bound_params(config)
    cands = (
        candidate_zf_high(zf, n, k),
        candidate_zf_low(zf, n, k),
        *candidates_mrt(mrt, n, k),
    )
    best = max(c.r_mm for c in cands)
    chosen = next(c for c in cands if c.r_mm == best)
    return AllocationDecision(chosen=chosen, all=cands, groups=groups)


# ---------------------------------------------------------------------------
# The share objective behind beta = 0
# ---------------------------------------------------------------------------


def zf_t_for_share(beta, params, n_antennas, n_users):
    """Balance point of the zero-forcing objective when each group-1 user is
    granted a common-rate share beta:
    t(beta) = (rho^(1 - K beta) / sigma^(K - N))^(1 / (1 - K beta + K - N))."""
    excess = n_users - n_antennas
    top = (1.0 - n_users * beta) * math.log(params.rho) - excess * math.log(
        params.sigma
    )
    return math.exp(top / (1.0 - n_users * beta + excess))


def zf_group2_rate_at_share(beta, params, n_antennas, n_users):
    """Group-2 side of the zero-forcing objective at the balance point for a
    given share beta. Strictly decreasing in beta whenever sigma > 1, which is
    why every shipped candidate keeps beta = 0."""
    t = zf_t_for_share(beta, params, n_antennas, n_users)
    return (
        (1.0 - n_antennas * beta)
        / (n_users - n_antennas)
        * lb_common_zf(_clamp_t(t), params)
    )
