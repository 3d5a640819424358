"""Exhaustive grid search over the power split t and the common-rate share
beta, used to validate the closed-form allocator.

The search scores grid points with the same lower-bound objectives the
allocator uses (not with Monte Carlo rates); an optional mode re-scores the
top grid points with Monte Carlo rates for reporting. The t grid is dense
logarithmically near zero, where the common-rate term 1/t varies fastest, and
linear above 0.1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rsma.allocator import SCHEME_MRT, SCHEME_ZF
from rsma.bounds import mrt_bound_params, zf_bound_params
from rsma.precoding import default_groups
from rsma.rates import (
    ergodic_rates_mrt,
    ergodic_rates_zf,
    min_rate_rsma_mrt,
    min_rate_rsma_zf,
)

T_GRID_SIZE = 130
T_LOG_POINTS = 60
T_LIN_POINTS = 70
T_MIN = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """The (t, beta) search grid.

    t_values : 130 ascending points spanning [1e-6, 1].
    beta_values : ceil(1000 / K) ascending points spanning [0, 1/K].
    """

    t_values: np.ndarray
    beta_values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_values, dtype=np.float64)
        b = np.asarray(self.beta_values, dtype=np.float64)
        if t.ndim != 1 or b.ndim != 1:
            raise ValueError("grid axes must be 1-D")
        if np.any(np.diff(t) <= 0) or np.any(np.diff(b) < 0):
            raise ValueError("grid axes must be sorted ascending")
        object.__setattr__(self, "t_values", t)
        object.__setattr__(self, "beta_values", b)


def build_grid(n_users):
    """Standard search grid for K users: 60 log-spaced t on [1e-6, 0.1) plus
    70 linear t on [0.1, 1], and ceil(1000 / K) uniform beta on [0, 1/K]."""
    if n_users < 2:
        raise ValueError(f"build_grid requires n_users >= 2, got {n_users}")
    t = np.concatenate(
        [
            np.geomspace(T_MIN, 0.1, T_LOG_POINTS, endpoint=False),
            np.linspace(0.1, 1.0, T_LIN_POINTS),
        ]
    )
    n_beta = -(-1000 // n_users)  # integer ceil(1000 / K)
    beta = np.linspace(0.0, 1.0 / n_users, n_beta)
    return GridSpec(t_values=t, beta_values=beta)


@dataclass(frozen=True)
class OracleResult:
    """Best grid point under the bound objective, plus optional Monte Carlo
    re-evaluations of the top grid points.

    mc_evaluations entries are (scheme, t, beta, bound_value, mc_min_rate),
    ordered by descending bound value.
    """

    scheme: str
    t: float
    beta: float
    value: float
    mc_evaluations: tuple = ()

    @property
    def mc_best(self):
        """Best Monte Carlo re-evaluation (None when the mode is off)."""
        if not self.mc_evaluations:
            return None
        return max(self.mc_evaluations, key=lambda e: e[4])


def zf_objective_table(params, n_antennas, n_users, grid):
    """Bound objective of the zero-forcing scheme on the full (t, beta) grid.
    Rows follow t, columns follow beta."""
    t = grid.t_values
    beta = grid.beta_values
    common = np.log2(1.0 - params.rho + params.rho / t)  # (T,)
    private = np.log1p(params.sigma * t) / np.log(2.0)  # (T,)
    g1_side = beta[None, :] * common[:, None] + private[:, None]
    g2_side = (
        (1.0 - n_antennas * beta[None, :])
        / (n_users - n_antennas)
        * common[:, None]
    )
    return np.minimum(g1_side, g2_side)


def mrt_objective_curve(params, n_users, grid):
    """Bound objective of the matched-filter scheme along the t grid."""
    t = grid.t_values
    common = np.log2(1.0 - params.rho + params.rho / t)
    private = (np.log1p(params.alpha * t) - np.log1p(params.lam * t)) / np.log(2.0)
    return common / n_users + private


def exhaustive_search(config, groups=None, grid=None, mc_top_k=0):
    """Search the full grid for the best bound-objective value.

    The zero-forcing objective is searched over (t, beta); the matched-filter
    objective over t alone. Ties resolve to the smaller t, then the smaller
    beta, with zero-forcing preferred over matched filtering. When
    mc_top_k > 0, the top grid points by bound value are re-evaluated with
    Monte Carlo rates and attached to the result.
    """
    if groups is None:
        groups = default_groups(config)
    if grid is None:
        grid = build_grid(config.n_users)
    n, k = config.n_antennas, config.n_users

    zf_params = zf_bound_params(config, groups)
    mrt_params = mrt_bound_params(config)
    zf_table = zf_objective_table(zf_params, n, k, grid)
    mrt_curve = mrt_objective_curve(mrt_params, k, grid)

    # Row-major argmax walks t first, then beta, so the first maximum is
    # automatically the smallest-t, smallest-beta tie winner.
    zf_flat = int(np.argmax(zf_table))
    zf_i, zf_j = np.unravel_index(zf_flat, zf_table.shape)
    zf_value = float(zf_table[zf_i, zf_j])
    mrt_i = int(np.argmax(mrt_curve))
    mrt_value = float(mrt_curve[mrt_i])

    if zf_value >= mrt_value:
        best = (
            SCHEME_ZF,
            float(grid.t_values[zf_i]),
            float(grid.beta_values[zf_j]),
            zf_value,
        )
    else:
        best = (SCHEME_MRT, float(grid.t_values[mrt_i]), 0.0, mrt_value)

    mc_evaluations = ()
    if mc_top_k > 0:
        mc_evaluations = _mc_reevaluate(
            config, groups, grid, zf_table, mrt_curve, mc_top_k
        )

    return OracleResult(
        scheme=best[0],
        t=best[1],
        beta=best[2],
        value=best[3],
        mc_evaluations=mc_evaluations,
    )


def _mc_reevaluate(config, groups, grid, zf_table, mrt_curve, top_k):
    """Monte Carlo re-evaluation of the top_k grid points by bound value."""
    n, k = config.n_antennas, config.n_users
    entries = []
    for i in range(zf_table.shape[0]):
        for j in range(zf_table.shape[1]):
            entries.append(
                (
                    -zf_table[i, j],
                    float(grid.t_values[i]),
                    float(grid.beta_values[j]),
                    0,  # zero-forcing sorts before matched filtering on ties
                    SCHEME_ZF,
                )
            )
    for i in range(mrt_curve.shape[0]):
        entries.append((-mrt_curve[i], float(grid.t_values[i]), 0.0, 1, SCHEME_MRT))
    entries.sort()
    picked = entries[:top_k]

    out = []
    zf_rate_cache = {}
    mrt_rate_cache = {}
    for neg_value, t, beta, _, scheme in picked:
        if scheme == SCHEME_ZF:
            if t not in zf_rate_cache:
                zf_rate_cache[t] = ergodic_rates_zf(config, groups, t)
            mc = min_rate_rsma_zf(zf_rate_cache[t], beta, n, k)
        else:
            if t not in mrt_rate_cache:
                mrt_rate_cache[t] = ergodic_rates_mrt(config, t)
            mc = min_rate_rsma_mrt(mrt_rate_cache[t], k)
        out.append((scheme, t, beta, float(-neg_value), float(mc)))
    return tuple(out)
