"""Instantaneous SINRs and Monte Carlo ergodic rates.

The common stream is decoded first by every user while all private streams are
still present as interference; after successive interference cancellation each
user decodes its own private stream against the other private streams only.
With total power P split as (1 - t) to the common stream and t to the private
streams (shares mu_k), the per-realization SINRs are

    gamma_c,k = P (1-t) v_k |h_k^H p_c|^2 / (1 + P t v_k sum_j mu_j |h_k^H p_j|^2)
    gamma_k   = mu_k P t v_k |h_k^H p_k|^2 / (1 + P t v_k sum_{j!=k} mu_j |h_k^H p_j|^2)

The common ergodic rate takes the minimum over users inside the expectation
(every user must decode the shared stream); private ergodic rates are per-user
expectations. All estimators are driven by per-trial seeded streams, so
results are reproducible and order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rsma.channel import draw_channel_batch
from rsma.precoding import (
    common_directions_batch,
    mrt_columns_batch,
    zf_columns_batch,
)

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SinrSnapshot:
    """Per-user SINRs for one channel realization."""

    gamma_common: np.ndarray
    gamma_private: np.ndarray

    def __post_init__(self):
        gc = np.asarray(self.gamma_common, dtype=np.float64)
        gp = np.asarray(self.gamma_private, dtype=np.float64)
        if gc.shape != gp.shape or gc.ndim != 1:
            raise ValueError("SINR vectors must be 1-D and of equal length")
        if not (np.all(np.isfinite(gc)) and np.all(np.isfinite(gp))):
            raise ValueError("SINRs must be finite")
        if np.any(gc < 0) or np.any(gp < 0):
            raise ValueError("SINRs must be nonnegative")
        object.__setattr__(self, "gamma_common", gc)
        object.__setattr__(self, "gamma_private", gp)


@dataclass(frozen=True)
class ErgodicRates:
    """Monte Carlo rate estimates in bits/s/Hz.

    common_rate is E log2(1 + min_k gamma_c,k); private_rates[k] is
    E log2(1 + gamma_k). std_error is the largest standard error among the
    common-rate estimate and the K private-rate estimates (a single
    conservative figure for the whole object).
    """

    common_rate: float
    private_rates: np.ndarray
    trials_used: int
    std_error: float

    def __post_init__(self):
        pr = np.asarray(self.private_rates, dtype=np.float64)
        if self.common_rate < 0 or np.any(pr < 0):
            raise ValueError("rates must be nonnegative")
        if self.std_error < 0:
            raise ValueError("std_error must be nonnegative")
        object.__setattr__(self, "private_rates", pr)


# ---------------------------------------------------------------------------
# Core evaluation
# ---------------------------------------------------------------------------


def _stream_gains(h, p_common, p_private):
    """Squared stream gains for a trial stack.

    h : (T, N, K), p_common : (T, N), p_private : (T, N, K).
    Returns (a, q) with a[t, k] = |h_k^H p_c|^2 and
    q[t, k, j] = |h_k^H p_j|^2.
    """
    ac = np.einsum("tnk,tn->tk", h.conj(), p_common)
    cross = np.einsum("tnk,tnj->tkj", h.conj(), p_private)
    return np.abs(ac) ** 2, np.abs(cross) ** 2


def _sinr_from_gains(a, q, v, power, t, mu):
    """Vectorized SINRs from precomputed gains.

    a : (T, K), q : (T, K, K), v : (K,), mu : (K,). Returns
    (gamma_common, gamma_private), each (T, K).
    """
    v = np.asarray(v, dtype=np.float64)
    mu = np.asarray(mu, dtype=np.float64)
    weighted = q @ mu  # (T, K): sum_j mu_j |h_k^H p_j|^2
    self_gain = np.einsum("tkk->tk", q) * mu[None, :]
    pv = power * v[None, :]
    gamma_common = (pv * (1.0 - t) * a) / (1.0 + pv * t * weighted)
    gamma_private = (pv * t * self_gain) / (1.0 + pv * t * (weighted - self_gain))
    return gamma_common, gamma_private


def _rates_from_gains(a, q, v, power, t, mu):
    """ErgodicRates from precomputed gains (the shared estimator core)."""
    gamma_common, gamma_private = _sinr_from_gains(a, q, v, power, t, mu)
    n_trials = a.shape[0]
    common_samples = np.log1p(np.min(gamma_common, axis=1)) / _LN2
    private_samples = np.log1p(gamma_private) / _LN2  # (T, K)
    common_rate = float(common_samples.mean())
    private_rates = private_samples.mean(axis=0)
    if n_trials > 1:
        ses = [float(common_samples.std(ddof=1)) / math.sqrt(n_trials)]
        ses.extend(private_samples.std(axis=0, ddof=1) / math.sqrt(n_trials))
        std_error = float(max(ses))
    else:
        std_error = 0.0
    return ErgodicRates(
        common_rate=common_rate,
        private_rates=private_rates,
        trials_used=n_trials,
        std_error=std_error,
    )


def instant_sinr(realization, precoders, power):
    """SINRs of one realization under one precoder set, straight from the
    generic formulas (no group-structure shortcuts)."""
    h = realization.h[None, :, :]
    a, q = _stream_gains(h, precoders.common[None, :], precoders.private[None, :, :])
    gc, gp = _sinr_from_gains(a, q, realization.v, power, precoders.t, precoders.mu)
    return SinrSnapshot(gamma_common=gc[0], gamma_private=gp[0])


# ---------------------------------------------------------------------------
# Ergodic rates for the RSMA schemes
# ---------------------------------------------------------------------------


def _zf_mu(n_antennas, n_users, g1):
    mu = np.zeros(n_users)
    mu[list(g1)] = 1.0 / n_antennas
    return mu


def ergodic_rates_zf(config, groups, t):
    """Monte Carlo ergodic rates with zero-forcing private beams on group 1
    (shares mu = 1/N there, 0 elsewhere) and the common beam for everyone."""
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    h = draw_channel_batch(config, config.trials)
    p_private = np.zeros_like(h)
    p_private[:, :, list(groups.g1)] = zf_columns_batch(h, groups.g1)
    p_common = common_directions_batch(h)
    mu = _zf_mu(config.n_antennas, config.n_users, groups.g1)
    a, q = _stream_gains(h, p_common, p_private)
    return _rates_from_gains(a, q, config.large_scale, config.power, t, mu)


def ergodic_rates_mrt(config, t):
    """Monte Carlo ergodic rates with matched-filter private beams for all
    users (shares mu = 1/K) and the common beam."""
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    h = draw_channel_batch(config, config.trials)
    p_private = mrt_columns_batch(h)
    p_common = common_directions_batch(h)
    mu = np.full(config.n_users, 1.0 / config.n_users)
    a, q = _stream_gains(h, p_common, p_private)
    return _rates_from_gains(a, q, config.large_scale, config.power, t, mu)


def min_rate_rsma_zf(rates, beta, n_antennas, n_users):
    """Max-min objective value of the zero-forcing split.

    Each group-1 user gets its private rate plus a share beta of the common
    rate; group-2 users split the remaining common rate evenly. Group-2 users
    carry no private stream, so their private-rate entries are exactly zero
    and the minimum over group 1 is the (K - N)-th smallest private rate.
    """
    if not (0.0 <= beta < 1.0 / n_antennas):
        raise ValueError(f"beta must lie in [0, 1/N), got {beta}")
    r_c = rates.common_rate
    served_min = float(np.sort(rates.private_rates)[n_users - n_antennas])
    g1_term = beta * r_c + served_min
    g2_term = (1.0 - n_antennas * beta) / (n_users - n_antennas) * r_c
    return min(g1_term, g2_term)


def min_rate_rsma_mrt(rates, n_users):
    """Max-min objective value of the matched-filter split: every user gets an
    equal 1/K share of the common rate plus its own private rate."""
    return rates.common_rate / n_users + float(np.min(rates.private_rates))


# ---------------------------------------------------------------------------
# SDMA baselines (private streams only, t = 1, equal power)
# ---------------------------------------------------------------------------


def _grouped_zf_columns(h, n_antennas):
    """Per-group zero-forcing columns for the index partition into
    ceil(K / N) consecutive groups. h : (T, N, K); returns (T, N, K)."""
    n_users = h.shape[2]
    p = np.empty_like(h)
    for start in range(0, n_users, n_antennas):
        idx = tuple(range(start, min(start + n_antennas, n_users)))
        p[:, :, list(idx)] = zf_columns_batch(h, idx)
    return p


def _sdma_min_rate_from_precoders(h, p_private, v, power):
    """Minimum ergodic rate with equal private power and no common stream.
    h : (T, N, K); p_private : matching precoder stack."""
    n_users = h.shape[2]
    mu = np.full(n_users, 1.0 / n_users)
    # Any unit vector works for the common beam: with t = 1 the common stream
    # carries no power and its SINR is identically zero.
    p_common = np.zeros((h.shape[0], h.shape[1]), dtype=np.complex128)
    p_common[:, 0] = 1.0
    a, q = _stream_gains(h, p_common, p_private)
    rates = _rates_from_gains(a, q, v, power, 1.0, mu)
    return float(np.min(rates.private_rates))


def sdma_zf_grouped(config):
    """SDMA baseline 1: users are split by index into ceil(K / N) groups of at
    most N; zero-forcing nulls interference inside each group only; all groups
    transmit at once with equal per-user power. Returns the minimum over users
    of the ergodic private rate (inter-group interference included)."""
    h = draw_channel_batch(config, config.trials)
    p_private = _grouped_zf_columns(h, config.n_antennas)
    return _sdma_min_rate_from_precoders(h, p_private, config.large_scale, config.power)


def sdma_mrt(config):
    """SDMA baseline 2: matched-filter beams for all users, equal per-user
    power, no common stream. Returns the minimum ergodic private rate."""
    h = draw_channel_batch(config, config.trials)
    p_private = mrt_columns_batch(h)
    return _sdma_min_rate_from_precoders(h, p_private, config.large_scale, config.power)
