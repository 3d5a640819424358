"""Seeded generation of small-scale and large-scale fading.

Small-scale fading is an N x K matrix of i.i.d. circularly-symmetric complex
Gaussian entries with unit variance (column k is user k's channel). Large-scale
fading is a per-user gain v_k in (0, 1], drawn uniformly with the first user
pinned to the weakest gain 0.1 and the last user pinned to 1.0 so that both
extremes are always present.

Randomness is addressed by (seed, trial_index) pairs through numpy's
SeedSequence mechanism, so any trial can be regenerated in isolation and
trials can be evaluated in parallel without sharing generator state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_MAX_SEED = 2**64


def _check_seed(seed):
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    if not (0 <= seed < _MAX_SEED):
        raise ValueError(f"seed must fit in 64 bits, got {seed}")


@dataclass(frozen=True)
class SystemConfig:
    """Full parameterization of one experiment.

    Fields
    ------
    n_antennas : int
        N, transmit antennas.
    n_users : int
        K, single-antenna users; the overloaded regime K > N is required.
    power : float
        P, total transmit power (linear scale).
    large_scale : tuple of float
        Per-user large-scale fading gains v_k, each in (0, 1].
    trials : int
        Monte Carlo channel realizations per estimate.
    seed : int
        64-bit base seed; all randomness derives from (seed, trial_index).
    """

    n_antennas: int
    n_users: int
    power: float
    large_scale: tuple = field(default=())
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError(f"n_antennas must be >= 1, got {self.n_antennas}")
        if self.n_users <= self.n_antennas:
            raise ValueError(
                "overloaded regime requires n_users > n_antennas, got "
                f"K={self.n_users}, N={self.n_antennas}"
            )
        if not (self.power > 0.0 and math.isfinite(self.power)):
            raise ValueError(f"power must be positive and finite, got {self.power}")
        v = tuple(float(x) for x in self.large_scale)
        if len(v) != self.n_users:
            raise ValueError(
                f"large_scale must have one entry per user ({self.n_users}), got {len(v)}"
            )
        for x in v:
            if not (0.0 < x <= 1.0):
                raise ValueError(f"large-scale gains must lie in (0, 1], got {x}")
        object.__setattr__(self, "large_scale", v)
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        _check_seed(self.seed)

    @property
    def v_min(self):
        return min(self.large_scale)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the N x K channel matrix plus the gains in effect."""

    h: np.ndarray
    v: tuple

    def __post_init__(self):
        h = np.asarray(self.h, dtype=np.complex128)
        if h.ndim != 2:
            raise ValueError(f"h must be an N x K matrix, got shape {h.shape}")
        if not np.all(np.isfinite(h.view(np.float64))):
            raise ValueError("channel matrix contains non-finite entries")
        v = tuple(float(x) for x in self.v)
        if len(v) != h.shape[1]:
            raise ValueError("v must have one entry per user (column of h)")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "v", v)


def _trial_rng(seed, trial_index):
    # The leading 0 keeps small-scale trial streams disjoint from the
    # large-scale stream, which lives under a leading 1.
    return np.random.default_rng((seed, 0, trial_index))


def draw_channel(config, trial_index):
    """Draw small-scale fading for one trial.

    Each entry of the returned N x K matrix is an independent CN(0, 1) sample
    (real and imaginary parts each with variance 1/2). The draw is a pure
    function of (config.seed, trial_index).
    """
    if trial_index < 0:
        raise ValueError(f"trial_index must be >= 0, got {trial_index}")
    rng = _trial_rng(config.seed, trial_index)
    parts = rng.standard_normal((2, config.n_antennas, config.n_users))
    h = (parts[0] + 1j * parts[1]) * _SQRT_HALF
    return ChannelRealization(h=h, v=config.large_scale)


def draw_channel_batch(config, n_trials, start=0):
    """Stack `n_trials` consecutive channel draws into one (T, N, K) array.

    Trial i of the batch is bit-identical to draw_channel(config, start + i);
    batching only amortizes array allocation, it does not change the per-trial
    random streams.
    """
    n, k = config.n_antennas, config.n_users
    out = np.empty((n_trials, n, k), dtype=np.complex128)
    for i in range(n_trials):
        rng = _trial_rng(config.seed, start + i)
        parts = rng.standard_normal((2, n, k))
        out[i] = (parts[0] + 1j * parts[1]) * _SQRT_HALF
    return out


def draw_large_scale(k_users, seed):
    """Draw per-user large-scale gains for K users.

    The first user is pinned to 0.1 and the last to 1.0; the remaining K - 2
    gains are i.i.d. uniform on [0.1, 1]. Requires K >= 2 so both pinned
    extremes fit. Deterministic for a fixed seed.
    """
    if k_users < 2:
        raise ValueError(f"draw_large_scale requires k_users >= 2, got {k_users}")
    _check_seed(seed)
    rng = np.random.default_rng((seed, 1))
    v = rng.uniform(0.1, 1.0, size=k_users)
    v[0] = 0.1
    v[-1] = 1.0
    return tuple(float(x) for x in v)
