"""Precoder construction: zero-forcing inside group 1, matched filtering for
all users, and the common beam shared by every user.

Group 1 holds the N users whose private streams are zero-forced against each
other; group 2 users receive no private stream (zero column, zero power share).
The common beam is the leading left singular vector of the channel matrix with
a deterministic phase convention.

All builders exist in two forms: a single-realization form operating on a
ChannelRealization (the public entry point) and a batched core operating on a
(T, N, K) trial stack (used by the Monte Carlo engine). The batched cores are
the same arithmetic, vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Condition number above which the group-1 channel submatrix is treated as
# rank deficient. Under continuous fading this is a probability-zero event,
# so hitting it almost surely indicates misuse (duplicated columns etc.).
COND_LIMIT = 1e12


@dataclass(frozen=True)
class UserGroups:
    """Partition of the K users into the zero-forced group and the rest.

    g1 and g2 are disjoint tuples of 0-based user indices covering {0..K-1};
    g1 holds the users that get private streams under zero-forcing.
    """

    g1: tuple
    g2: tuple

    def __post_init__(self):
        g1 = tuple(int(i) for i in self.g1)
        g2 = tuple(int(i) for i in self.g2)
        if set(g1) & set(g2):
            raise ValueError("g1 and g2 must be disjoint")
        k = len(g1) + len(g2)
        if set(g1) | set(g2) != set(range(k)):
            raise ValueError("g1 and g2 must partition the user indices 0..K-1")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)

    @property
    def n_users(self):
        return len(self.g1) + len(self.g2)


@dataclass(frozen=True)
class PrecoderSet:
    """Common beam, per-user private beams, power shares, and power split.

    common : (N,) complex unit vector.
    private : (N, K) complex; each column has norm 1 or is exactly zero.
    mu : (K,) power shares in [0, 1] with sum <= 1.
    t : fraction of total power given to private streams, in [0, 1].
    """

    common: np.ndarray
    private: np.ndarray
    mu: np.ndarray
    t: float

    def __post_init__(self):
        common = np.asarray(self.common, dtype=np.complex128)
        private = np.asarray(self.private, dtype=np.complex128)
        mu = np.asarray(self.mu, dtype=np.float64)
        if common.ndim != 1:
            raise ValueError("common precoder must be a vector")
        if private.ndim != 2 or private.shape[0] != common.shape[0]:
            raise ValueError("private precoders must be an N x K matrix")
        if mu.shape != (private.shape[1],):
            raise ValueError("mu must have one entry per user")
        if abs(np.linalg.norm(common) - 1.0) > 1e-12:
            raise ValueError("common precoder must have unit norm")
        norms = np.linalg.norm(private, axis=0)
        if not np.all((np.abs(norms - 1.0) <= 1e-12) | (norms == 0.0)):
            raise ValueError("private precoder columns must have norm 1 or be zero")
        if np.any(mu < 0.0) or np.any(mu > 1.0):
            raise ValueError("power shares must lie in [0, 1]")
        if mu.sum() > 1.0 + 1e-12:
            raise ValueError(f"power shares must sum to at most 1, got {mu.sum()}")
        if not (0.0 <= self.t <= 1.0):
            raise ValueError(f"t must lie in [0, 1], got {self.t}")
        object.__setattr__(self, "common", common)
        object.__setattr__(self, "private", private)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "t", float(self.t))


def default_groups(config):
    """Index-based grouping: the first N users by index form group 1."""
    n, k = config.n_antennas, config.n_users
    if k <= n:
        raise ValueError("grouping requires more users than antennas")
    return UserGroups(g1=tuple(range(n)), g2=tuple(range(n, k)))


# ---------------------------------------------------------------------------
# Batched cores
# ---------------------------------------------------------------------------


def zf_columns_batch(h, indices):
    """Unit-norm zero-forcing columns for the users in `indices`.

    h : (T, N, K) channel stack; indices : sequence of user indices with
    len(indices) <= N. Returns (T, N, len(indices)) columns p_i satisfying
    h_j^H p_i = delta_ji within the selected set. Raises on rank deficiency
    (condition number beyond COND_LIMIT in any trial).
    """
    a = h[:, :, list(indices)]  # (T, N, S)
    sv = np.linalg.svd(a, compute_uv=False)
    bad = sv[:, -1] <= 0
    cond = np.full(sv.shape[0], np.inf)
    ok = ~bad
    cond[ok] = sv[ok, 0] / sv[ok, -1]
    if np.any(cond > COND_LIMIT):
        worst = float(np.max(cond))
        raise ValueError(
            f"rank-deficient group channel submatrix (condition number {worst:.3e})"
        )
    # pinv(A^H) columns solve A^H p_i = e_i with minimum norm.
    raw = np.linalg.pinv(a.conj().swapaxes(1, 2))  # (T, N, S)
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    return raw / norms


def mrt_columns_batch(h):
    """Matched-filter columns h_k / ||h_k|| for every user. h : (T, N, K)."""
    norms = np.linalg.norm(h, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise ValueError("zero channel vector has no matched-filter direction")
    return h / norms


def common_directions_batch(h):
    """Leading left singular vector of each trial's channel matrix.

    h : (T, N, K). Returns (T, N) unit vectors with the phase convention that
    the largest-magnitude entry of each vector is real positive.
    """
    u, _, _ = np.linalg.svd(h)
    p = u[:, :, 0]  # (T, N)
    idx = np.argmax(np.abs(p), axis=1)
    anchor = p[np.arange(p.shape[0]), idx]
    phase = anchor / np.abs(anchor)
    return p * phase.conj()[:, None]


# ---------------------------------------------------------------------------
# Single-realization surface
# ---------------------------------------------------------------------------


def zf_precoders(realization, groups):
    """Zero-forcing private precoders: unit columns for group 1, zero columns
    for group 2.

    For k in g1 the column nulls every other group-1 channel
    (h_j^H p_k = 0, j in g1, j != k). Raises if the group-1 channel submatrix
    is numerically rank deficient.
    """
    h = realization.h
    n, k = h.shape
    if len(groups.g1) != n:
        raise ValueError(
            f"group 1 must contain exactly N={n} users, got {len(groups.g1)}"
        )
    cols = zf_columns_batch(h[None, :, :], groups.g1)[0]  # (N, N)
    out = np.zeros((n, k), dtype=np.complex128)
    out[:, list(groups.g1)] = cols
    return out


def mrt_precoders(realization):
    """Matched-filter private precoders p_k = h_k / ||h_k|| for every user."""
    return mrt_columns_batch(realization.h[None, :, :])[0]


def common_precoder(realization):
    """Common beam: leading left singular vector of the channel matrix,
    phase-fixed so the largest-magnitude entry is real positive."""
    h = realization.h
    if not np.any(h != 0):
        raise ValueError("channel matrix is zero; no common direction")
    return common_directions_batch(h[None, :, :])[0]
