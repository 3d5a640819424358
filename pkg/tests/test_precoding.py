"""Precoder construction tests: nulling contracts, normalization, the common
beam's maximality, and the distributional properties of the beamformed gains
(KS tests against the known laws, scipy as the independent oracle)."""

import numpy as np
import pytest
from scipy import stats

from rsma.channel import SystemConfig, draw_channel, draw_channel_batch
from rsma.precoding import (
    PrecoderSet,
    UserGroups,
    common_directions_batch,
    common_precoder,
    default_groups,
    mrt_columns_batch,
    mrt_precoders,
    zf_columns_batch,
    zf_precoders,
)


def make_config(n=4, k=6, seed=11, trials=10):
    return SystemConfig(
        n_antennas=n,
        n_users=k,
        power=100.0,
        large_scale=(1.0,) * k,
        trials=trials,
        seed=seed,
    )


def realization(cfg, trial=0):
    return draw_channel(cfg, trial)


class TestUserGroups:
    def test_valid_partition(self):
        g = UserGroups(g1=(0, 1), g2=(2, 3))
        assert g.n_users == 4

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            UserGroups(g1=(0, 1), g2=(1, 2))

    def test_rejects_gap(self):
        with pytest.raises(ValueError):
            UserGroups(g1=(0, 1), g2=(3,))


class TestDefaultGroups:
    def test_four_six(self):
        g = default_groups(make_config(4, 6))
        assert g.g1 == (0, 1, 2, 3)
        assert g.g2 == (4, 5)

    def test_smallest_overloaded(self):
        g = default_groups(make_config(1, 2))
        assert g.g1 == (0,) and g.g2 == (1,)

    def test_sixteen_twenty(self):
        g = default_groups(make_config(16, 20))
        assert len(g.g2) == 4


class TestPrecoderSet:
    def test_valid_with_zero_columns(self):
        private = np.zeros((2, 3), dtype=complex)
        private[:, 0] = [1.0, 0.0]
        ps = PrecoderSet(
            common=np.array([1.0, 0.0], dtype=complex),
            private=private,
            mu=np.array([0.5, 0.0, 0.0]),
            t=0.5,
        )
        assert ps.t == 0.5

    def test_rejects_nonunit_common(self):
        with pytest.raises(ValueError):
            PrecoderSet(
                common=np.array([2.0, 0.0], dtype=complex),
                private=np.zeros((2, 2), dtype=complex),
                mu=np.zeros(2),
                t=0.5,
            )

    def test_rejects_bad_column_norm(self):
        private = np.zeros((2, 2), dtype=complex)
        private[:, 0] = [0.5, 0.0]
        with pytest.raises(ValueError):
            PrecoderSet(
                common=np.array([1.0, 0.0], dtype=complex),
                private=private,
                mu=np.zeros(2),
                t=0.5,
            )

    def test_rejects_mu_over_one(self):
        with pytest.raises(ValueError):
            PrecoderSet(
                common=np.array([1.0, 0.0], dtype=complex),
                private=np.zeros((2, 2), dtype=complex),
                mu=np.array([0.8, 0.8]),
                t=0.5,
            )

    def test_rejects_bad_t(self):
        with pytest.raises(ValueError):
            PrecoderSet(
                common=np.array([1.0, 0.0], dtype=complex),
                private=np.zeros((2, 2), dtype=complex),
                mu=np.zeros(2),
                t=1.5,
            )


class TestZfPrecoders:
    def test_orthogonal_channels_give_matched_beams(self):
        # With mutually orthogonal channels the zero-forcing solution is the
        # matched filter itself.
        h = np.array([[2.0, 0.0], [0.0, 3.0]], dtype=complex)
        cols = zf_columns_batch(h[None], (0, 1))[0]
        expected = h / np.linalg.norm(h, axis=0, keepdims=True)
        assert np.allclose(cols, expected, atol=1e-12)

    def test_nulling_constraint(self):
        cfg = make_config()
        g = default_groups(cfg)
        r = realization(cfg)
        p = zf_precoders(r, g)
        for k in g.g1:
            for j in g.g1:
                if j != k:
                    assert abs(np.vdot(r.h[:, j], p[:, k])) <= 1e-10 * np.linalg.norm(
                        r.h[:, j]
                    )

    def test_group2_columns_zero(self):
        cfg = make_config()
        g = default_groups(cfg)
        p = zf_precoders(realization(cfg), g)
        assert np.all(p[:, list(g.g2)] == 0)

    def test_unit_norms(self):
        cfg = make_config()
        g = default_groups(cfg)
        p = zf_precoders(realization(cfg), g)
        norms = np.linalg.norm(p[:, list(g.g1)], axis=0)
        assert np.all(np.abs(norms - 1.0) <= 1e-12)

    def test_nulling_over_thousand_realizations(self):
        cfg = make_config(seed=5)
        g = default_groups(cfg)
        n1 = len(g.g1)
        h = draw_channel_batch(cfg, 1000)
        cols = zf_columns_batch(h, g.g1)
        # cross[t, j, k] = h_j^H p_k; off-diagonals must vanish relative to
        # the victim channel's norm.
        cross = np.einsum("tnj,tnk->tjk", h[:, :, :n1].conj(), cols)
        norms = np.linalg.norm(h[:, :, :n1], axis=1)
        for j in range(n1):
            for k in range(n1):
                if j != k:
                    assert np.all(np.abs(cross[:, j, k]) <= 1e-10 * norms[:, j])

    def test_rank_deficiency_detected(self):
        cfg = make_config()
        g = default_groups(cfg)
        r = realization(cfg)
        h = r.h.copy()
        h[:, 1] = h[:, 0]  # duplicate group-1 channel
        from rsma.channel import ChannelRealization

        bad = ChannelRealization(h=h, v=r.v)
        with pytest.raises(ValueError, match="rank-deficient"):
            zf_precoders(bad, g)

    def test_self_gain_statistics(self):
        # |h_k^H p_k|^2 for the zero-forced beams follows Exp(1): mean 1,
        # variance 1.
        cfg = make_config(seed=31)
        g = default_groups(cfg)
        h = draw_channel_batch(cfg, 25_000)
        cols = zf_columns_batch(h, g.g1)
        self_gain = np.abs(np.einsum("tnk,tnk->tk", h[:, :, : 4].conj(), cols)) ** 2
        flat = self_gain.ravel()  # 1e5 pooled samples
        assert abs(flat.mean() - 1.0) < 0.02
        assert abs(flat.var(ddof=1) - 1.0) < 0.05


class TestMrtPrecoders:
    def test_normalization_example(self):
        from rsma.channel import ChannelRealization

        h = np.array([[3.0, 1.0], [4.0j, 1.0]], dtype=complex)
        r = ChannelRealization(h=h, v=(1.0, 1.0))
        p = mrt_precoders(r)
        assert np.allclose(p[:, 0], [0.6, 0.8j], atol=1e-15)

    def test_zero_channel_rejected(self):
        from rsma.channel import ChannelRealization

        h = np.zeros((2, 2), dtype=complex)
        h[:, 0] = [1.0, 0.0]
        r = ChannelRealization(h=h, v=(1.0, 1.0))
        with pytest.raises(ValueError):
            mrt_precoders(r)

    def test_self_gain_mean(self):
        # |h_k^H p_k|^2 = ||h_k||^2 follows Gamma(N, 1): mean N.
        cfg = make_config(seed=17)
        h = draw_channel_batch(cfg, 17_000)
        p = mrt_columns_batch(h)
        self_gain = np.abs(np.einsum("tnk,tnk->tk", h.conj(), p)) ** 2
        assert abs(self_gain.ravel().mean() - 4.0) < 0.05

    def test_cross_gain_mean(self):
        cfg = make_config(seed=23)
        h = draw_channel_batch(cfg, 17_000)
        p = mrt_columns_batch(h)
        cross = np.abs(np.einsum("tn,tn->t", h[:, :, 0].conj(), p[:, :, 1])) ** 2
        # Project onto an independent unit vector: Exp(1), mean 1.
        assert abs(cross.mean() - 1.0) < 0.02


class TestCommonPrecoder:
    def test_identical_columns(self):
        from rsma.channel import ChannelRealization

        c = np.array([1.0 + 1.0j, 2.0 - 1.0j, 0.5j], dtype=complex)
        h = np.tile(c[:, None], (1, 4))
        r = ChannelRealization(h=h, v=(1.0,) * 4)
        p = common_precoder(r)
        direction = c / np.linalg.norm(c)
        assert abs(abs(np.vdot(p, direction)) - 1.0) < 1e-10

    def test_dominant_orthogonal_column(self):
        from rsma.channel import ChannelRealization

        h = np.diag([3.0, 2.0, 1.0]).astype(complex)
        r = ChannelRealization(h=h, v=(1.0,) * 3)
        p = common_precoder(r)
        assert np.allclose(p, [1.0, 0.0, 0.0], atol=1e-12)

    def test_phase_convention(self):
        cfg = make_config(seed=3)
        p = common_precoder(realization(cfg))
        anchor = p[np.argmax(np.abs(p))]
        assert abs(anchor.imag) < 1e-12 and anchor.real > 0

    def test_maximality(self):
        cfg = make_config(seed=13)
        r = realization(cfg)
        p = common_precoder(r)
        best = np.linalg.norm(r.h.conj().T @ p) ** 2
        rng = np.random.default_rng(99)
        for _ in range(100):
            u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            u /= np.linalg.norm(u)
            assert best >= np.linalg.norm(r.h.conj().T @ u) ** 2 - 1e-9

    def test_zero_matrix_rejected(self):
        from rsma.channel import ChannelRealization

        r = ChannelRealization(h=np.zeros((2, 3), dtype=complex), v=(1.0,) * 3)
        with pytest.raises(ValueError):
            common_precoder(r)

    def test_batch_matches_single(self):
        cfg = make_config(seed=29)
        h = draw_channel_batch(cfg, 5)
        batch = common_directions_batch(h)
        from rsma.channel import ChannelRealization

        for i in range(5):
            single = common_precoder(ChannelRealization(h=h[i], v=cfg.large_scale))
            assert np.allclose(batch[i], single, atol=1e-12)


@pytest.fixture(scope="module")
def trial_stack():
    cfg = make_config(seed=1234)
    return cfg, draw_channel_batch(cfg, 10_000)


class TestGainDistributions:
    """One-sample KS tests of the beamformed-gain laws at significance 0.01
    on 1e4 samples (one sample per trial, so samples are independent)."""

    def test_zf_self_gain_exponential(self, trial_stack):
        cfg, h = trial_stack
        cols = zf_columns_batch(h, (0, 1, 2, 3))
        sample = np.abs(np.einsum("tn,tn->t", h[:, :, 0].conj(), cols[:, :, 0])) ** 2
        stat = stats.kstest(sample, "expon")
        assert stat.pvalue > 0.01

    def test_mrt_self_gain_gamma(self, trial_stack):
        cfg, h = trial_stack
        p = mrt_columns_batch(h)
        sample = np.abs(np.einsum("tn,tn->t", h[:, :, 0].conj(), p[:, :, 0])) ** 2
        stat = stats.kstest(sample, "gamma", args=(cfg.n_antennas,))
        assert stat.pvalue > 0.01

    def test_mrt_cross_gain_exponential(self, trial_stack):
        cfg, h = trial_stack
        p = mrt_columns_batch(h)
        sample = np.abs(np.einsum("tn,tn->t", h[:, :, 0].conj(), p[:, :, 1])) ** 2
        stat = stats.kstest(sample, "expon")
        assert stat.pvalue > 0.01
