import math

import numpy as np
import pytest

from finitekernels import (
    AmplitudeProfile,
    DataPoint,
    FeatureState,
    embed_cosine,
    embed_interference,
    embed_phase_augmented,
    msi_profile,
    rescale_dataset,
    tsq_profile,
)
from finitekernels.states import INTERFERENCE_DOMAIN, COSINE_DOMAIN

# 50-digit-arithmetic oracle values for the truncated squeezed progression,
# weights proportional to (2n)! t^(2n) / (4^n (n!)^2) with t = tanh(zeta),
# renormalized over the truncation window.
TSQ_ORACLE = {
    (5, 2.0): [
        0.44575873742688741,
        0.20713275747108633,
        0.14437399297623271,
        0.11181154273759741,
        0.090922969388196142,
    ],
    (8, 3.0): [
        0.32562405858918493,
        0.16120571976259128,
        0.11971144360509901,
        0.09877530504446884,
        0.085575686187138366,
        0.076258253958082211,
        0.069213729924496846,
        0.063635802928938518,
    ],
    (2, 0.5): [0.90352508489884895, 0.096474915101151049],
    (3, 1.0): [0.7061279238777918, 0.20478615697596853, 0.089085919146239668],
}


class TestProfiles:
    def test_msi_is_equal_weights(self):
        for length in (2, 3, 7, 64):
            p = msi_profile(length)
            assert len(p) == length
            np.testing.assert_allclose(p.weights, np.full(length, 1.0 / length), rtol=0, atol=1e-15)

    def test_msi_needs_two_terms(self):
        with pytest.raises(ValueError):
            msi_profile(1)

    @pytest.mark.parametrize("key", sorted(TSQ_ORACLE))
    def test_tsq_matches_high_precision_oracle(self, key):
        length, zeta = key
        p = tsq_profile(length, zeta)
        np.testing.assert_allclose(p.weights, TSQ_ORACLE[key], rtol=0, atol=1e-14)

    def test_tsq_matches_live_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 50
        rng = np.random.default_rng(17)
        for _ in range(10):
            length = int(rng.integers(2, 20))
            zeta = float(rng.uniform(0.2, 4.0))
            t2 = mpmath.tanh(zeta) ** 2
            raw = [
                mpmath.factorial(2 * n) * t2**n / (mpmath.mpf(4) ** n * mpmath.factorial(n) ** 2)
                for n in range(length)
            ]
            total = sum(raw)
            expected = np.array([float(v / total) for v in raw])
            np.testing.assert_allclose(tsq_profile(length, zeta).weights, expected, rtol=0, atol=1e-13)

    def test_tsq_ratio_recursion(self):
        # successive weights obey r_{n+1}/r_n = (2n+1)/(2n+2) tanh^2(zeta) < 1
        zeta = 1.7
        w = tsq_profile(9, zeta).weights
        t2 = math.tanh(zeta) ** 2
        for n in range(8):
            assert w[n + 1] / w[n] == pytest.approx((2 * n + 1) / (2 * n + 2) * t2, rel=1e-12)
        assert np.all(np.diff(w) < 0)

    def test_tsq_invalid_squeezing(self):
        with pytest.raises(ValueError):
            tsq_profile(4, 0.0)
        with pytest.raises(ValueError):
            tsq_profile(4, -1.0)

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            AmplitudeProfile(np.array([0.5, -0.1, 0.6]))
        with pytest.raises(ValueError):
            AmplitudeProfile(np.array([0.5, 0.4]))  # does not sum to 1
        with pytest.raises(ValueError):
            AmplitudeProfile(np.array([0.5, np.nan, 0.5]))

    def test_from_unnormalized(self):
        p = AmplitudeProfile.from_unnormalized(np.array([2.0, 1.0, 1.0]))
        np.testing.assert_allclose(p.weights, [0.5, 0.25, 0.25], atol=1e-15)
        assert p.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_weights_read_only(self):
        p = msi_profile(3)
        with pytest.raises(ValueError):
            p.weights[0] = 0.9

    def test_amplitudes_are_square_roots(self):
        p = tsq_profile(4, 1.0)
        np.testing.assert_allclose(p.amplitudes**2, p.weights, atol=1e-15)


class TestFeatureState:
    def test_requires_unit_norm(self):
        with pytest.raises(ValueError):
            FeatureState(np.array([1.0, 1.0]))
        s = FeatureState(np.array([1.0, 1.0]) / math.sqrt(2.0))
        assert s.dim == 2

    def test_dim_counts_amplitudes(self):
        s = FeatureState(np.array([0.0, 0.0, 1.0], dtype=complex))
        assert s.dim == 3


class TestDataPoint:
    def test_phase_shape_must_match(self):
        with pytest.raises(ValueError):
            DataPoint(np.array([0.1, 0.2]), phases=np.array([0.0]))

    def test_first_phase_anchored_to_zero(self):
        with pytest.raises(ValueError):
            DataPoint(np.array([0.1, 0.2]), phases=np.array([0.3, 0.0]))
        d = DataPoint(np.array([0.1, 0.2]), phases=np.array([0.0, 0.4]))
        assert d.dimension == 2


class TestInterferenceEmbedding:
    def test_two_mode_quarter_period(self):
        # equal two-term profile at x = 1/4: amplitudes (1, e^{i pi/2}) / sqrt(2)
        state = embed_interference(0.25, msi_profile(2))
        expected = np.array([1.0, 1.0j]) / math.sqrt(2.0)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)

    def test_unit_norm_random(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            length = int(rng.integers(2, 9))
            profile = AmplitudeProfile.from_unnormalized(rng.uniform(0.1, 1.0, length))
            x = float(rng.uniform(-0.5, 0.4999))
            s = embed_interference(x, profile)
            assert np.linalg.norm(s.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_half_open_domain(self):
        embed_interference(-0.5, msi_profile(2))  # left edge included
        with pytest.raises(ValueError):
            embed_interference(0.5, msi_profile(2))  # right edge excluded
        with pytest.raises(ValueError):
            embed_interference(0.75, msi_profile(2))


class TestCosineEmbedding:
    def test_binomial_amplitudes_at_quarter_pi(self):
        # cos = sin = 1/sqrt(2): amplitudes (1, sqrt3, sqrt3, 1) / (2 sqrt2)
        s = embed_cosine(np.array([math.pi / 4]), power=3)
        expected = np.array([1.0, math.sqrt(3.0), math.sqrt(3.0), 1.0]) / (2.0 * math.sqrt(2.0))
        np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)

    def test_origin_maps_to_first_basis_vector(self):
        s = embed_cosine(np.array([0.0]), power=3)
        expected = np.zeros(4)
        expected[0] = 1.0
        np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)

    def test_tensor_dimension(self):
        s = embed_cosine(np.array([0.3, -0.2]), power=2)
        assert s.dim == 9
        assert np.linalg.norm(s.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            embed_cosine(np.array([math.pi / 2]), power=1)
        embed_cosine(np.array([-math.pi / 2]), power=1)

    def test_power_must_be_positive_integer(self):
        with pytest.raises(ValueError):
            embed_cosine(np.array([0.1]), power=0)


class TestPhaseAugmentedEmbedding:
    def test_dimension_counts_auxiliary_qubits(self):
        d = DataPoint(np.array([0.1, 0.2]), phases=np.array([0.0, 0.5]))
        s = embed_phase_augmented(d, power=3)
        assert s.dim == 16 * 2  # (3+1)^2 base modes times one auxiliary qubit

    def test_single_dimension_reduces_to_cosine(self):
        d = DataPoint(np.array([0.37]), phases=np.array([0.0]))
        s = embed_phase_augmented(d, power=2)
        base = embed_cosine(np.array([0.37]), power=2)
        np.testing.assert_allclose(s.amplitudes, base.amplitudes, atol=1e-15)

    def test_requires_phases(self):
        with pytest.raises(ValueError):
            embed_phase_augmented(DataPoint(np.array([0.1, 0.2])), power=1)


class TestRescaleDataset:
    def test_maps_bounds_into_half_open_box(self):
        pts = np.array([[0.0, 10.0], [5.0, 20.0], [2.5, 15.0]])
        out = rescale_dataset(pts, "cosine")
        lo, hi = COSINE_DOMAIN
        assert out.min() == pytest.approx(lo, abs=1e-12)
        assert out.max() < hi
        assert out[:, 0].max() == pytest.approx(hi - 1e-9 * (hi - lo), abs=1e-12)

    def test_interference_convention(self):
        pts = np.array([[1.0], [3.0]])
        out = rescale_dataset(pts, "interference")
        lo, hi = INTERFERENCE_DOMAIN
        assert out.min() == pytest.approx(lo, abs=1e-15)
        assert out.max() < hi

    def test_degenerate_column_rejected(self):
        with pytest.raises(ValueError):
            rescale_dataset(np.array([[1.0, 2.0], [1.0, 3.0]]), "cosine")

    def test_preserves_ordering(self):
        pts = np.array([[0.0], [1.0], [4.0]])
        out = rescale_dataset(pts, "cosine")
        assert out[0, 0] < out[1, 0] < out[2, 0]
        # affine: midpoints stay proportional
        frac = (out[1, 0] - out[0, 0]) / (out[2, 0] - out[0, 0])
        assert frac == pytest.approx(0.25, abs=1e-12)
