import numpy as np
import pytest
from numpy.testing import assert_allclose

from cellsearch.arrays import (
    array_gain,
    beamwidth_3db,
    build_codebook,
    phase_to_angle,
    steering_vector,
)


class TestSteeringVector:
    def test_single_element(self):
        sv = steering_vector(1, 1.234)
        assert_allclose(sv.elements, [1.0])

    def test_broadside_is_real_uniform(self):
        sv = steering_vector(4, 0.0)
        assert_allclose(sv.elements, [0.5, 0.5, 0.5, 0.5])

    def test_endfire_two_elements(self):
        sv = steering_vector(2, np.pi / 2)
        assert_allclose(sv.elements, np.array([1.0, -1.0]) / np.sqrt(2), atol=1e-15)

    def test_unit_norm_and_leading_element(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 3, 4, 7, 16, 64):
            for angle in rng.uniform(-np.pi / 2, np.pi / 2, 20):
                sv = steering_vector(n, angle)
                assert abs(np.linalg.norm(sv.elements) - 1.0) < 1e-12
                assert sv.elements[0] == pytest.approx(1.0 / np.sqrt(n))

    def test_element_formula(self):
        sv = steering_vector(8, 0.7)
        m = np.arange(8)
        assert_allclose(sv.elements, np.exp(1j * m * np.pi * np.sin(0.7)) / np.sqrt(8))

    def test_rejects_zero_antennas(self):
        with pytest.raises(ValueError):
            steering_vector(0, 0.0)

    def test_rejects_nonfinite_angle(self):
        with pytest.raises(ValueError):
            steering_vector(4, np.inf)


class TestCodebook:
    def test_cardinality_and_bits_n16(self):
        cb = build_codebook(16)
        assert cb.cardinality == 32
        assert cb.n_bits == 5
        assert cb.vectors.shape == (32, 16)

    def test_single_antenna_degenerate(self):
        cb = build_codebook(1)
        assert cb.cardinality == 2
        assert_allclose(cb.quantized_phases, [0.0, np.pi])
        assert_allclose(cb.vectors, [[1.0], [1.0]])

    def test_n4_first_vector_real(self):
        cb = build_codebook(4)
        assert cb.cardinality == 8
        assert_allclose(cb.vectors[0], [0.5, 0.5, 0.5, 0.5])

    @pytest.mark.parametrize("bad", [0, 3, 6, 12, 100])
    def test_rejects_non_power_of_two(self, bad):
        with pytest.raises(ValueError):
            build_codebook(bad)

    def test_vector_formula_and_phase_set(self):
        cb = build_codebook(8)
        m = np.arange(8)
        for i in range(16):
            theta = 2 * np.pi * i / 2**cb.n_bits
            assert theta == pytest.approx(cb.quantized_phases[i])
            assert_allclose(cb.vectors[i], np.exp(1j * m * theta) / np.sqrt(8))

    def test_phases_increasing(self):
        cb = build_codebook(16)
        assert np.all(np.diff(cb.quantized_phases) > 0)
        assert np.all((cb.quantized_phases >= 0) & (cb.quantized_phases < 2 * np.pi))

    def test_constant_modulus(self):
        for n in (2, 4, 8, 16):
            cb = build_codebook(n)
            assert_allclose(np.abs(cb.vectors), 1.0 / np.sqrt(n), rtol=1e-12)

    def test_deterministic_construction(self):
        a, b = build_codebook(32), build_codebook(32)
        assert np.array_equal(a.vectors, b.vectors)
        assert np.array_equal(a.quantized_phases, b.quantized_phases)


class TestBeamwidth:
    def test_four_antennas(self):
        assert np.degrees(beamwidth_3db(4)) == pytest.approx(25.7, abs=0.1)

    def test_sixteen_antennas(self):
        assert np.degrees(beamwidth_3db(16)) == pytest.approx(6.38, abs=0.02)

    def test_single_antenna(self):
        assert beamwidth_3db(1) == pytest.approx(2 * np.arcsin(0.891))

    def test_strictly_decreasing(self):
        widths = [beamwidth_3db(n) for n in range(1, 257)]
        assert np.all(np.diff(widths) < 0)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            beamwidth_3db(0)


class TestPhaseToAngle:
    def test_zero(self):
        assert phase_to_angle(0.0) == 0.0

    def test_pi_maps_to_endfire(self):
        assert phase_to_angle(np.pi) == pytest.approx(np.pi / 2)

    def test_wraps_above_pi(self):
        # 3*pi/2 wraps to -pi/2, and asin(-1/2) = -pi/6
        assert phase_to_angle(3 * np.pi / 2) == pytest.approx(-np.pi / 6)

    @pytest.mark.parametrize("bad", [-0.1, 2 * np.pi, 7.0])
    def test_rejects_out_of_domain(self, bad):
        with pytest.raises(ValueError):
            phase_to_angle(bad)

    def test_always_defined_on_domain(self):
        for theta in np.linspace(0, 2 * np.pi, 1000, endpoint=False):
            angle = phase_to_angle(theta)
            assert -np.pi / 2 <= angle <= np.pi / 2


class TestArrayGain:
    def test_matched_gain_is_one(self):
        sv = steering_vector(16, 0.37)
        assert array_gain(sv.elements, sv) == pytest.approx(1.0)

    def test_orthogonal_gain_is_zero(self):
        w = np.array([1.0, 1.0]) / np.sqrt(2)
        a = np.array([1.0, -1.0]) / np.sqrt(2)
        assert array_gain(w, a) == pytest.approx(0.0, abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            array_gain(np.ones(3), steering_vector(4, 0.0))

    def test_bounded_by_one(self):
        rng = np.random.default_rng(3)
        cb = build_codebook(16)
        for angle in rng.uniform(-np.pi / 2, np.pi / 2, 100):
            a = steering_vector(16, angle)
            gains = [array_gain(v, a) for v in cb.vectors]
            assert max(gains) <= 1.0 + 1e-12


def wrapped_phase(theta):
    """Spatial frequency in (-pi, pi] matching the codebook wrap convention."""
    return theta if theta <= np.pi else theta - 2 * np.pi


class TestAdjacentBeamCrossover:
    @pytest.mark.parametrize("n", [4, 16])
    def test_crossover_within_one_db(self, n):
        # At the midpoint (in spatial frequency) between adjacent beams, both
        # beams must stay within 1 dB of their unit peak.
        cb = build_codebook(n)
        floor = 10 ** (-1 / 20)
        for i in range(cb.cardinality):
            j = (i + 1) % cb.cardinality
            mid = cb.quantized_phases[i] + np.pi / (2 * n)
            angle = np.arcsin(wrapped_phase(mid) / np.pi)
            a = steering_vector(n, angle)
            assert array_gain(cb.vectors[i], a) >= floor
            assert array_gain(cb.vectors[j], a) >= floor


class TestArgmaxMatchesSpatialFrequency:
    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    def test_nearest_beam_wins(self, n):
        # The best codebook response to a(phi) is the beam whose quantized
        # phase is circularly nearest to pi*sin(phi).
        cb = build_codebook(n)
        psi = np.array([wrapped_phase(t) for t in cb.quantized_phases])
        rng = np.random.default_rng(1000 + n)
        for phi in rng.uniform(-np.pi / 2, np.pi / 2, 1000):
            a = steering_vector(n, phi)
            gains = np.array([array_gain(v, a) for v in cb.vectors])
            diff = np.abs(psi - np.pi * np.sin(phi))
            circ = np.minimum(diff, 2 * np.pi - diff)
            assert int(np.argmax(gains)) == int(np.argmin(circ))
