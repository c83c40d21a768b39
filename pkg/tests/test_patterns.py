import math

import numpy as np
import pytest

from omnibeam.arrays import ArrayGeometry
from omnibeam.codebooks import BASIS_8
from omnibeam.patterns import (
    PATTERN_CSV_COLUMNS,
    RAW,
    VARIANCE_MODE_INTEGRAL,
    AngularGrid,
    BeamPattern,
    composite_amplitude,
    composite_power,
    evaluate_pattern,
    pa_efficiency,
    pattern_variance,
    write_pattern_csv,
)

from helpers import KNOWN_W1, KNOWN_W2, LEGACY_TAPER, psi_grid_power

GEOM8 = ArrayGeometry.ula(8)

# frozen reference values (independently recomputed with a loop-based oracle)
BASIS_8_VARIANCE_MEAN = 0.1119316129
BASIS_8_VARIANCE_INTEGRAL = 0.7032870653
KNOWN_W1_VARIANCE = 0.4130463420


class TestAngularGrid:
    def test_default_sizes(self):
        g = AngularGrid.default_ula()
        assert g.n_theta == 4096 and g.n_phi == 1
        u = AngularGrid.default_upa()
        assert u.n_phi == 180 and u.n_theta == 360 and u.is_planar

    def test_rejects_nonuniform(self):
        with pytest.raises(ValueError):
            AngularGrid(np.array([0.0, 0.1, 0.5]), np.array([math.pi / 2]))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            AngularGrid(np.array([0.0, 2 * math.pi]), np.array([math.pi / 2]))


class TestEvaluatePattern:
    def test_broadside_coherent_gain(self):
        pat = evaluate_pattern(np.ones(8), GEOM8)
        assert abs(pat.gains[0, 0] - math.sqrt(8)) < 1e-12

    def test_raw_normalization(self):
        pat = evaluate_pattern(np.ones(8), GEOM8, normalization=RAW)
        assert abs(pat.gains[0, 0] - 8.0) < 1e-12

    def test_global_phase_invariance(self):
        w = KNOWN_W1
        rot = w * np.exp(1j * 0.77)
        p1 = evaluate_pattern(w, GEOM8)
        p2 = evaluate_pattern(rot, GEOM8)
        assert np.allclose(np.abs(p1.gains), np.abs(p2.gains), atol=1e-12)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            evaluate_pattern(np.ones(4), GEOM8)

    def test_ula_rejects_planar_grid(self):
        with pytest.raises(ValueError):
            evaluate_pattern(np.ones(8), GEOM8, AngularGrid.default_upa(8, 16))

    def test_large_arrays_evaluate_on_default_grids(self):
        big_ula = ArrayGeometry.ula(256)
        pat = evaluate_pattern(np.ones(256), big_ula)
        assert abs(pat.gains[0, 0] - math.sqrt(256)) < 1e-9
        big_upa = ArrayGeometry.upa(16, 16)
        pat = evaluate_pattern(np.ones(256), big_upa, AngularGrid.default_upa(45, 90))
        assert abs(np.abs(pat.gains).max() - math.sqrt(256)) < 1e-9

    def test_upa_pattern_matches_direct_sum(self):
        geom = ArrayGeometry.upa(2, 3)
        rng = np.random.default_rng(3)
        w = np.exp(2j * np.pi * rng.random(6))
        grid = AngularGrid(
            np.arange(8) * (2 * np.pi / 8), np.linspace(0, np.pi, 5)
        )
        pat = evaluate_pattern(w, geom, grid)
        for p, phi in enumerate(grid.phis):
            for t, theta in enumerate(grid.thetas):
                acc = 0j
                for n in range(2):
                    for m in range(3):
                        delta = n * 0.5 * math.cos(theta) + m * 0.5 * math.sin(theta)
                        acc += np.conj(w[n * 3 + m]) * np.exp(
                            -2j * math.pi * math.sin(phi) * delta
                        )
                assert abs(pat.gains[p, t] - acc / math.sqrt(6)) < 1e-12


class TestComposite:
    def test_equal_patterns(self):
        p = evaluate_pattern(KNOWN_W1, GEOM8)
        comp = composite_amplitude(p, p)
        assert np.allclose(comp, np.abs(p.gains), atol=1e-12)

    def test_zero_second_pattern(self):
        p = evaluate_pattern(KNOWN_W1, GEOM8)
        zero = BeamPattern(np.zeros_like(p.gains), p.grid, p.normalization)
        comp = composite_amplitude(p, zero)
        assert np.allclose(comp, np.abs(p.gains) / math.sqrt(2), atol=1e-12)

    def test_symmetry(self):
        p1 = evaluate_pattern(KNOWN_W1, GEOM8)
        p2 = evaluate_pattern(KNOWN_W2, GEOM8)
        assert np.array_equal(composite_amplitude(p1, p2), composite_amplitude(p2, p1))

    def test_known_pair_is_unit_circle(self):
        p1 = evaluate_pattern(KNOWN_W1, GEOM8)
        p2 = evaluate_pattern(KNOWN_W2, GEOM8)
        comp = composite_amplitude(p1, p2)
        assert np.max(np.abs(comp - 1.0)) < 1e-12

    def test_grid_mismatch_rejected(self):
        p1 = evaluate_pattern(KNOWN_W1, GEOM8, AngularGrid.default_ula(512))
        p2 = evaluate_pattern(KNOWN_W2, GEOM8, AngularGrid.default_ula(1024))
        with pytest.raises(ValueError):
            composite_amplitude(p1, p2)

    def test_normalization_mismatch_rejected(self):
        p1 = evaluate_pattern(KNOWN_W1, GEOM8)
        p2 = evaluate_pattern(KNOWN_W2, GEOM8, normalization=RAW)
        with pytest.raises(ValueError):
            composite_amplitude(p1, p2)


class TestPatternVariance:
    def test_constant_pattern_is_zero(self):
        grid = AngularGrid.default_ula(256)
        pat = BeamPattern(np.ones((1, 256), dtype=complex), grid)
        assert pattern_variance(pat) == 0.0

    def test_known_pair_composite_is_flat(self):
        p1 = evaluate_pattern(KNOWN_W1, GEOM8)
        p2 = evaluate_pattern(KNOWN_W2, GEOM8)
        assert pattern_variance(composite_power((p1, p2)), p1.grid) < 1e-12

    def test_reference_basis_calibration(self):
        pat = evaluate_pattern(BASIS_8, GEOM8)
        v_mean = pattern_variance(pat)
        v_int = pattern_variance(pat, mode=VARIANCE_MODE_INTEGRAL)
        assert v_mean == pytest.approx(BASIS_8_VARIANCE_MEAN, rel=1e-6)
        assert v_int == pytest.approx(BASIS_8_VARIANCE_INTEGRAL, rel=1e-6)
        assert v_int == pytest.approx(v_mean * 2 * math.pi, rel=1e-12)

    def test_single_beam_of_known_pair_fluctuates(self):
        # either beam of the flat pair is far from flat on its own
        v = pattern_variance(evaluate_pattern(KNOWN_W1, GEOM8))
        assert v == pytest.approx(KNOWN_W1_VARIANCE, rel=1e-6)

    def test_grid_refinement_stability(self):
        v_2048 = pattern_variance(
            evaluate_pattern(BASIS_8, GEOM8, AngularGrid.default_ula(2048))
        )
        v_4096 = pattern_variance(
            evaluate_pattern(BASIS_8, GEOM8, AngularGrid.default_ula(4096))
        )
        assert abs(v_2048 - v_4096) < 1e-6

    def test_planar_integral_measure(self):
        geom = ArrayGeometry.upa(2, 2)
        grid = AngularGrid.default_upa(18, 36)
        pat = evaluate_pattern(np.ones(4), geom, grid)
        v_mean = pattern_variance(pat)
        v_int = pattern_variance(pat, mode=VARIANCE_MODE_INTEGRAL)
        assert v_int == pytest.approx(v_mean * (2 * math.pi) ** 2, rel=1e-12)

    def test_nonnegative_and_zero_iff_constant(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            w = np.exp(2j * np.pi * rng.random(8))
            v = pattern_variance(evaluate_pattern(w, GEOM8, AngularGrid.default_ula(512)))
            assert v >= 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            pattern_variance(np.array([]))

    def test_psi_grid_mean_is_one_for_unit_modulus(self):
        # over a uniform grid of the phase variable the mean squared gain of
        # any unit-modulus vector is exactly 1 ...
        rng = np.random.default_rng(6)
        w = np.exp(2j * np.pi * rng.random(8))
        assert psi_grid_power(w, 512).mean() == pytest.approx(1.0, abs=1e-12)

    def test_theta_grid_mean_differs_from_one(self):
        # ... but over the azimuth grid it generally is not (the angle-to-
        # phase map is nonlinear), a known distinction of the two grids
        w = np.exp(1j * 0.7 * np.arange(8) ** 2)
        mean_theta = evaluate_pattern(w, GEOM8).power.mean()
        assert abs(mean_theta - 1.0) > 0.01


class TestPaEfficiency:
    def test_legacy_taper_example(self):
        assert pa_efficiency(LEGACY_TAPER) == pytest.approx(0.3025, abs=1e-12)

    def test_unit_modulus_is_full_efficiency(self):
        w = np.exp(2j * np.pi * np.random.default_rng(7).random(16))
        assert pa_efficiency(w) == pytest.approx(1.0, abs=1e-12)

    def test_half_amplitude(self):
        assert pa_efficiency(np.array([1.0, 0.5])) == pytest.approx(0.25, abs=1e-15)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            pa_efficiency(np.zeros(4))
        with pytest.raises(ValueError):
            pa_efficiency(np.array([]))


class TestCsvExport:
    def test_schema_and_roundtrip(self, tmp_path):
        pat = evaluate_pattern(KNOWN_W1, GEOM8, AngularGrid.default_ula(64))
        path = tmp_path / "pattern.csv"
        write_pattern_csv(path, pat)
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(PATTERN_CSV_COLUMNS)
        assert len(lines) == 1 + 64
        row = lines[1].split(",")
        assert float(row[0]) == math.pi / 2
        assert float(row[1]) == 0.0
        g = complex(float(row[2]), float(row[3]))
        assert g == complex(pat.gains[0, 0])
        assert float(row[4]) == abs(pat.gains[0, 0])
        assert float(row[5]) == abs(pat.gains[0, 0]) ** 2
