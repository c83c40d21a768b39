import math

import numpy as np
import pytest

from omnibeam.arrays import ArrayGeometry, Direction, steering, steering_ula, steering_upa


class TestGeometry:
    def test_ula_constructor(self):
        g = ArrayGeometry.ula(8)
        assert g.n_elements == 8
        assert g.n_y == 1
        assert g.d_x == 0.5

    def test_upa_constructor(self):
        g = ArrayGeometry.upa(4, 2, 0.5, 0.25)
        assert g.n_elements == 8
        assert g.d_y == 0.25

    def test_rejects_single_element(self):
        with pytest.raises(ValueError):
            ArrayGeometry.ula(1)

    def test_rejects_nonpositive_spacing(self):
        with pytest.raises(ValueError):
            ArrayGeometry.ula(4, 0.0)
        with pytest.raises(ValueError):
            ArrayGeometry.upa(2, 2, 0.5, -0.5)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            ArrayGeometry("circle", 4)


class TestSteeringUla:
    def test_broadside_is_all_ones(self):
        g = ArrayGeometry.ula(8)
        assert np.allclose(steering_ula(g, 0.0), np.ones(8), atol=1e-15)

    def test_two_elements_at_pi_over_2(self):
        g = ArrayGeometry.ula(2)
        assert np.allclose(steering_ula(g, math.pi / 2), [1, -1], atol=1e-12)

    def test_four_elements_at_pi_over_6(self):
        # sin(pi/6) = 1/2, so the phase steps by -pi/2 per element
        g = ArrayGeometry.ula(4)
        expected = [1, -1j, -1, 1j]
        assert np.allclose(steering_ula(g, math.pi / 6), expected, atol=1e-12)

    def test_unit_modulus(self):
        g = ArrayGeometry.ula(16, 0.7)
        rng = np.random.default_rng(0)
        for theta in rng.uniform(0, 2 * math.pi, 25):
            assert np.max(np.abs(np.abs(steering_ula(g, theta)) - 1)) < 1e-12

    def test_conjugate_symmetry(self):
        # conjugating flips the sign of sin(theta) in every phase
        g = ArrayGeometry.ula(8)
        for theta in (0.3, 1.1, 2.7, 4.0):
            assert np.allclose(
                np.conj(steering_ula(g, theta)), steering_ula(g, -theta), atol=1e-12
            )

    def test_vectorized_over_theta(self):
        g = ArrayGeometry.ula(4)
        thetas = np.array([0.0, 0.5, 1.0])
        batch = steering_ula(g, thetas)
        assert batch.shape == (3, 4)
        for i, t in enumerate(thetas):
            assert np.allclose(batch[i], steering_ula(g, t))

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValueError):
            steering_ula(ArrayGeometry.upa(2, 2), 0.0)


class TestSteeringUpa:
    def test_zero_elevation_is_all_ones(self):
        g = ArrayGeometry.upa(2, 2)
        for theta in (0.0, 1.0, 4.5):
            assert np.allclose(steering_upa(g, 0.0, theta), np.ones(4), atol=1e-15)

    def test_2x2_inplane_broadside(self):
        g = ArrayGeometry.upa(2, 2)
        assert np.allclose(steering_upa(g, math.pi / 2, 0.0), [1, 1, -1, -1], atol=1e-12)

    def test_matches_elementwise_formula(self):
        # flat (row-major) element (n, m) sees the plane-wave path diff
        # n*d_x*cos(theta) + m*d_y*sin(theta), scaled by sin(phi)
        g = ArrayGeometry.upa(3, 4, 0.5, 0.3)
        rng = np.random.default_rng(1)
        for _ in range(10):
            phi = rng.uniform(0, math.pi)
            theta = rng.uniform(0, 2 * math.pi)
            a = steering_upa(g, phi, theta)
            for n in range(3):
                for m in range(4):
                    delta = n * g.d_x * math.cos(theta) + m * g.d_y * math.sin(theta)
                    expected = np.exp(-2j * math.pi * math.sin(phi) * delta)
                    assert abs(a[n * 4 + m] - expected) < 1e-12

    def test_row_of_elements_reduces_to_ula(self):
        # a 1 x N planar array observed in-plane is exactly the linear model
        upa = ArrayGeometry.upa(1, 6)
        ula = ArrayGeometry.ula(6)
        for theta in (0.0, 0.7, 2.0, 5.1):
            assert np.allclose(
                steering_upa(upa, math.pi / 2, theta), steering_ula(ula, theta),
                atol=1e-12,
            )

    def test_column_of_elements_is_ula_with_rotated_azimuth(self):
        # an N x 1 planar array lies along x, so its in-plane response is the
        # linear model with the azimuth measured from the other axis
        upa = ArrayGeometry.upa(6, 1)
        ula = ArrayGeometry.ula(6)
        for theta in (0.0, 0.7, 2.0, 5.1):
            assert np.allclose(
                steering_upa(upa, math.pi / 2, theta),
                steering_ula(ula, math.pi / 2 - theta),
                atol=1e-12,
            )

    def test_unit_modulus(self):
        g = ArrayGeometry.upa(4, 4)
        a = steering_upa(g, 1.0, 2.0)
        assert np.max(np.abs(np.abs(a) - 1)) < 1e-12

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValueError):
            steering_upa(ArrayGeometry.ula(4), 1.0, 1.0)


class TestDirection:
    def test_default_elevation_is_in_plane(self):
        d = Direction(0.5)
        assert d.phi == math.pi / 2

    def test_azimuth_normalized_to_canonical_range(self):
        assert Direction(-0.5).theta == pytest.approx(2 * math.pi - 0.5)
        assert Direction(2 * math.pi).theta == 0.0

    def test_elevation_range_enforced(self):
        with pytest.raises(ValueError):
            Direction(0.0, -0.1)
        with pytest.raises(ValueError):
            Direction(0.0, math.pi + 0.1)

    def test_steering_dispatch(self):
        ula = ArrayGeometry.ula(4)
        upa = ArrayGeometry.upa(2, 2)
        d = Direction(0.9)
        assert np.allclose(steering(ula, d), steering_ula(ula, 0.9))
        assert np.allclose(steering(upa, d), steering_upa(upa, math.pi / 2, 0.9))
