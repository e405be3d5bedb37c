# lattice/tests/test_free_theory.py
import math

import numpy as np
from django.test import SimpleTestCase

from digitization.exceptions import MasslessZeroModeError, ShapeError
from lattice.free_theory import (
    fourier_mode_power,
    free_dispersion,
    lattice_potential,
    momentum_space_potential,
    thermal_width,
    zero_point_width,
)
from lattice.geometry import LatticeGeometry, MomentumMode
from lattice.potential import LatticeScalarPotential

SQUARE = LatticeGeometry(2, 4)
ZERO = MomentumMode((0, 0), 4)
CORNER = MomentumMode((2, 2), 4)


class LatticePotentialTests(SimpleTestCase):
    def test_simple_fields(self):
        self.assertEqual(lattice_potential(SQUARE, 1.0, np.zeros(16)), 0.0)
        self.assertEqual(lattice_potential(SQUARE, 1.0, np.ones(16)), 8.0)
        c = 1.7
        self.assertAlmostEqual(lattice_potential(LatticeGeometry(1, 2), 0.0, [0.0, c]), c**2)

    def test_constant_field_through_the_model(self):
        model = LatticeScalarPotential(SQUARE, m_lat_squared=1.0)
        c = -0.6
        self.assertAlmostEqual(model.evaluate(np.full(16, c)), 16 * c**2 / 2)

    def test_wrong_length(self):
        with self.assertRaises(ShapeError):
            lattice_potential(SQUARE, 1.0, np.zeros(15))

    def test_batch_evaluation(self):
        phi = np.random.default_rng(1).normal(size=(5, 16))
        batch = lattice_potential(SQUARE, 0.5, phi)
        np.testing.assert_allclose(batch, [lattice_potential(SQUARE, 0.5, row) for row in phi])

    def test_translation_and_sign_invariance(self):
        rng = np.random.default_rng(2)
        model = LatticeScalarPotential(SQUARE, m_lat_squared=1.0, lambda_coupling=0.3)
        for _ in range(10):
            phi = rng.normal(size=16)
            field = phi.reshape(4, 4)
            shifted = np.roll(np.roll(field, 1, axis=0), 3, axis=1).ravel()
            self.assertAlmostEqual(model.evaluate(shifted), model.evaluate(phi), places=12)
            self.assertEqual(model.evaluate(-phi), model.evaluate(phi))

    def test_onsite_plus_bonds_decomposition(self):
        rng = np.random.default_rng(4)
        model = LatticeScalarPotential(SQUARE, m_lat_squared=-0.4, lambda_coupling=0.2)
        table = model.neighbor_table()
        for _ in range(20):
            phi = rng.normal(size=16)
            bonds = sum(
                (phi[i] - phi[k]) ** 2 for i in range(16) for k in table[i] if k != i
            )
            total = model.onsite(phi).sum() + 0.25 * bonds
            self.assertAlmostEqual(total, model.evaluate(phi), delta=1e-12 * abs(total) + 1e-12)


class FourierModeTests(SimpleTestCase):
    def test_constant_field(self):
        c = 0.8
        phi = np.full(16, c)
        self.assertAlmostEqual(fourier_mode_power(SQUARE, phi, ZERO), 16 * c**2)
        self.assertAlmostEqual(fourier_mode_power(SQUARE, phi, CORNER), 0.0, places=12)

    def test_impulse_has_flat_spectrum(self):
        phi = np.zeros(16)
        phi[0] = 1.0
        for mode in SQUARE.all_modes():
            self.assertAlmostEqual(fourier_mode_power(SQUARE, phi, mode), 1.0 / 16)

    def test_parseval_and_reality(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            phi = rng.normal(size=16)
            powers = [fourier_mode_power(SQUARE, phi, mode) for mode in SQUARE.all_modes()]
            self.assertAlmostEqual(sum(powers), float(phi @ phi), delta=1e-10 * float(phi @ phi))
            for mode in SQUARE.all_modes():
                self.assertAlmostEqual(
                    fourier_mode_power(SQUARE, phi, mode),
                    fourier_mode_power(SQUARE, phi, mode.negated()),
                    places=12,
                )

    def test_momentum_space_potential(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            phi = rng.normal(size=16)
            direct = lattice_potential(SQUARE, 1.0, phi)
            self.assertAlmostEqual(
                momentum_space_potential(SQUARE, 1.0, phi), direct, delta=1e-10 * direct
            )

    def test_power_is_translation_invariant(self):
        phi = np.random.default_rng(8).normal(size=16)
        shifted = np.roll(phi.reshape(4, 4), 1, axis=1).ravel()
        for mode in (ZERO, CORNER, MomentumMode((1, 3), 4)):
            self.assertAlmostEqual(
                fourier_mode_power(SQUARE, shifted, mode), fourier_mode_power(SQUARE, phi, mode)
            )


class DispersionTests(SimpleTestCase):
    def test_corner_frequencies(self):
        self.assertAlmostEqual(free_dispersion(ZERO, 1.0), 1.0)
        self.assertAlmostEqual(free_dispersion(CORNER, 1.0), 9.0)
        self.assertAlmostEqual(zero_point_width(ZERO, 1.0), 0.5)
        self.assertAlmostEqual(zero_point_width(CORNER, 1.0), 1.0 / 6)

    def test_massless_zero_mode(self):
        with self.assertRaises(MasslessZeroModeError):
            free_dispersion(ZERO, 0.0)

    def test_thermal_widths(self):
        self.assertAlmostEqual(thermal_width(ZERO, 1.0, 1.0), 1.081977, delta=2e-6)
        self.assertAlmostEqual(thermal_width(CORNER, 1.0, 1.0), 0.184131, delta=2e-6)

    def test_zero_temperature_limit(self):
        for mode in (ZERO, CORNER):
            self.assertAlmostEqual(
                thermal_width(mode, 1.0, 200.0) / zero_point_width(mode, 1.0), 1.0, delta=1e-12
            )
        self.assertEqual(thermal_width(ZERO, 1.0, 1.0), 1.0 / (2.0 * math.tanh(0.5)))
