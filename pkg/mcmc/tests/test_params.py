# mcmc/tests/test_params.py
from django.test import SimpleTestCase

from digitization.exceptions import InvalidParameterError
from digitization.grid import grid_from_spacing
from digitization.potentials import QuarticPotential
from lattice.potential import LatticeScalarPotential
from mcmc.params import TrotterParams, delta_for_hop_ratio, slices_for, trotter_params


class TrotterParamsTests(SimpleTestCase):
    def test_beta_must_equal_k_delta(self):
        TrotterParams(delta=0.25, beta=1.0, k=4, b_max=2)
        with self.assertRaises(InvalidParameterError):
            TrotterParams(delta=0.25, beta=1.1, k=4, b_max=2)

    def test_b_max_range(self):
        with self.assertRaises(InvalidParameterError):
            TrotterParams(delta=0.25, beta=1.0, k=4, b_max=0)
        with self.assertRaises(InvalidParameterError):
            TrotterParams(delta=0.25, beta=1.0, k=4, b_max=5)

    def test_weights(self):
        grid = grid_from_spacing(0.5, lambda_=3)
        params = TrotterParams(delta=0.001, beta=0.004, k=4, b_max=2)
        self.assertAlmostEqual(params.diag_weight(grid, 1), 0.996, places=15)
        self.assertAlmostEqual(params.hop_weight(grid), 0.002, places=15)


class SlicesForTests(SimpleTestCase):
    def test_exact_divisors(self):
        self.assertEqual(slices_for(10.0, 0.001), 10000)
        self.assertEqual(slices_for(1.0, 0.002), 500)
        self.assertEqual(slices_for(1.0, 1.0), 1)

    def test_non_divisor_rejected(self):
        with self.assertRaises(InvalidParameterError):
            slices_for(1.0, 0.3)


class HopRatioTests(SimpleTestCase):
    def test_ratio_bound_and_integer_k(self):
        for beta, a_dig in [(1.0, 0.25), (1.0, 0.5), (1.0, 1.0), (10.0, 0.3)]:
            delta = delta_for_hop_ratio(beta, a_dig, 0.01)
            self.assertLessEqual(delta / (2 * a_dig**2), 0.01 + 1e-15)
            k = slices_for(beta, delta)
            self.assertAlmostEqual(k * delta, beta, delta=1e-12 * beta)

    def test_half_spacing_gives_known_k(self):
        delta = delta_for_hop_ratio(1.0, 0.5, 0.01)
        self.assertEqual(slices_for(1.0, delta), 200)

    def test_ratio_above_bound(self):
        with self.assertRaises(InvalidParameterError):
            delta_for_hop_ratio(1.0, 0.5, 0.02)


class PositivityTests(SimpleTestCase):
    def test_lattice_positivity(self):
        model = LatticeScalarPotential.from_params(m_squared=1.0, dims=2, extent=4)
        trotter_params(0.5, 0.005, grid_from_spacing(0.5, r_over_a=1000), model)
        with self.assertRaises(InvalidParameterError):
            trotter_params(0.5, 0.005, grid_from_spacing(0.2, r_over_a=1000), model)

    def test_default_b_max_is_half_k(self):
        grid = grid_from_spacing(0.3, r_over_a=1000)
        params = trotter_params(10.0, 0.001, grid, QuarticPotential())
        self.assertEqual(params.k, 10000)
        self.assertEqual(params.b_max, 5000)
        self.assertEqual(trotter_params(10.0, 0.001, grid, QuarticPotential(), b_max=1).b_max, 1)
