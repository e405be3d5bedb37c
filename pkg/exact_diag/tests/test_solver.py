# exact_diag/tests/test_solver.py
import numpy as np
from django.test import SimpleTestCase
from scipy.linalg import eigh

from digitization.grid import grid_from_spacing, make_grid
from digitization.potentials import QuarticPotential, harmonic_potential
from exact_diag.hamiltonian import build_hamiltonian
from exact_diag.solver import eigensystem, low_lying_spectrum

FREE = QuarticPotential(lambda_coupling=0.0, m_squared=0.0)


class EigensystemTests(SimpleTestCase):
    def test_two_by_two(self):
        # a_dig = 1 needs R = 1/2 on two points
        es = eigensystem(build_hamiltonian(make_grid(2, 0.5), FREE))
        np.testing.assert_allclose(es.energies, [0.5, 1.5], atol=1e-14)

    def test_energies_sorted(self):
        es = eigensystem(build_hamiltonian(make_grid(51, 5.0), QuarticPotential(1.0, -1.0)))
        self.assertTrue(np.all(np.diff(es.energies) >= 0))

    def test_matches_dense_solver(self):
        h = build_hamiltonian(make_grid(61, 6.0), QuarticPotential(1.0, 1.0))
        es = eigensystem(h)
        np.testing.assert_allclose(es.energies, eigh(h.to_dense(), eigvals_only=True), atol=1e-10)

    def test_spectral_decomposition_rebuilds_h(self):
        h = build_hamiltonian(make_grid(41, 4.0), QuarticPotential(0.5, -1.0))
        es = eigensystem(h)
        rebuilt = (es.vectors * es.energies) @ es.vectors.T
        np.testing.assert_allclose(rebuilt, h.to_dense(), atol=1e-9)

    def test_residual_and_orthonormality_contract(self):
        for lambda_, a_dig in [(101, 0.3), (1001, 0.5), (2001, 0.3)]:
            h = build_hamiltonian(grid_from_spacing(a_dig, lambda_=lambda_), QuarticPotential(1.0, 1.0))
            es = eigensystem(h)
            self.assertLessEqual(es.residual_norms(h).max(), 1e-10 * h.norm())
            self.assertLessEqual(es.orthonormality_error(), 1e-10)

    def test_harmonic_ground_state(self):
        es = eigensystem(build_hamiltonian(grid_from_spacing(0.05, lambda_=401), harmonic_potential()))
        self.assertAlmostEqual(es.ground_energy, 0.5, delta=1e-3)

    def test_even_potential_has_no_dipole(self):
        grid = make_grid(201, 10.0)
        for m_squared in (1.0, -1.0):
            es = eigensystem(build_hamiltonian(grid, QuarticPotential(1.0, m_squared)))
            dipoles = es.state_expectations(grid.coordinates())
            np.testing.assert_allclose(dipoles, 0.0, atol=1e-10)


class LowLyingSpectrumTests(SimpleTestCase):
    def test_matches_full_spectrum(self):
        h = build_hamiltonian(make_grid(301, 15.0), QuarticPotential(1.0, 1.0))
        np.testing.assert_allclose(low_lying_spectrum(h, 5), eigensystem(h).energies[:5], atol=1e-9)

    def test_harmonic_ladder(self):
        h = build_hamiltonian(grid_from_spacing(0.05, lambda_=401), harmonic_potential())
        np.testing.assert_allclose(low_lying_spectrum(h, 4), [0.5, 1.5, 2.5, 3.5], atol=1e-2)

    def test_request_beyond_size_is_clipped(self):
        h = build_hamiltonian(make_grid(5, 1.0), FREE)
        self.assertEqual(len(low_lying_spectrum(h, 10)), 5)
