# mcmc/tests/test_brute_force.py
import numpy as np
from django.test import SimpleTestCase, override_settings
from scipy.sparse.csgraph import connected_components

from digitization.exceptions import EnumerationBudgetError
from digitization.grid import make_grid
from digitization.potentials import QuarticPotential
from mcmc.brute_force import (
    brute_force_expectation,
    enumeration_size,
    partition_function,
    transfer_matrix_partition_function,
    transition_matrix,
    weighted_configurations,
)
from mcmc.observables import square_observable
from mcmc.params import TrotterParams

from .factories import free_system, tiny_system


class EnumerationTests(SimpleTestCase):
    def test_tiny_system_sizes(self):
        params, grid, model = tiny_system()
        self.assertEqual(enumeration_size(params, grid, model), 81)
        # Tr A^4 for the 3x3 nearest-neighbour-or-equal adjacency
        self.assertEqual(len(weighted_configurations(params, grid, model)), 35)

    def test_budget(self):
        params, grid, model = tiny_system()
        with self.assertRaises(EnumerationBudgetError) as ctx:
            partition_function(params, grid, model, budget=80)
        self.assertEqual(ctx.exception.size, 81)

    @override_settings(TRUNCATION_ENUMERATION_BUDGET=10)
    def test_budget_from_settings(self):
        params, grid, model = tiny_system()
        with self.assertRaises(EnumerationBudgetError):
            partition_function(params, grid, model)


class PartitionFunctionTests(SimpleTestCase):
    def test_two_level_two_slice_by_hand(self):
        grid = make_grid(2, 1.0)
        model = QuarticPotential(lambda_coupling=0.0, m_squared=0.0)
        params = TrotterParams(delta=0.5, beta=1.0, k=2, b_max=1)
        d = 1 - 0.5 / 4
        h = 0.5 / 8
        self.assertAlmostEqual(partition_function(params, grid, model), 2 * d**2 + 2 * h**2, places=14)

    def test_sum_over_paths_equals_transfer_matrix_trace(self):
        for system in (tiny_system(), tiny_system(m_squared=-1.0), free_system()):
            z_paths = partition_function(*system)
            z_trace = transfer_matrix_partition_function(*system)
            self.assertAlmostEqual(z_paths / z_trace, 1.0, delta=1e-12)

    def test_expectation_of_constant_is_one(self):
        params, grid, model = tiny_system()
        value = brute_force_expectation(params, grid, model, lambda coords: np.ones(len(coords)))
        self.assertAlmostEqual(value, 1.0, places=12)

    def test_expectation_with_observable(self):
        params, grid, model = tiny_system()
        value = brute_force_expectation(params, grid, model, square_observable())
        self.assertGreater(value, 0.0)
        self.assertLess(value, 1.0)


class TransitionMatrixTests(SimpleTestCase):
    def test_detailed_balance(self):
        for move, b_max in (("cluster", 2), ("cluster", 4), ("metropolis", 1)):
            params, grid, model = tiny_system(b_max=b_max)
            _, matrix, p = transition_matrix(params, grid, model, move=move)
            np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-12)
            flow = p[:, None] * matrix
            np.testing.assert_allclose(flow, flow.T, atol=1e-10)
            np.testing.assert_allclose(p @ matrix, p, atol=1e-10)

    def test_cluster_moves_are_irreducible(self):
        params, grid, model = tiny_system(b_max=2)
        configs, matrix, _ = transition_matrix(params, grid, model)
        n_components, _ = connected_components(matrix > 0, connection="strong")
        self.assertEqual(len(configs), 35)
        self.assertEqual(n_components, 1)
