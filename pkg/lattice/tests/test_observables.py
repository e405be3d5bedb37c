# lattice/tests/test_observables.py
import numpy as np
from django.test import SimpleTestCase

from lattice.free_theory import fourier_mode_power
from lattice.geometry import LatticeGeometry, MomentumMode
from lattice.observables import mode_power_name, mode_power_observable
from lattice.potential import LatticeScalarPotential
from mcmc.observables import resolve_observables


class ModePowerObservableTests(SimpleTestCase):
    def test_slice_average(self):
        geometry = LatticeGeometry(2, 4)
        mode = MomentumMode((2, 2), 4)
        coords = np.random.default_rng(0).normal(size=(6, 16))
        observable = mode_power_observable(geometry, mode)
        self.assertEqual(observable.name, "mode_power:2,2")
        expected = np.mean([fourier_mode_power(geometry, row, mode) for row in coords])
        self.assertAlmostEqual(observable.measure(coords), expected, places=12)

    def test_resolved_by_name(self):
        model = LatticeScalarPotential.from_params(m_squared=1.0, dims=2, extent=4)
        names = [mode_power_name(MomentumMode((0, 0), 4)), "potential"]
        resolved = resolve_observables(names, model)
        self.assertEqual([obs.name for obs in resolved], ["mode_power:0,0", "potential"])
        coords = np.ones((3, 16))
        self.assertAlmostEqual(resolved[0].measure(coords), 16.0)
        self.assertAlmostEqual(resolved[1].measure(coords), 8.0)
