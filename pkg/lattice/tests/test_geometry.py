# lattice/tests/test_geometry.py
import math

import numpy as np
from django.test import SimpleTestCase

from digitization.exceptions import InvalidParameterError
from lattice.geometry import LatticeGeometry, MomentumMode


class LatticeGeometryTests(SimpleTestCase):
    def test_site_count(self):
        self.assertEqual(LatticeGeometry(2, 4).n_sites, 16)
        self.assertEqual(LatticeGeometry(3, 2).n_sites, 8)

    def test_index_round_trip(self):
        geometry = LatticeGeometry(2, 4)
        for i in range(geometry.n_sites):
            self.assertEqual(geometry.site_index(geometry.site_vector(i)), i)

    def test_neighbors_wrap(self):
        geometry = LatticeGeometry(2, 4)
        corner = geometry.site_index((3, 0))
        self.assertEqual(geometry.neighbor(corner, 0, +1), geometry.site_index((0, 0)))
        self.assertEqual(geometry.neighbor(corner, 1, -1), geometry.site_index((3, 3)))

    def test_neighbor_table_is_symmetric(self):
        geometry = LatticeGeometry(2, 4)
        table = geometry.neighbor_table()
        self.assertEqual(table.shape, (16, 4))
        for i in range(16):
            for k in table[i]:
                self.assertIn(i, table[k])

    def test_invalid_geometry(self):
        with self.assertRaises(InvalidParameterError):
            LatticeGeometry(0, 4)


class MomentumModeTests(SimpleTestCase):
    def test_components_are_multiples_of_two_pi_over_l(self):
        mode = MomentumMode((2, 2), 4)
        np.testing.assert_allclose(mode.q, [math.pi, math.pi])
        self.assertEqual(mode.label, "2,2")

    def test_parse_normalizes_modulo_l(self):
        geometry = LatticeGeometry(2, 4)
        self.assertEqual(MomentumMode.parse("-1, 5", geometry).ell, (3, 1))
        self.assertEqual(MomentumMode.parse("0,0", geometry).negated().ell, (0, 0))

    def test_parse_rejects_bad_text(self):
        geometry = LatticeGeometry(2, 4)
        with self.assertRaises(InvalidParameterError):
            MomentumMode.parse("1", geometry)
        with self.assertRaises(InvalidParameterError):
            MomentumMode.parse("a,b", geometry)

    def test_all_modes(self):
        self.assertEqual(len(LatticeGeometry(2, 4).all_modes()), 16)
