# runs/tests/test_serializers.py
from django.conf import settings
from django.test import SimpleTestCase
from rest_framework import serializers

from runs.config import format_config, parse_config_text, read_config_file
from runs.serializers import flatten_errors, parse_config

MC_SINGLE = {
    "digitization.a_dig": "0.5",
    "digitization.r_over_a": "10",
    "trotter.beta": "1",
    "trotter.delta": "0.005",
}

MC_LATTICE = {
    "physics.m_squared": "1.0",
    "digitization.a_dig": "0.5",
    "digitization.r_over_a": "1000",
    "trotter.temperature": "1",
    "trotter.delta": "0.002",
}


class ParseConfigTests(SimpleTestCase):
    def assertRejected(self, mode, values, key):
        with self.assertRaises(serializers.ValidationError) as ctx:
            parse_config(mode, values)
        self.assertIn(key, ctx.exception.detail)
        return ctx.exception

    def test_defaults(self):
        config = parse_config("mc-single", MC_SINGLE)
        self.assertEqual(config.label, "mc-single")
        self.assertEqual(config.physics["potential"], "quartic")
        self.assertEqual(config.physics["m_squared"], [1.0])
        self.assertEqual(config.observable_names(), ["potential"])
        self.assertEqual(config.n_streams, 4)
        (point,) = config.points()
        self.assertEqual(point.grid.lambda_, 21)
        self.assertAlmostEqual(point.grid.r, 5.0)
        self.assertEqual(point.params.k, 200)
        self.assertEqual(point.params.b_max, 100)

    def test_temperature(self):
        config = parse_config("exact-diag", {"digitization.r": "3", "trotter.temperature": "0.1"})
        self.assertAlmostEqual(config.beta, 10.0)
        self.assertEqual(config.digitization["lambda"], 2001)
        self.assertNotIn("trotter.temperature", config.values)

    def test_r_over_a(self):
        config = parse_config(
            "exact-diag",
            {"digitization.a_dig": "0.3, 0.7", "digitization.r_over_a": "1000", "trotter.beta": "10"},
        )
        grids = [point.grid for point in config.points()]
        self.assertEqual([g.lambda_ for g in grids], [2001, 2001])
        self.assertAlmostEqual(grids[0].r, 300.0)
        self.assertAlmostEqual(grids[1].r, 700.0)

    def test_sweep_order(self):
        config = parse_config(
            "mc-single",
            {**MC_SINGLE, "digitization.a_dig": "0.3, 0.5", "physics.m_squared": "1, -1"},
        )
        points = config.points()
        self.assertEqual(
            [(round(p.a_dig, 12), p.m_squared) for p in points],
            [(0.3, 1.0), (0.3, -1.0), (0.5, 1.0), (0.5, -1.0)],
        )
        self.assertEqual(points[3].slug, "point_03")

    def test_overrides_win(self):
        config = parse_config("mc-single", MC_SINGLE, {"schedule.n_sweeps": "25"})
        self.assertEqual(config.chain_schedule().n_sweeps, 25)

    def test_hop_ratio(self):
        values = {**MC_SINGLE, "trotter.hop_ratio": "0.01"}
        del values["trotter.delta"]
        (point,) = parse_config("mc-single", values).points()
        self.assertEqual(point.params.k, 200)

    def test_unknown_key(self):
        self.assertRejected("mc-single", {**MC_SINGLE, "physics.mass": "1"}, "physics.mass")
        self.assertRejected("mc-single", {**MC_SINGLE, "solver.tol": "1"}, "solver.tol")

    def test_manifest_only_sections_are_ignored(self):
        values = {**MC_SINGLE, "version.numpy": "2.0", "point.0.k": "200", "stats.window_rule": "x"}
        parse_config("mc-single", values)

    def test_exactly_one_of(self):
        self.assertRejected("mc-single", {**MC_SINGLE, "trotter.temperature": "1"}, "trotter.beta")
        self.assertRejected("mc-single", {**MC_SINGLE, "digitization.r": "1"}, "digitization.r")
        self.assertRejected("mc-single", {**MC_SINGLE, "trotter.hop_ratio": "0.01"}, "trotter.delta")

    def test_mode_mismatch(self):
        self.assertRejected("mc-single", {**MC_SINGLE, "run.mode": "mc-lattice"}, "run.mode")

    def test_delta_must_divide_beta(self):
        self.assertRejected("mc-single", {**MC_SINGLE, "trotter.delta": "0.3"}, "trotter.delta")

    def test_b_max_above_k(self):
        self.assertRejected("mc-single", {**MC_SINGLE, "trotter.b_max": "201"}, "trotter.b_max")

    def test_positivity(self):
        self.assertRejected(
            "mc-lattice",
            {**MC_LATTICE, "digitization.a_dig": "0.2", "trotter.delta": "0.005", "trotter.temperature": "2"},
            "trotter.delta",
        )

    def test_field_errors_are_flattened(self):
        exc = self.assertRejected("mc-single", {**MC_SINGLE, "trotter.delta": "-1"}, "trotter")
        lines = flatten_errors(exc.detail)
        self.assertEqual(len(lines), 1)
        self.assertTrue(lines[0].startswith("trotter.delta: "))

    def test_exact_diag_observables(self):
        self.assertRejected(
            "exact-diag", {"digitization.r": "3", "trotter.beta": "1", "observables.names": "energy"},
            "observables.names",
        )
        self.assertRejected(
            "mc-single", {**MC_SINGLE, "observables.modes": "0,0"}, "observables.modes"
        )

    def test_lattice_modes(self):
        config = parse_config("mc-lattice", MC_LATTICE)
        self.assertEqual(config.observable_names(), ["mode_power:0,0", "mode_power:2,2"])
        config = parse_config("mc-lattice", {**MC_LATTICE, "observables.modes": "1,0; -1,5"})
        self.assertEqual(config.observables["modes"], ["1,0", "3,1"])
        self.assertRejected("mc-lattice", {**MC_LATTICE, "observables.modes": "1"}, "observables.modes")
        self.assertRejected("mc-lattice", {**MC_LATTICE, "physics.potential": "quartic"}, "physics.potential")

    def test_analyze_needs_inputs(self):
        self.assertRejected("analyze", {}, "analyze.inputs")
        config = parse_config("analyze", {"analyze.inputs": "a, b", "analyze.exact": "1.08"})
        self.assertEqual(config.analyze["inputs"], ["a", "b"])

    def test_echo_parses_back_to_the_same_config(self):
        for mode, values in (("mc-single", MC_SINGLE), ("mc-lattice", MC_LATTICE)):
            config = parse_config(mode, values)
            echoed = parse_config(mode, parse_config_text(format_config(config.values)))
            self.assertEqual(echoed.values, config.values)
            self.assertEqual(echoed.observable_names(), config.observable_names())


class ShippedConfigTests(SimpleTestCase):
    def load(self, name, mode):
        return parse_config(mode, read_config_file(settings.BASE_DIR / "configs" / name))

    def test_quartic_monte_carlo_burns_in(self):
        config = self.load("quartic_mc.cfg", "mc-single")
        schedule = config.chain_schedule()
        self.assertEqual((schedule.n_sweeps, schedule.burn_in, config.n_streams), (10000, 2000, 8))
        for point in config.points():
            self.assertEqual(point.params.k, 10000)
            self.assertEqual(point.params.b_max, 5000)

    def test_lattice_sweep_shares_delta(self):
        config = self.load("lattice_sweep.cfg", "mc-lattice")
        for point, a_dig in zip(config.points(), [0.5, 0.75, 1.0], strict=True):
            self.assertAlmostEqual(point.a_dig, a_dig)
            self.assertAlmostEqual(point.params.delta, 0.002)

    def test_lattice_half_spacing(self):
        config = self.load("lattice_a050.cfg", "mc-lattice")
        (point,) = config.points()
        self.assertEqual(point.params.k, 500)
        self.assertGreaterEqual(config.n_streams, 4)
        proposals = config.chain_schedule().n_sweeps * point.params.k * point.model.n_bos
        self.assertGreaterEqual(proposals, 10**6)
