# analysis/tests/test_io.py
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from analysis.io import AGGREGATE_COLUMNS, read_rows, read_series_csv, write_rows, write_series_csv
from analysis.series import ObservableSeries


class SeriesCsvTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)

    def test_long_format(self):
        values = np.random.default_rng(0).standard_normal(5) / 3
        series = [
            ObservableSeries("potential", values, sweeps=[2, 4, 6, 8, 10]),
            ObservableSeries("x", -values, sweeps=[2, 4, 6, 8, 10]),
        ]
        path = write_series_csv(self.root / "point_00" / "stream_000.csv", series)
        rows = read_rows(path)
        self.assertEqual(list(rows[0]), ["sweep", "observable", "value"])
        self.assertEqual(len(rows), 10)

        loaded = read_series_csv(path, stream_id=7, fingerprint="abc")
        self.assertEqual(set(loaded), {"potential", "x"})
        np.testing.assert_array_equal(loaded["potential"].values, values)
        np.testing.assert_array_equal(loaded["x"].sweeps, [2, 4, 6, 8, 10])
        self.assertEqual(loaded["x"].stream_id, 7)
        self.assertEqual(loaded["x"].fingerprint, "abc")

    def test_rows_with_blanks(self):
        path = write_rows(self.root / "aggregate.csv", AGGREGATE_COLUMNS, [[0.5, 1.0, 0.002, 500, "x2", 0.1, 0.01, 3, 4, 1000, "", ""]])
        (row,) = read_rows(path)
        self.assertEqual(row["K"], "500")
        self.assertEqual(row["exact"], "")
        self.assertEqual(float(row["delta"]), 0.002)


class ObservableSeriesTests(SimpleTestCase):
    def test_mismatched_sweeps(self):
        with self.assertRaises(ValueError):
            ObservableSeries("x", [1.0, 2.0], sweeps=[1])
