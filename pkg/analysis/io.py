# analysis/io.py
import csv
from collections import defaultdict
from pathlib import Path

import numpy as np

from .series import ObservableSeries

SERIES_COLUMNS = ["sweep", "observable", "value"]
AGGREGATE_COLUMNS = [
    "a_dig",
    "m_squared",
    "delta",
    "K",
    "observable",
    "mean",
    "err",
    "d",
    "n_stream",
    "n_step",
    "exact",
    "rel_err",
]
RELATIVE_ERROR_COLUMNS = ["observable", "m_squared", "inv_a_dig", "rel_err", "rel_err_err"]


def fmt(value):
    """Full double precision; integers and strings pass through."""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return value


def write_rows(path, columns, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def read_rows(path):
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def write_series_csv(path, series_list):
    """Long format: one (sweep, observable, value) row per measurement."""
    rows = (
        (int(sweep), s.name, value)
        for s in series_list
        for sweep, value in zip(s.sweeps, s.values)
    )
    return write_rows(path, SERIES_COLUMNS, rows)


def read_series_csv(path, stream_id=0, fingerprint=""):
    sweeps = defaultdict(list)
    values = defaultdict(list)
    for row in read_rows(path):
        sweeps[row["observable"]].append(int(row["sweep"]))
        values[row["observable"]].append(float(row["value"]))
    return {
        name: ObservableSeries(name, values[name], stream_id, fingerprint, sweeps[name])
        for name in values
    }
