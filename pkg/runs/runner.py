# runs/runner.py
"""
Executes validated RunConfigs: output directories, stream workers, CSV tables,
manifest.cfg and the run registry rows.
"""
import logging
import platform
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numba
import numpy as np
import scipy
from django.conf import settings

import truncation
from analysis.aggregate import block_and_aggregate, relative_error_table
from analysis.autocorrelation import LENGTH_RULE, WINDOW_RULE
from analysis.io import (
    AGGREGATE_COLUMNS,
    RELATIVE_ERROR_COLUMNS,
    read_series_csv,
    write_rows,
    write_series_csv,
)
from digitization.exceptions import InvalidParameterError
from exact_diag.hamiltonian import build_hamiltonian
from exact_diag.solver import low_lying_spectrum
from exact_diag.thermal import (
    DIAGONAL_OBSERVABLES,
    ZERO_FLOOR,
    check_lambda_sufficiency,
    exact_expectation,
)
from lattice.free_theory import thermal_width
from lattice.geometry import MomentumMode
from mcmc.chain import fingerprint, run_stream
from mcmc.observables import MODE_POWER_PREFIX

from .config import format_config, read_config_file, write_config
from .models import AggregateRecord, RunRecord, StreamRecord
from .serializers import parse_config

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.cfg"
EXACT_COLUMNS = [
    "a_dig",
    "m_squared",
    "lambda",
    "r",
    "beta",
    "observable",
    "value",
    "halved_value",
    "sufficient",
]
SPECTRUM_COLUMNS = ["a_dig", "m_squared", "lambda", "level", "energy"]
MC_MODES = ("mc-single", "mc-lattice")

# stream-length warning threshold, in units of d, for coarse grids
LONG_STREAM_FACTOR = 2200
LONG_STREAM_A_DIG = 0.9


def output_directory(config):
    if config.output_directory:
        return Path(config.output_directory)
    return Path(settings.TRUNCATION_OUTPUT_ROOT) / config.label


def max_workers(n_streams):
    return max(1, min(int(settings.TRUNCATION_MAX_WORKERS), n_streams))


def version_info():
    return {
        "version.package": truncation.__version__,
        "version.python": platform.python_version(),
        "version.numpy": np.__version__,
        "version.scipy": scipy.__version__,
        "version.numba": numba.__version__,
    }


def write_manifest(directory, config, extra=None):
    entries = {
        **config.values,
        **version_info(),
        "stats.window_rule": WINDOW_RULE,
        "stats.length_rule": LENGTH_RULE,
        **(extra or {}),
    }
    return write_config(Path(directory) / MANIFEST_NAME, entries)


def point_manifest(point):
    entries = {
        f"point.{point.index}.a_dig": point.a_dig,
        f"point.{point.index}.m_squared": point.m_squared,
        f"point.{point.index}.lambda": point.grid.lambda_,
        f"point.{point.index}.r": point.grid.r,
        f"point.{point.index}.directory": point.slug,
    }
    if point.params is not None:
        entries.update(
            {
                f"point.{point.index}.delta": point.params.delta,
                f"point.{point.index}.k": point.params.k,
                f"point.{point.index}.b_max": point.params.b_max,
            }
        )
    return entries


def stream_manifest(point, result):
    prefix = f"point.{point.index}.stream.{result.stream_id}"
    entries = {f"{prefix}.seed": result.seed, f"{prefix}.sweeps": result.sweeps}
    for move, rate in result.acceptance.items():
        entries[f"{prefix}.acceptance.{move}"] = rate
    return entries


def run_streams(point, schedule, base_seed, names, n_streams):
    """
    All streams of one sweep point, in parallel when more than one worker is
    allowed. Results come back ordered by stream id.
    """
    tasks = [
        (point.params, point.grid, point.model, schedule, base_seed, tuple(names), s)
        for s in range(n_streams)
    ]
    workers = max_workers(n_streams)
    if workers == 1:
        return [run_stream(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run_stream, tasks))


def run_monte_carlo(config, directory, record):
    schedule = config.chain_schedule()
    names = config.observable_names()
    points = config.points()
    extra = {}
    written = []
    for point in points:
        logger.info(
            "point %d/%d: a_dig=%g m^2=%g %s, %d streams",
            point.index + 1, len(points), point.a_dig, point.m_squared, point.params, config.n_streams,
        )
        results = run_streams(point, schedule, config.base_seed, names, config.n_streams)
        extra.update(point_manifest(point))
        for result in results:
            path = write_series_csv(
                directory / point.slug / f"stream_{result.stream_id:03d}.csv",
                [result.series[name] for name in names],
            )
            written.append(path)
            extra.update(stream_manifest(point, result))
            StreamRecord.objects.create(
                run=record,
                point=point.index,
                a_dig=point.a_dig,
                m_squared=point.m_squared,
                stream_id=result.stream_id,
                seed=str(result.seed),
                acceptance=result.acceptance,
                csv_path=str(path),
            )
    written.append(write_manifest(directory, config, extra))
    return written


def run_exact_diag(config, directory, record):
    names = config.observable_names()
    check = config.exact_diag["check_sufficiency"]
    n_levels = config.exact_diag["n_levels"]
    rows = []
    spectrum = []
    extra = {}
    for point in config.points():
        grid, model = point.grid, point.model
        extra.update(point_manifest(point))
        for name in names:
            if check:
                result = check_lambda_sufficiency(grid, model, name, config.beta)
                rows.append(
                    [point.a_dig, point.m_squared, grid.lambda_, grid.r, config.beta, name,
                     result.value, result.halved_value, int(result.agrees)]
                )
            else:
                value = exact_expectation(grid, model, name, config.beta)
                rows.append(
                    [point.a_dig, point.m_squared, grid.lambda_, grid.r, config.beta, name,
                     value, "", ""]
                )
            logger.info("%s m^2=%g: <%s> = %.10g", grid, point.m_squared, name, rows[-1][6])
        if n_levels:
            energies = low_lying_spectrum(build_hamiltonian(grid, model), n_levels)
            spectrum.extend(
                [point.a_dig, point.m_squared, grid.lambda_, level, energy]
                for level, energy in enumerate(energies)
            )
    written = [write_rows(directory / "exact_diag.csv", EXACT_COLUMNS, rows)]
    if n_levels:
        written.append(write_rows(directory / "spectrum.csv", SPECTRUM_COLUMNS, spectrum))
    written.append(write_manifest(directory, config, extra))
    return written


def reference_value(source, point, name):
    """
    The value a Monte Carlo estimate is compared against, when one is known:
    the same-grid exact value for a single boson, the continuum free-field
    width for a lattice mode.
    """
    if name in DIAGONAL_OBSERVABLES and point.model.n_bos == 1:
        return exact_expectation(point.grid, point.model, name, source.beta)
    if name.startswith(MODE_POWER_PREFIX) and not getattr(point.model, "lambda_coupling", 0):
        mode = MomentumMode.parse(name[len(MODE_POWER_PREFIX):], point.model.geometry)
        return thermal_width(mode, point.m_squared, source.beta)
    return None


def load_point_streams(input_dir, point, tag):
    """observable name -> list of ObservableSeries, one per stream file."""
    streams = defaultdict(list)
    for path in sorted((Path(input_dir) / point.slug).glob("stream_*.csv")):
        stream_id = int(path.stem.split("_")[1])
        for name, series in read_series_csv(path, stream_id, tag).items():
            streams[name].append(series)
    return streams


def length_factor(config, a_dig):
    factor = config.analyze.get("min_length_factor")
    if factor is None and a_dig >= LONG_STREAM_A_DIG:
        return LONG_STREAM_FACTOR
    return factor


def run_analyze(config, directory, record):
    rows = []
    groups = defaultdict(list)
    for input_dir in config.analyze["inputs"]:
        manifest = read_config_file(Path(input_dir) / MANIFEST_NAME)
        source = parse_config(manifest.get("run.mode", ""), manifest)
        if source.mode not in MC_MODES:
            raise InvalidParameterError(f"{input_dir} holds a {source.mode} run, not a Monte Carlo run")
        for point in source.points():
            tag = fingerprint(point.params, point.grid, point.model)
            streams = load_point_streams(input_dir, point, tag)
            for name in source.observable_names():
                result = block_and_aggregate(streams[name], length_factor(config, point.a_dig))
                exact = config.analyze.get("exact")
                if exact is None:
                    exact = reference_value(source, point, name)
                rel_err = (exact - result.mean) / exact if exact and abs(exact) >= ZERO_FLOOR else None
                rows.append(
                    [point.a_dig, point.m_squared, point.params.delta, point.params.k, name,
                     result.mean, result.std_error, result.d, result.n_stream, result.n_step,
                     "" if exact is None else exact, "" if rel_err is None else rel_err]
                )
                AggregateRecord.objects.create(
                    run=record,
                    observable=name,
                    a_dig=point.a_dig,
                    m_squared=point.m_squared,
                    delta=point.params.delta,
                    k=point.params.k,
                    mean=result.mean,
                    err=result.std_error,
                    d=result.d,
                    n_stream=result.n_stream,
                    n_step=result.n_step,
                    exact=exact,
                    rel_err=rel_err,
                )
                logger.info(
                    "%s a_dig=%g m^2=%g: %.8g +- %.2g (d=%d, exact %s)",
                    name, point.a_dig, point.m_squared, result.mean, result.std_error, result.d, exact,
                )
                if rel_err is not None:
                    groups[(name, point.m_squared)].append((point.a_dig, result, exact))

    relative = []
    for (name, m_squared), entries in sorted(groups.items()):
        table = [relative_error_table([(a_dig, result)], exact)[0] for a_dig, result, exact in entries]
        relative.extend(
            [name, m_squared, row.inv_a_dig, row.rel_err, row.rel_err_err]
            for row in sorted(table, key=lambda row: row.inv_a_dig)
        )
    return [
        write_rows(directory / "aggregate.csv", AGGREGATE_COLUMNS, rows),
        write_rows(directory / "relative_error.csv", RELATIVE_ERROR_COLUMNS, relative),
        write_manifest(directory, config),
    ]


RUNNERS = {
    "exact-diag": run_exact_diag,
    "mc-single": run_monte_carlo,
    "mc-lattice": run_monte_carlo,
    "analyze": run_analyze,
}


def execute(config):
    """
    Run one validated config end to end and register it.

    The RunRecord is marked failed and the error re-raised on any exception.
    Returns (record, written paths).
    """
    directory = output_directory(config)
    directory.mkdir(parents=True, exist_ok=True)
    record = RunRecord.objects.create(
        mode=config.mode,
        label=config.label,
        config_text=format_config(config.values),
        base_seed=str(config.base_seed),
        output_dir=str(directory),
    )
    record.mark_running()
    logger.info("run #%d (%s) writing to %s", record.id, config.mode, directory)
    try:
        written = RUNNERS[config.mode](config, directory, record)
    except Exception as exc:
        record.mark_finished("failed", str(exc))
        logger.error("run #%d failed: %s", record.id, exc)
        raise
    record.mark_finished("completed")
    return record, written

