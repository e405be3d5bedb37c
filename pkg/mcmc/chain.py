# mcmc/chain.py
import hashlib
import json
import logging
from dataclasses import dataclass, field

import numpy as np

from analysis.series import ObservableSeries

from .configuration import PathConfiguration
from .kernels import cluster_sweep_kernel, kernel_tables, metropolis_sweep_kernel
from .observables import resolve_observables

logger = logging.getLogger(__name__)

MOVE_CLASSES = ("metropolis", "cluster")


@dataclass
class MoveTally:
    proposed: int = 0
    blocked: int = 0
    accepted: int = 0

    @property
    def rate(self):
        return self.accepted / self.proposed if self.proposed else 0.0

    def record(self, proposed, accepted, blocked):
        self.proposed += int(proposed)
        self.accepted += int(accepted)
        self.blocked += int(blocked)


@dataclass
class Schedule:
    n_sweeps: int
    burn_in: int = 0
    measure_every: int = 1


def derive_seed(base_seed, stream_id):
    """A 64-bit seed for stream s, hashed from (base_seed, s) by SeedSequence."""
    sequence = np.random.SeedSequence(int(base_seed), spawn_key=(int(stream_id),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass
class ChainStream:
    """One Markov chain: its path, its generator and its bookkeeping."""

    config: PathConfiguration
    rng: np.random.Generator
    stream_id: int = 0
    seed: int = 0
    sweeps: int = 0
    tallies: dict = field(default_factory=lambda: {name: MoveTally() for name in MOVE_CLASSES})

    @classmethod
    def start(cls, params, grid, model, base_seed=0, stream_id=0):
        """All slices at the grid centre, n = floor(lambda / 2)."""
        seed = derive_seed(base_seed, stream_id)
        config = PathConfiguration.uniform(params.k, model.n_bos, grid.center_index)
        return cls(
            config=config,
            rng=np.random.default_rng(seed),
            stream_id=stream_id,
            seed=seed,
        )

    def acceptance_rates(self):
        return {name: tally.rate for name, tally in self.tallies.items() if tally.proposed}


def metropolis_sweep(stream, params, grid, model, tables=None):
    tables = tables or kernel_tables(params, grid, model)
    n = params.k * model.n_bos
    signs = stream.rng.integers(0, 2, size=n) * 2 - 1
    uniforms = stream.rng.random(n)
    accepted, blocked = metropolis_sweep_kernel(
        stream.config.indices,
        signs,
        uniforms,
        tables.onsite,
        tables.coords,
        tables.neighbors,
        tables.log_diag,
        tables.log_hop,
        tables.delta,
    )
    stream.tallies["metropolis"].record(n, accepted, blocked)
    stream.sweeps += 1
    return stream


def cluster_update(stream, params, grid, model, n_proposals=1, tables=None):
    """
    n_proposals block moves at uniformly random (j, i), B uniform in 1 .. b_max.
    """
    tables = tables or kernel_tables(params, grid, model)
    rng = stream.rng
    sizes = rng.integers(1, params.b_max + 1, size=n_proposals)
    slices = rng.integers(0, params.k, size=n_proposals)
    bosons = rng.integers(0, model.n_bos, size=n_proposals)
    signs = rng.integers(0, 2, size=n_proposals) * 2 - 1
    uniforms = rng.random(n_proposals)
    accepted, blocked = cluster_sweep_kernel(
        stream.config.indices,
        sizes,
        slices,
        bosons,
        signs,
        uniforms,
        tables.onsite,
        tables.coords,
        tables.neighbors,
        tables.log_diag,
        tables.log_hop,
        tables.delta,
    )
    stream.tallies["cluster"].record(n_proposals, accepted, blocked)
    return stream


def sweep(stream, params, grid, model, tables=None):
    """
    One sweep of K * N_bos proposals: lexicographic single-slice moves when
    b_max == 1, random-site block moves otherwise.
    """
    if params.b_max == 1:
        return metropolis_sweep(stream, params, grid, model, tables)
    cluster_update(stream, params, grid, model, params.k * model.n_bos, tables)
    stream.sweeps += 1
    return stream


def fingerprint(params, grid, model):
    payload = {**params.describe(), **model.describe(), "grid": str(grid)}
    return hashlib.sha1(json.dumps(payload, sort_keys=True, default=str).encode()).hexdigest()[:12]


@dataclass
class ChainResult:
    series: dict
    stream_id: int
    seed: int
    sweeps: int
    acceptance: dict
    tallies: dict


def run_chain(params, grid, model, schedule, seed=0, observables=(), stream_id=0):
    """
    Run one stream from the centred start and record slice-averaged observables.

    burn_in sweeps are run unrecorded; after that one value per observable is
    stored every measure_every sweeps, for n_sweeps sweeps. Observables may be
    given by name, which keeps the call picklable for worker processes.
    """
    observables = [
        resolve_observables([obs], model)[0] if isinstance(obs, str) else obs
        for obs in observables
    ]
    stream = ChainStream.start(params, grid, model, base_seed=seed, stream_id=stream_id)
    tables = kernel_tables(params, grid, model)
    tag = fingerprint(params, grid, model)
    values = {obs.name: [] for obs in observables}
    recorded = []

    logger.info(
        "stream %d: %s, %s, %d+%d sweeps", stream_id, grid, params, schedule.burn_in, schedule.n_sweeps
    )
    total = schedule.burn_in + schedule.n_sweeps
    for n in range(1, total + 1):
        sweep(stream, params, grid, model, tables)
        after_burn_in = n - schedule.burn_in
        if after_burn_in > 0 and after_burn_in % schedule.measure_every == 0:
            coords = tables.coords[stream.config.indices]
            for obs in observables:
                values[obs.name].append(obs.measure(coords))
            recorded.append(after_burn_in)

    series = {
        name: ObservableSeries(name, vals, stream_id, tag, np.asarray(recorded, dtype=np.int64))
        for name, vals in values.items()
    }
    rates = stream.acceptance_rates()
    logger.info(
        "stream %d finished after %d sweeps, acceptance %s",
        stream_id, stream.sweeps, {k: round(v, 4) for k, v in rates.items()},
    )
    return ChainResult(
        series=series,
        stream_id=stream_id,
        seed=stream.seed,
        sweeps=stream.sweeps,
        acceptance=rates,
        tallies={k: vars(t).copy() for k, t in stream.tallies.items()},
    )


def run_stream(task):
    """
    Process-pool entry point: run_chain on a (params, grid, model, schedule,
    seed, observable names, stream id) tuple.

    Everything in the tuple and in the result is a plain library object, so a
    worker started by spawn or forkserver needs no Django setup to unpickle it.
    """
    params, grid, model, schedule, seed, names, stream_id = task
    return run_chain(params, grid, model, schedule, seed=seed, observables=names, stream_id=stream_id)
