# runs/config.py
"""
Flat run configuration: ``section.key = value`` lines, ``#`` comments.

This module only knows the text format and the resolved RunConfig; checking
values is RunConfigSerializer's job.
"""
import itertools
from dataclasses import dataclass, field
from pathlib import Path

from rest_framework import serializers

from digitization.grid import grid_from_spacing, make_grid
from digitization.potentials import make_potential
from mcmc.chain import Schedule
from mcmc.params import delta_for_hop_ratio, trotter_params

MODES = ("exact-diag", "mc-single", "mc-lattice", "analyze")
COMMENT = "#"


def parse_config_text(text):
    """``key = value`` lines into a dict; later lines win."""
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(COMMENT, 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise serializers.ValidationError(
                {f"line {number}": f"expected 'key = value', got {raw.strip()!r}"}
            )
        values[key] = value.strip()
    return values


def read_config_file(path):
    return parse_config_text(Path(path).read_text())


def parse_overrides(items):
    """Command-line ``--set key=value`` pairs."""
    values = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise serializers.ValidationError({"--set": f"expected key=value, got {item!r}"})
        values[key.strip()] = value.strip()
    return values


def format_value(value):
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def format_config(values):
    """The inverse of parse_config_text, keys sorted."""
    return "".join(f"{key} = {format_value(values[key])}\n" for key in sorted(values))


def write_config(path, values):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_config(values))
    return path


@dataclass(frozen=True)
class SweepPoint:
    """One (a_dig, m^2) combination with everything a run needs for it."""

    index: int
    a_dig: float
    m_squared: float
    grid: object
    model: object
    params: object = None

    @property
    def slug(self):
        return f"point_{self.index:02d}"


@dataclass
class RunConfig:
    mode: str
    label: str
    physics: dict
    digitization: dict
    trotter: dict
    schedule: dict
    observables: dict
    exact_diag: dict
    analyze: dict
    output: dict
    values: dict = field(default_factory=dict)

    @property
    def beta(self):
        return self.trotter.get("beta")

    @property
    def base_seed(self):
        return self.schedule["base_seed"]

    @property
    def n_streams(self):
        return self.schedule["n_streams"]

    @property
    def output_directory(self):
        return self.output.get("directory")

    def chain_schedule(self):
        return Schedule(
            n_sweeps=self.schedule["n_sweeps"],
            burn_in=self.schedule["burn_in"],
            measure_every=self.schedule["measure_every"],
        )

    def observable_names(self):
        names = list(self.observables.get("names") or [])
        return names + [f"mode_power:{mode}" for mode in self.observables.get("modes") or []]

    def points(self):
        return list(build_points(self))


def grid_for(digitization, a_dig):
    if digitization.get("r") is not None:
        return make_grid(digitization["lambda"], digitization["r"])
    return grid_from_spacing(
        a_dig,
        lambda_=digitization.get("lambda"),
        r_over_a=digitization.get("r_over_a"),
    )


def model_for(physics, m_squared):
    params = {"lambda_coupling": physics["lambda"], "m_squared": m_squared}
    if physics["potential"] == "lattice":
        params.update(dims=physics["dims"], extent=physics["extent"])
    return make_potential(physics["potential"], **params)


def params_for(trotter, grid, model):
    delta = trotter.get("delta")
    if delta is None:
        delta = delta_for_hop_ratio(trotter["beta"], grid.a_dig, trotter["hop_ratio"])
    return trotter_params(trotter["beta"], delta, grid, model, trotter.get("b_max"))


def build_points(config):
    """
    The Cartesian product of the a_dig and m^2 lists, in that nesting order.

    Raises the library's InvalidParameterError for a point that cannot run.
    """
    a_values = config.digitization.get("a_dig") or [None]
    m_values = config.physics["m_squared"]
    for index, (a_dig, m_squared) in enumerate(itertools.product(a_values, m_values)):
        grid = grid_for(config.digitization, a_dig)
        model = model_for(config.physics, m_squared)
        params = None
        if config.mode in ("mc-single", "mc-lattice"):
            params = params_for(config.trotter, grid, model)
        yield SweepPoint(index, grid.a_dig, m_squared, grid, model, params)
