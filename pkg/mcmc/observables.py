# mcmc/observables.py
from dataclasses import dataclass
from typing import Callable

import numpy as np

from digitization.exceptions import InvalidParameterError

MODE_POWER_PREFIX = "mode_power:"


@dataclass(frozen=True)
class Observable:
    """
    A function of the coordinates, evaluated on every slice and averaged.

    per_slice maps a (K, N_bos) coordinate array to K values.
    """

    name: str
    per_slice: Callable[[np.ndarray], np.ndarray]

    def measure(self, coords):
        return float(np.mean(self.per_slice(coords)))


def potential_observable(model):
    return Observable("potential", model.evaluate_slices)


def position_observable():
    return Observable("x", lambda coords: coords.mean(axis=1))


def square_observable():
    return Observable("x2", lambda coords: (coords**2).mean(axis=1))


def resolve_observables(names, model):
    """Turn configured observable names into Observables for this model."""
    resolved = []
    for name in names:
        if name == "potential":
            resolved.append(potential_observable(model))
        elif name == "x":
            resolved.append(position_observable())
        elif name == "x2":
            resolved.append(square_observable())
        elif name.startswith(MODE_POWER_PREFIX):
            geometry = getattr(model, "geometry", None)
            if geometry is None:
                raise InvalidParameterError(f"{name} needs a lattice model, got {model!r}")
            from lattice.observables import mode_power_observable
            from lattice.geometry import MomentumMode

            mode = MomentumMode.parse(name[len(MODE_POWER_PREFIX):], geometry)
            resolved.append(mode_power_observable(geometry, mode))
        else:
            raise InvalidParameterError(f"unknown observable {name!r}")
    return resolved
