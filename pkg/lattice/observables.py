# lattice/observables.py
from mcmc.observables import MODE_POWER_PREFIX, Observable

from .free_theory import fourier_mode_power


def mode_power_name(mode):
    return f"{MODE_POWER_PREFIX}{mode.label}"


def mode_power_observable(geometry, mode):
    """<phi~_q phi~_-q>, measured slice by slice."""
    return Observable(
        mode_power_name(mode),
        lambda coords: fourier_mode_power(geometry, coords, mode),
    )
