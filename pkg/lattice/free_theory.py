# lattice/free_theory.py
import math

import numpy as np

from digitization.exceptions import InvalidParameterError, MasslessZeroModeError

from .geometry import MomentumMode


def _momentum(q):
    if isinstance(q, MomentumMode):
        return q.q
    return np.atleast_1d(np.asarray(q, dtype=float))


def lattice_potential(geometry, m_lat_squared, phi, lambda_coupling=0.0):
    """
    Gradient plus mass energy of a real field, periodic in every direction.

    phi may carry leading batch axes; the last axis is the site index.
    """
    phi = geometry.check_field(phi)
    field = phi.reshape(phi.shape[:-1] + geometry.shape)
    site_axes = tuple(range(field.ndim - geometry.dims, field.ndim))
    energy = np.zeros(phi.shape[:-1])
    for axis in site_axes:
        energy = energy + 0.5 * np.sum(
            (np.roll(field, -1, axis=axis) - field) ** 2, axis=site_axes
        )
    energy = energy + 0.5 * m_lat_squared * np.sum(field**2, axis=site_axes)
    if lambda_coupling:
        energy = energy + 0.25 * lambda_coupling * np.sum(field**4, axis=site_axes)
    if energy.ndim == 0:
        return float(energy)
    return energy


def mode_amplitudes(geometry, phi, q):
    """phi~_q = L^(-d/2) sum_n exp(-i q.n) phi_n, by direct summation."""
    phi = geometry.check_field(phi)
    phases = np.exp(-1j * (geometry.site_vectors() @ _momentum(q)))
    return (phi @ phases) / math.sqrt(geometry.n_sites)


def fourier_mode_power(geometry, phi, q):
    power = np.abs(mode_amplitudes(geometry, phi, q)) ** 2
    if power.ndim == 0:
        return float(power)
    return power


def kinetic_factor(q):
    return 4.0 * float(np.sum(np.sin(_momentum(q) / 2.0) ** 2))


def free_dispersion(q, m_lat_squared):
    omega_squared = m_lat_squared + kinetic_factor(q)
    if omega_squared <= 0:
        raise MasslessZeroModeError(
            f"omega^2 = {omega_squared:g} at {q}: the mode has no finite width"
        )
    return omega_squared


def zero_point_width(q, m_lat_squared):
    return 1.0 / (2.0 * math.sqrt(free_dispersion(q, m_lat_squared)))


def thermal_width(q, m_lat_squared, beta):
    if not beta > 0:
        raise InvalidParameterError(f"beta must be positive, got {beta}")
    omega = math.sqrt(free_dispersion(q, m_lat_squared))
    return 1.0 / (2.0 * omega * math.tanh(beta * omega / 2.0))


def momentum_space_potential(geometry, m_lat_squared, phi):
    """The free lattice potential written as a sum over decoupled modes."""
    total = 0.0
    for mode in geometry.all_modes():
        weight = kinetic_factor(mode) / 2.0 + m_lat_squared / 2.0
        total += weight * fourier_mode_power(geometry, phi, mode)
    return total
