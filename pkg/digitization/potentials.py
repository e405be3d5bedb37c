# digitization/potentials.py
from abc import ABC, abstractmethod

import numpy as np

from .exceptions import InvalidParameterError, ShapeError


class PotentialModel(ABC):
    """
    Potential energy V over a coordinate vector of length n_bos.

    Every model splits as V(x) = sum_i onsite(x_i) + 1/2 sum_bonds (x_i - x_k)^2;
    the update kernels only ever see the onsite table and the bond list, while
    evaluate() is free to compute V any way it likes.
    """

    kind = ""
    n_bos = 1

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_bos,):
            raise ShapeError(
                f"{self.kind} potential expects {self.n_bos} coordinates, got shape {x.shape}"
            )
        return float(self.evaluate_slices(x[np.newaxis, :])[0])

    @abstractmethod
    def evaluate_slices(self, x):
        """V for every row of a (K, n_bos) coordinate array."""

    @abstractmethod
    def onsite(self, x):
        """Elementwise single-coordinate part of V."""

    def neighbor_table(self):
        """
        Bond partners per coordinate, shape (n_bos, z).

        Each bond (i, k) is listed once under i and once under k.
        """
        return np.zeros((self.n_bos, 0), dtype=np.int64)

    def describe(self):
        return {"physics.potential": self.kind}


class QuarticPotential(PotentialModel):
    """V(x) = lambda/4 x^4 + m^2/2 x^2 for a single boson."""

    kind = "quartic"
    n_bos = 1

    def __init__(self, lambda_coupling=1.0, m_squared=1.0):
        self.lambda_coupling = float(lambda_coupling)
        self.m_squared = float(m_squared)

    def __repr__(self):
        return f"QuarticPotential(lambda={self.lambda_coupling}, m_squared={self.m_squared})"

    def onsite(self, x):
        x = np.asarray(x, dtype=float)
        return 0.25 * self.lambda_coupling * x**4 + 0.5 * self.m_squared * x**2

    def evaluate_slices(self, x):
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[1] != 1:
            raise ShapeError(f"quartic potential expects (K, 1) coordinates, got {x.shape}")
        return self.onsite(x[:, 0])

    def describe(self):
        return {
            "physics.potential": self.kind,
            "physics.lambda": self.lambda_coupling,
            "physics.m_squared": self.m_squared,
        }


def potential_energy(model, x):
    return model.evaluate(x)


def harmonic_potential(m_squared=1.0):
    return QuarticPotential(lambda_coupling=0.0, m_squared=m_squared)


def make_potential(kind, **params):
    """Build a model by name, the way the run config names it."""
    if kind == QuarticPotential.kind:
        return QuarticPotential(
            lambda_coupling=params.get("lambda_coupling", 1.0),
            m_squared=params.get("m_squared", 1.0),
        )
    if kind == "lattice":
        # lattice depends on digitization, not the other way round
        from lattice.potential import LatticeScalarPotential

        return LatticeScalarPotential.from_params(**params)
    raise InvalidParameterError(f"unknown potential kind {kind!r}")
