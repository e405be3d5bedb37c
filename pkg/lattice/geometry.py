# lattice/geometry.py
import itertools
import math
from dataclasses import dataclass

import numpy as np

from digitization.exceptions import InvalidParameterError, ShapeError


@dataclass(frozen=True)
class LatticeGeometry:
    """
    Periodic d-dimensional square lattice with L sites per direction.

    Sites are numbered row-major, so boson index i and site vector n_lat are
    related by numpy's ravel_multi_index / unravel_index on shape (L,) * d.
    """

    dims: int
    extent: int

    def __post_init__(self):
        if self.dims < 1:
            raise InvalidParameterError(f"dims must be >= 1, got {self.dims}")
        if self.extent < 1:
            raise InvalidParameterError(f"extent must be >= 1, got {self.extent}")

    def __str__(self):
        return "x".join([str(self.extent)] * self.dims)

    @property
    def shape(self):
        return (self.extent,) * self.dims

    @property
    def n_sites(self):
        return self.extent**self.dims

    def site_index(self, vector):
        return int(np.ravel_multi_index(tuple(int(v) % self.extent for v in vector), self.shape))

    def site_vector(self, index):
        return tuple(int(v) for v in np.unravel_index(index, self.shape))

    def site_vectors(self):
        """(n_sites, dims) array of site vectors in boson order."""
        return np.array(np.unravel_index(np.arange(self.n_sites), self.shape)).T

    def neighbor(self, index, mu, step=1):
        vector = list(self.site_vector(index))
        vector[mu] = (vector[mu] + step) % self.extent
        return self.site_index(vector)

    def neighbor_table(self):
        """Forward and backward partner of every site in each direction, shape (n_sites, 2 d)."""
        table = np.empty((self.n_sites, 2 * self.dims), dtype=np.int64)
        for i in range(self.n_sites):
            for mu in range(self.dims):
                table[i, 2 * mu] = self.neighbor(i, mu, +1)
                table[i, 2 * mu + 1] = self.neighbor(i, mu, -1)
        return table

    def check_field(self, phi):
        phi = np.asarray(phi, dtype=float)
        if phi.shape[-1:] != (self.n_sites,):
            raise ShapeError(
                f"field on a {self} lattice needs {self.n_sites} values, got shape {phi.shape}"
            )
        return phi

    def all_modes(self):
        return [
            MomentumMode(ell, self.extent)
            for ell in itertools.product(range(self.extent), repeat=self.dims)
        ]


@dataclass(frozen=True)
class MomentumMode:
    """Lattice momentum q_j = 2 pi l_j / L, stored by its integer mode numbers l_j."""

    ell: tuple
    extent: int

    def __post_init__(self):
        object.__setattr__(self, "ell", tuple(int(v) % self.extent for v in self.ell))

    @property
    def q(self):
        return 2.0 * math.pi * np.asarray(self.ell, dtype=float) / self.extent

    @property
    def label(self):
        return ",".join(str(v) for v in self.ell)

    def __str__(self):
        return f"q=({self.label})"

    def negated(self):
        return MomentumMode(tuple(-v for v in self.ell), self.extent)

    @classmethod
    def parse(cls, text, geometry):
        parts = [p.strip() for p in str(text).split(",") if p.strip()]
        if len(parts) != geometry.dims:
            raise InvalidParameterError(
                f"mode {text!r} needs {geometry.dims} integers for a {geometry} lattice"
            )
        try:
            ell = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise InvalidParameterError(f"mode {text!r} is not a list of integers") from exc
        return cls(ell, geometry.extent)
