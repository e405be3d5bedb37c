# lattice/potential.py
import numpy as np

from digitization.potentials import PotentialModel

from .free_theory import lattice_potential
from .geometry import LatticeGeometry


class LatticeScalarPotential(PotentialModel):
    """
    Scalar field on a periodic lattice: gradient term plus m^2/2 phi^2.

    An optional quartic coupling is carried through the onsite term.
    """

    kind = "lattice"

    def __init__(self, geometry, m_lat_squared=1.0, lambda_coupling=0.0):
        self.geometry = geometry
        self.m_lat_squared = float(m_lat_squared)
        self.lambda_coupling = float(lambda_coupling)
        self.n_bos = geometry.n_sites

    @classmethod
    def from_params(cls, m_squared=1.0, dims=2, extent=4, lambda_coupling=0.0):
        return cls(LatticeGeometry(int(dims), int(extent)), m_squared, lambda_coupling)

    def __repr__(self):
        return (
            f"LatticeScalarPotential({self.geometry}, m_squared={self.m_lat_squared}, "
            f"lambda={self.lambda_coupling})"
        )

    def onsite(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.m_lat_squared * x**2 + 0.25 * self.lambda_coupling * x**4

    def evaluate_slices(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        return lattice_potential(self.geometry, self.m_lat_squared, x, self.lambda_coupling)

    def neighbor_table(self):
        return self.geometry.neighbor_table()

    def describe(self):
        return {
            "physics.potential": self.kind,
            "physics.lambda": self.lambda_coupling,
            "physics.m_squared": self.m_lat_squared,
            "physics.dims": self.geometry.dims,
            "physics.extent": self.geometry.extent,
        }
