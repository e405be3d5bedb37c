# exact_diag/hamiltonian.py
from dataclasses import dataclass

import numpy as np

from digitization.exceptions import UnsupportedModelError
from digitization.grid import DigitizationGrid


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    """
    H = p^2/2 + V(x) in the coordinate basis of one digitized boson.

    p^2 is the three-point difference (2|n><n| - |n+1><n| - |n><n+1|) / a^2,
    so the matrix is symmetric with a single constant off-diagonal band.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    grid: DigitizationGrid

    @property
    def size(self):
        return self.diag.shape[0]

    def to_dense(self):
        return (
            np.diag(self.diag)
            + np.diag(self.offdiag, k=1)
            + np.diag(self.offdiag, k=-1)
        )

    def matvec(self, v):
        """H @ v for a vector or a matrix of column vectors."""
        v = np.asarray(v, dtype=float)
        out = self.diag.reshape((-1,) + (1,) * (v.ndim - 1)) * v
        band = self.offdiag.reshape((-1,) + (1,) * (v.ndim - 1))
        out[:-1] += band * v[1:]
        out[1:] += band * v[:-1]
        return out

    def norm(self):
        """Row-sum norm, an upper bound on the spectral norm."""
        rows = np.abs(self.diag).copy()
        rows[:-1] += np.abs(self.offdiag)
        rows[1:] += np.abs(self.offdiag)
        return float(rows.max())


def build_hamiltonian(grid, model):
    if model.n_bos != 1:
        raise UnsupportedModelError(
            f"exact diagonalization handles a single boson, {model!r} has {model.n_bos}"
        )
    inv_a2 = 1.0 / grid.a_dig**2
    potential = model.evaluate_slices(grid.coordinates()[:, np.newaxis])
    diag = inv_a2 + np.asarray(potential, dtype=float)
    offdiag = np.full(grid.lambda_ - 1, -0.5 * inv_a2)
    return TridiagonalHamiltonian(diag=diag, offdiag=offdiag, grid=grid)
