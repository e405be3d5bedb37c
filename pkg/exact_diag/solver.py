# exact_diag/solver.py
import logging
import re
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from digitization.exceptions import NumericalConvergenceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenSystem:
    energies: np.ndarray
    vectors: np.ndarray

    @property
    def ground_energy(self):
        return float(self.energies[0])

    def residual_norms(self, h):
        """||H v_k - E_k v_k||_2 for every k."""
        return np.linalg.norm(h.matvec(self.vectors) - self.vectors * self.energies, axis=0)

    def orthonormality_error(self):
        overlap = self.vectors.T @ self.vectors
        return float(np.max(np.abs(overlap - np.eye(overlap.shape[0]))))

    def state_expectations(self, observable_diag):
        """<v_k|O|v_k> for an observable diagonal in the coordinate basis."""
        return (self.vectors**2).T @ np.asarray(observable_diag, dtype=float)


def _failed_index(exc):
    match = re.search(r"(-?\d+)", str(exc))
    return int(match.group(1)) if match else None


def eigensystem(h):
    """Full spectrum of a symmetric tridiagonal Hamiltonian (LAPACK stemr)."""
    try:
        energies, vectors = eigh_tridiagonal(h.diag, h.offdiag, lapack_driver="stemr")
    except LinAlgError as exc:
        index = _failed_index(exc)
        raise NumericalConvergenceError(
            f"tridiagonal eigensolver did not converge (index {index}): {exc}",
            index=index,
        ) from exc
    order = np.argsort(energies)
    logger.debug("diagonalized %s, E0=%.12g", h.grid, energies[order[0]])
    return EigenSystem(energies=energies[order], vectors=vectors[:, order])


def low_lying_spectrum(h, n_levels):
    """The n_levels lowest energies, without eigenvectors."""
    n_levels = min(int(n_levels), h.size)
    try:
        return eigh_tridiagonal(
            h.diag,
            h.offdiag,
            eigvals_only=True,
            select="i",
            select_range=(0, n_levels - 1),
        )
    except LinAlgError as exc:
        raise NumericalConvergenceError(
            f"tridiagonal eigensolver did not converge: {exc}", index=_failed_index(exc)
        ) from exc
