# exact_diag/thermal.py
import logging
from dataclasses import dataclass

import numpy as np

from digitization.exceptions import InvalidParameterError, ShapeError
from digitization.grid import grid_from_spacing

from .hamiltonian import build_hamiltonian
from .solver import eigensystem

logger = logging.getLogger(__name__)

DIAGONAL_OBSERVABLES = ("potential", "x", "x2")


def observable_vector(grid, model, name):
    """A coordinate-diagonal observable as its Lambda diagonal entries."""
    x = grid.coordinates()
    if name == "potential":
        return np.asarray(model.evaluate_slices(x[:, np.newaxis]), dtype=float)
    if name == "x":
        return x
    if name == "x2":
        return x**2
    raise InvalidParameterError(
        f"unknown observable {name!r}; expected one of {', '.join(DIAGONAL_OBSERVABLES)}"
    )


def thermal_expectation(es, observable_diag, beta):
    """
    Tr(O e^{-beta H}) / Tr(e^{-beta H}) for O diagonal in the coordinate basis.

    Boltzmann factors are taken relative to E_0 so nothing underflows.
    """
    if not beta > 0:
        raise InvalidParameterError(f"beta must be positive, got {beta}")
    observable_diag = np.asarray(observable_diag, dtype=float)
    if observable_diag.shape != (es.vectors.shape[0],):
        raise ShapeError(
            f"observable has shape {observable_diag.shape}, basis size is {es.vectors.shape[0]}"
        )
    weights = np.exp(-beta * (es.energies - es.energies[0]))
    return float(weights @ es.state_expectations(observable_diag) / weights.sum())


def exact_expectation(grid, model, name, beta):
    es = eigensystem(build_hamiltonian(grid, model))
    return thermal_expectation(es, observable_vector(grid, model, name), beta)


# values this small are rounding noise around an exact zero
ZERO_FLOOR = 1e-12


def _leading_digits(value, digits):
    return f"{value:.{digits - 1}e}"


@dataclass(frozen=True)
class SufficiencyCheck:
    value: float
    halved_value: float
    lambda_: int
    halved_lambda: int
    agrees: bool


def check_lambda_sufficiency(grid, model, name, beta, digits=4):
    """
    Recompute at the same a_dig with R halved and compare leading digits.

    The full-grid value is the one reported; the flag says whether Lambda was
    large enough for its first `digits` nonzero digits to be trusted.
    """
    halved_lambda = (grid.lambda_ - 1) // 2 + 1
    value = exact_expectation(grid, model, name, beta)
    halved = grid_from_spacing(grid.a_dig, lambda_=max(halved_lambda, 2))
    halved_value = exact_expectation(halved, model, name, beta)
    if abs(value) < ZERO_FLOOR and abs(halved_value) < ZERO_FLOOR:
        agrees = True
    else:
        agrees = _leading_digits(value, digits) == _leading_digits(halved_value, digits)
    if not agrees:
        logger.warning(
            "%s: <%s> = %.8g at lambda=%d but %.8g at lambda=%d",
            grid, name, value, grid.lambda_, halved_value, halved.lambda_,
        )
    return SufficiencyCheck(value, halved_value, grid.lambda_, halved.lambda_, agrees)
