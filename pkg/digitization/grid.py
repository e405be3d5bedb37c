# digitization/grid.py
from dataclasses import dataclass, field

import numpy as np

from .exceptions import GridIndexError, InvalidParameterError


@dataclass(frozen=True)
class DigitizationGrid:
    """
    Coordinate-basis truncation of one bosonic axis.

    Lambda points x(n) = -r + n * a_dig, n = 0 .. lambda - 1, cover [-r, r].
    The spacing is derived from (lambda, r) and never passed in.
    """

    lambda_: int
    r: float
    a_dig: float = field(init=False)

    def __post_init__(self):
        if int(self.lambda_) != self.lambda_ or self.lambda_ < 2:
            raise InvalidParameterError(
                f"lambda must be an integer >= 2, got {self.lambda_}"
            )
        if not self.r > 0:
            raise InvalidParameterError(f"r must be positive, got {self.r}")
        object.__setattr__(self, "lambda_", int(self.lambda_))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "a_dig", 2.0 * self.r / (self.lambda_ - 1))

    def __str__(self):
        return f"Grid(lambda={self.lambda_}, r={self.r:g}, a_dig={self.a_dig:g})"

    @property
    def center_index(self):
        return self.lambda_ // 2

    def coordinate(self, n):
        if not 0 <= n <= self.lambda_ - 1:
            raise GridIndexError(
                f"grid index {n} outside [0, {self.lambda_ - 1}]"
            )
        return -self.r + n * self.a_dig

    def coordinates(self):
        """All Lambda coordinate values, ascending."""
        return -self.r + np.arange(self.lambda_) * self.a_dig

    def to_coordinates(self, indices):
        """Map an integer index array of any shape to coordinate values."""
        indices = np.asarray(indices)
        if indices.size and (indices.min() < 0 or indices.max() > self.lambda_ - 1):
            raise GridIndexError(
                f"grid indices outside [0, {self.lambda_ - 1}]"
            )
        return -self.r + indices * self.a_dig


def make_grid(lambda_, r):
    return DigitizationGrid(lambda_=lambda_, r=r)


def coordinate(grid, n):
    return grid.coordinate(n)


def grid_from_spacing(a_dig, lambda_=None, r_over_a=None):
    """
    Build a grid with a given spacing.

    Either lambda_ is given (R = a (lambda - 1) / 2) or r_over_a is
    (R = r_over_a * a, lambda = 2 r_over_a + 1).
    """
    if not a_dig > 0:
        raise InvalidParameterError(f"a_dig must be positive, got {a_dig}")
    if lambda_ is None and r_over_a is None:
        raise InvalidParameterError("either lambda or r_over_a is required")
    if lambda_ is None:
        lambda_ = 2 * r_over_a + 1
        if int(lambda_) != lambda_:
            raise InvalidParameterError(
                f"r_over_a={r_over_a} does not give an integer lambda"
            )
    r = a_dig * (lambda_ - 1) / 2.0
    grid = make_grid(int(lambda_), r)
    if r_over_a is not None and not np.isclose(grid.r, r_over_a * a_dig, rtol=1e-12):
        raise InvalidParameterError(
            f"lambda={lambda_} is inconsistent with r_over_a={r_over_a}"
        )
    return grid
