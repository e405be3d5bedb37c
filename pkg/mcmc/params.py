# mcmc/params.py
import math
from dataclasses import dataclass

from digitization.exceptions import InvalidParameterError

K_TOLERANCE = 1e-9
MAX_HOP_RATIO = 0.01


@dataclass(frozen=True)
class TrotterParams:
    """
    beta split into k steps of size delta, and the largest cluster label b_max.

    Build through trotter_params() so positivity is checked against the grid
    and the model.
    """

    delta: float
    beta: float
    k: int
    b_max: int

    def __post_init__(self):
        if not self.delta > 0 or not self.beta > 0:
            raise InvalidParameterError(
                f"delta and beta must be positive, got delta={self.delta}, beta={self.beta}"
            )
        if self.k < 1:
            raise InvalidParameterError(f"k must be >= 1, got {self.k}")
        if abs(self.k * self.delta - self.beta) > 1e-12 * self.beta:
            raise InvalidParameterError(
                f"beta={self.beta} is not k * delta = {self.k} * {self.delta}"
            )
        if not 1 <= self.b_max <= self.k:
            raise InvalidParameterError(f"b_max must lie in [1, {self.k}], got {self.b_max}")

    def __str__(self):
        return f"Trotter(delta={self.delta:g}, beta={self.beta:g}, K={self.k}, b_max={self.b_max})"

    def diag_weight(self, grid, n_bos):
        return 1.0 - n_bos * self.delta / grid.a_dig**2

    def hop_weight(self, grid):
        return self.delta / (2.0 * grid.a_dig**2)

    def check_positivity(self, grid, model):
        if self.diag_weight(grid, model.n_bos) <= 0:
            raise InvalidParameterError(
                f"1 - N_bos delta / a_dig^2 = {self.diag_weight(grid, model.n_bos):g} <= 0 "
                f"(N_bos={model.n_bos}, delta={self.delta:g}, a_dig={grid.a_dig:g})"
            )
        return self

    def describe(self):
        return {
            "trotter.delta": self.delta,
            "trotter.beta": self.beta,
            "trotter.k": self.k,
            "trotter.b_max": self.b_max,
        }


def slices_for(beta, delta):
    """K = round(beta / delta), refusing deltas that do not divide beta."""
    if not beta > 0 or not delta > 0:
        raise InvalidParameterError(f"beta and delta must be positive, got {beta}, {delta}")
    k = max(1, round(beta / delta))
    if abs(k * delta - beta) > K_TOLERANCE * beta:
        raise InvalidParameterError(
            f"delta={delta:g} does not divide beta={beta:g} (K*delta = {k * delta:.12g})"
        )
    return k


def delta_for_hop_ratio(beta, a_dig, hop_ratio=MAX_HOP_RATIO):
    """Largest delta = beta / K with delta / (2 a^2) <= hop_ratio."""
    if not 0 < hop_ratio <= MAX_HOP_RATIO:
        raise InvalidParameterError(
            f"hop ratio must lie in (0, {MAX_HOP_RATIO}], got {hop_ratio}"
        )
    k = math.ceil(beta / (2.0 * a_dig**2 * hop_ratio) - 1e-12)
    return beta / k


def trotter_params(beta, delta, grid, model, b_max=None):
    k = slices_for(beta, delta)
    if b_max is None:
        b_max = max(1, k // 2)
    params = TrotterParams(delta=beta / k, beta=float(beta), k=k, b_max=int(b_max))
    return params.check_positivity(grid, model)
