# mcmc/action.py
import logging
import math

import numpy as np

from digitization.exceptions import ShapeError

logger = logging.getLogger(__name__)


def kinetic_weight(na, nb, params, grid, n_bos):
    """<na| 1 - delta sum_i p_i^2 / 2 |nb>, truncated at first order in delta."""
    diff = np.asarray(nb, dtype=np.int64) - np.asarray(na, dtype=np.int64)
    changed = np.count_nonzero(diff)
    if changed == 0:
        return params.diag_weight(grid, n_bos)
    if changed == 1 and np.abs(diff).max() == 1:
        return params.hop_weight(grid)
    return 0.0


def log_link_weight(na, nb, params, grid, model):
    na = np.asarray(na, dtype=np.int64)
    nb = np.asarray(nb, dtype=np.int64)
    if na.shape != (model.n_bos,) or nb.shape != (model.n_bos,):
        raise ShapeError(
            f"link needs two index vectors of length {model.n_bos}, got {na.shape} and {nb.shape}"
        )
    kinetic = kinetic_weight(na, nb, params, grid, model.n_bos)
    potential = model.evaluate(grid.to_coordinates(nb))
    if kinetic <= 0:
        return -math.inf
    return math.log(kinetic) - params.delta * potential


def link_weight(na, nb, params, grid, model):
    """
    Trotterized <na|e^{-delta H}|nb>: the kinetic factor times e^{-delta V(x(nb))}.

    The potential sits on the second slice of the link.
    """
    return math.exp(log_link_weight(na, nb, params, grid, model))


def action(config, params, grid, model):
    """S = -sum_j log w(n^(j), n^(j+1 mod K)); math.inf when any link has zero weight."""
    indices = config.indices
    k = indices.shape[0]
    total = 0.0
    for j in range(k):
        log_w = log_link_weight(indices[j], indices[(j + 1) % k], params, grid, model)
        if log_w == -math.inf:
            logger.debug("zero-weight link between slices %d and %d", j, (j + 1) % k)
            return math.inf
        total -= log_w
    return total
