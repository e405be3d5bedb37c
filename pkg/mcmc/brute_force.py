# mcmc/brute_force.py
"""
Exhaustive oracles for tiny systems: the Trotterized sum over every path, the
transfer-matrix trace, and the explicit one-proposal transition matrix.
"""
import itertools
import logging
import math

import numpy as np
from django.conf import settings

from digitization.exceptions import EnumerationBudgetError, InvalidParameterError

from .action import action, link_weight
from .configuration import PathConfiguration
from .kernels import kernel_tables, propose_block, shift_block

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7


def _budget(budget):
    if budget is not None:
        return budget
    if settings.configured:
        return getattr(settings, "TRUNCATION_ENUMERATION_BUDGET", DEFAULT_BUDGET)
    return DEFAULT_BUDGET


def enumeration_size(params, grid, model):
    return grid.lambda_ ** (params.k * model.n_bos)


def enumerate_configurations(params, grid, model, budget=None):
    size = enumeration_size(params, grid, model)
    if size > _budget(budget):
        raise EnumerationBudgetError(
            f"{grid.lambda_}^({params.k}*{model.n_bos}) = {size} paths exceed the "
            f"enumeration budget of {_budget(budget)}",
            size=size,
        )
    shape = (params.k, model.n_bos)
    for flat in itertools.product(range(grid.lambda_), repeat=params.k * model.n_bos):
        yield PathConfiguration(np.array(flat, dtype=np.int64).reshape(shape))


def weighted_configurations(params, grid, model, budget=None):
    """Every positive-weight path with its action."""
    result = []
    for config in enumerate_configurations(params, grid, model, budget):
        s = action(config, params, grid, model)
        if math.isfinite(s):
            result.append((config, s))
    return result


def brute_force_expectation(params, grid, model, f, budget=None):
    """
    sum_paths e^{-S} f / sum_paths e^{-S}, with f slice-averaged like the chain
    measures it. f is an Observable or any callable on (K, N_bos) coordinates.
    """
    weighted = weighted_configurations(params, grid, model, budget)
    actions = np.array([s for _, s in weighted])
    weights = np.exp(-(actions - actions.min()))
    measure = getattr(f, "measure", None) or (lambda coords: float(np.mean(f(coords))))
    values = np.array([measure(config.coordinates(grid)) for config, _ in weighted])
    return float(weights @ values / weights.sum())


def partition_function(params, grid, model, budget=None):
    return float(
        sum(math.exp(-s) for _, s in weighted_configurations(params, grid, model, budget))
    )


def transfer_matrix(params, grid, model, budget=None):
    """M[a, b] = link weight between index vectors a and b, rows in lexicographic order."""
    n_states = grid.lambda_**model.n_bos
    if n_states**2 > _budget(budget):
        raise EnumerationBudgetError(
            f"transfer matrix of size {n_states}^2 exceeds the enumeration budget",
            size=n_states**2,
        )
    states = list(itertools.product(range(grid.lambda_), repeat=model.n_bos))
    matrix = np.empty((n_states, n_states))
    for a, na in enumerate(states):
        for b, nb in enumerate(states):
            matrix[a, b] = link_weight(na, nb, params, grid, model)
    return matrix


def transfer_matrix_partition_function(params, grid, model, budget=None):
    """Tr M^K, the same sum as partition_function() done slice by slice."""
    matrix = transfer_matrix(params, grid, model, budget)
    return float(np.trace(np.linalg.matrix_power(matrix, params.k)))


def _proposals(params, model, move):
    """(size label, slice, boson, sign, probability) for every single proposal."""
    if move == "metropolis":
        labels = [0]
    elif move == "cluster":
        labels = range(1, params.b_max + 1)
    else:
        raise InvalidParameterError(f"unknown move {move!r}")
    n = len(labels) * params.k * model.n_bos * 2
    for label in labels:
        for j in range(params.k):
            for i in range(model.n_bos):
                for sign in (-1, 1):
                    yield label + 1, j, i, sign, 1.0 / n


def transition_matrix(params, grid, model, move="cluster", budget=None):
    """
    One-proposal transition matrix over all positive-weight paths.

    Returns (configurations, T, P) with T[x, y] the probability of going from
    x to y in one proposal and P the normalized Boltzmann weights e^{-S} / Z.
    Acceptance goes through the same kernel as the chain.
    """
    weighted = weighted_configurations(params, grid, model, budget)
    configs = [config for config, _ in weighted]
    position = {config.key(): n for n, config in enumerate(configs)}
    actions = np.array([s for _, s in weighted])
    boltzmann = np.exp(-(actions - actions.min()))
    tables = kernel_tables(params, grid, model)

    size = len(configs)
    matrix = np.zeros((size, size))
    for x, config in enumerate(configs):
        for m, j, i, sign, probability in _proposals(params, model, move):
            indices = config.indices.copy()
            allowed, ds = propose_block(
                indices, i, j, m, sign,
                tables.onsite, tables.coords, tables.neighbors,
                tables.log_diag, tables.log_hop, tables.delta,
            )
            if not allowed:
                matrix[x, x] += probability
                continue
            shift_block(indices, i, j, min(m, params.k), sign)
            y = position[indices.tobytes()]
            accept = 1.0 if ds <= 0 else math.exp(-ds)
            matrix[x, y] += probability * accept
            matrix[x, x] += probability * (1.0 - accept)
    logger.debug("built %s transition matrix over %d paths", move, size)
    return configs, matrix, boltzmann / boltzmann.sum()
