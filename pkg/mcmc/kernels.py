# mcmc/kernels.py
"""
Compiled inner loops of the path updates.

Kernels see the model only through three tables: the onsite energy per grid
index, the coordinate per grid index, and the bond partners per boson. Random
numbers are drawn by the caller and passed in, so a stream's trajectory is
fixed by its numpy Generator alone.
"""
from dataclasses import dataclass

import numpy as np
from numba import njit

EQUAL = 0
NEIGHBOR = 1
FORBIDDEN = 2


@dataclass(frozen=True)
class KernelTables:
    onsite: np.ndarray
    coords: np.ndarray
    neighbors: np.ndarray
    log_diag: float
    log_hop: float
    delta: float


def kernel_tables(params, grid, model):
    coords = grid.coordinates()
    return KernelTables(
        onsite=np.ascontiguousarray(model.onsite(coords), dtype=np.float64),
        coords=np.ascontiguousarray(coords, dtype=np.float64),
        neighbors=np.ascontiguousarray(model.neighbor_table(), dtype=np.int64),
        log_diag=float(np.log(params.diag_weight(grid, model.n_bos))),
        log_hop=float(np.log(params.hop_weight(grid))),
        delta=float(params.delta),
    )


@njit(cache=True)
def link_kind(indices, a, b):
    n_bos = indices.shape[1]
    changed = 0
    for i in range(n_bos):
        dn = indices[b, i] - indices[a, i]
        if dn != 0:
            if dn > 1 or dn < -1:
                return FORBIDDEN
            changed += 1
            if changed > 1:
                return FORBIDDEN
    return changed


@njit(cache=True)
def kinetic_log(kind, log_diag, log_hop):
    if kind == EQUAL:
        return log_diag
    if kind == NEIGHBOR:
        return log_hop
    return -np.inf


@njit(cache=True)
def site_potential_change(indices, l, i, new, onsite, coords, neighbors):
    old = indices[l, i]
    dv = onsite[new] - onsite[old]
    x_old = coords[old]
    x_new = coords[new]
    for z in range(neighbors.shape[1]):
        k = neighbors[i, z]
        if k == i:
            continue
        xk = coords[indices[l, k]]
        dv += 0.5 * ((x_new - xk) ** 2 - (x_old - xk) ** 2)
    return dv


@njit(cache=True)
def shift_block(indices, i, j, m, sign):
    k = indices.shape[0]
    for s in range(m):
        indices[(j + s) % k, i] += sign


@njit(cache=True)
def propose_block(indices, i, j, m, sign, onsite, coords, neighbors, log_diag, log_hop, delta):
    """
    Action change for shifting boson i by sign on slices j .. j+m-1 (mod K).

    Returns (allowed, dS). indices is restored before returning. Slice
    differences inside the block are preserved, so only the two boundary links
    can change their kinetic factor; a block covering every slice has none.
    """
    k = indices.shape[0]
    lam = onsite.shape[0]
    if m > k:
        m = k

    dv = 0.0
    for s in range(m):
        l = (j + s) % k
        new = indices[l, i] + sign
        if new < 0 or new >= lam:
            return False, 0.0
        dv += site_potential_change(indices, l, i, new, onsite, coords, neighbors)
    if m == k:
        return True, delta * dv

    before = (j - 1) % k
    last = (j + m - 1) % k
    after = (j + m) % k
    old_in = link_kind(indices, before, j)
    old_out = link_kind(indices, last, after)
    shift_block(indices, i, j, m, sign)
    new_in = link_kind(indices, before, j)
    new_out = link_kind(indices, last, after)
    shift_block(indices, i, j, m, -sign)
    if new_in == FORBIDDEN or new_out == FORBIDDEN:
        return False, 0.0

    d_kinetic = (
        kinetic_log(new_in, log_diag, log_hop)
        - kinetic_log(old_in, log_diag, log_hop)
        + kinetic_log(new_out, log_diag, log_hop)
        - kinetic_log(old_out, log_diag, log_hop)
    )
    return True, delta * dv - d_kinetic


@njit(cache=True)
def shifted_link_kind(indices, a, b, i, da, db):
    """link_kind after adding da to indices[a, i] and db to indices[b, i]."""
    n_bos = indices.shape[1]
    changed = 0
    for z in range(n_bos):
        dn = indices[b, z] - indices[a, z]
        if z == i:
            dn += db - da
        if dn != 0:
            if dn > 1 or dn < -1:
                return FORBIDDEN
            changed += 1
            if changed > 1:
                return FORBIDDEN
    return changed


@njit(cache=True)
def refresh_shift_costs(costs, outside, indices, i, start, onsite, coords, neighbors):
    """
    Recompute the running sums for boson i from slice start on.

    costs[s, i, l] is the potential change, summed over slices 0 .. l-1, of
    moving boson i alone by +1 (s = 0) or -1 (s = 1); outside counts the slices
    where that move would leave the grid.
    """
    k = indices.shape[0]
    lam = onsite.shape[0]
    for s in range(2):
        sign = 1 - 2 * s
        for l in range(start, k):
            new = indices[l, i] + sign
            if new < 0 or new >= lam:
                costs[s, i, l + 1] = costs[s, i, l]
                outside[s, i, l + 1] = outside[s, i, l] + 1
            else:
                costs[s, i, l + 1] = costs[s, i, l] + site_potential_change(
                    indices, l, i, new, onsite, coords, neighbors
                )
                outside[s, i, l + 1] = outside[s, i, l]


@njit(cache=True)
def shift_cost_tables(indices, onsite, coords, neighbors):
    k, n_bos = indices.shape
    costs = np.zeros((2, n_bos, k + 1))
    outside = np.zeros((2, n_bos, k + 1), dtype=np.int64)
    for i in range(n_bos):
        refresh_shift_costs(costs, outside, indices, i, 0, onsite, coords, neighbors)
    return costs, outside


@njit(cache=True)
def block_sum(table, s, i, j, m, k):
    """Sum over slices j .. j+m-1 (mod K) from a running-sum row."""
    end = j + m
    if end <= k:
        return table[s, i, end] - table[s, i, j]
    return table[s, i, k] - table[s, i, j] + table[s, i, end - k]


@njit(cache=True)
def block_change(indices, costs, outside, i, j, m, sign, log_diag, log_hop, delta):
    """
    propose_block from the running sums: constant time in the block length.
    """
    k = indices.shape[0]
    if m > k:
        m = k
    s = 0 if sign > 0 else 1
    if block_sum(outside, s, i, j, m, k) > 0:
        return False, 0.0
    dv = block_sum(costs, s, i, j, m, k)
    if m == k:
        return True, delta * dv

    before = (j - 1) % k
    last = (j + m - 1) % k
    after = (j + m) % k
    new_in = shifted_link_kind(indices, before, j, i, 0, sign)
    new_out = shifted_link_kind(indices, last, after, i, sign, 0)
    if new_in == FORBIDDEN or new_out == FORBIDDEN:
        return False, 0.0
    d_kinetic = (
        kinetic_log(new_in, log_diag, log_hop)
        - kinetic_log(link_kind(indices, before, j), log_diag, log_hop)
        + kinetic_log(new_out, log_diag, log_hop)
        - kinetic_log(link_kind(indices, last, after), log_diag, log_hop)
    )
    return True, delta * dv - d_kinetic


@njit(cache=True)
def apply_block(indices, costs, outside, i, j, m, sign, onsite, coords, neighbors):
    """shift_block, then bring the running sums of i and its bond partners up to date."""
    k = indices.shape[0]
    if m > k:
        m = k
    shift_block(indices, i, j, m, sign)
    start = j if j + m <= k else 0
    refresh_shift_costs(costs, outside, indices, i, start, onsite, coords, neighbors)
    for z in range(neighbors.shape[1]):
        partner = neighbors[i, z]
        if partner != i:
            refresh_shift_costs(costs, outside, indices, partner, start, onsite, coords, neighbors)


@njit(cache=True)
def metropolis_sweep_kernel(indices, signs, uniforms, onsite, coords, neighbors, log_diag, log_hop, delta):
    """Single-slice proposals at every (j, i) in lexicographic order."""
    k, n_bos = indices.shape
    accepted = 0
    blocked = 0
    p = 0
    for j in range(k):
        for i in range(n_bos):
            allowed, ds = propose_block(
                indices, i, j, 1, signs[p], onsite, coords, neighbors, log_diag, log_hop, delta
            )
            if not allowed:
                blocked += 1
            elif ds <= 0.0 or uniforms[p] < np.exp(-ds):
                shift_block(indices, i, j, 1, signs[p])
                accepted += 1
            p += 1
    return accepted, blocked


@njit(cache=True)
def cluster_sweep_kernel(
    indices, sizes, slices, bosons, signs, uniforms, onsite, coords, neighbors, log_diag, log_hop, delta
):
    """
    Block proposals; size label B shifts slices j .. j+B.

    Proposals are priced from running sums, which are brought up to date after
    every accepted move for the moved boson and its bond partners.
    """
    k = indices.shape[0]
    costs, outside = shift_cost_tables(indices, onsite, coords, neighbors)
    accepted = 0
    blocked = 0
    for p in range(sizes.shape[0]):
        i = bosons[p]
        j = slices[p]
        m = min(sizes[p] + 1, k)
        allowed, ds = block_change(indices, costs, outside, i, j, m, signs[p], log_diag, log_hop, delta)
        if not allowed:
            blocked += 1
        elif ds <= 0.0 or uniforms[p] < np.exp(-ds):
            apply_block(indices, costs, outside, i, j, m, signs[p], onsite, coords, neighbors)
            accepted += 1
    return accepted, blocked
