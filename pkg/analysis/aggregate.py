# analysis/aggregate.py
import logging
import math
from dataclasses import dataclass

import numpy as np

from digitization.exceptions import InsufficientDataError, InvalidParameterError

from .autocorrelation import autocorrelation_length, integrated_autocorrelation
from .series import AggregateResult

logger = logging.getLogger(__name__)

BURN_IN_BLOCKS = 10


def block_means(values, block):
    """Discard one block of burn-in, then average consecutive full blocks."""
    kept = np.asarray(values, dtype=float)[block:]
    n_blocks = kept.size // block
    return kept[: n_blocks * block].reshape(n_blocks, block).mean(axis=1)


def block_and_aggregate(streams, min_length_factor=None):
    """
    Combine independent streams of one observable.

    The largest integrated autocorrelation time over the streams fixes
    d = ceil(2 tau); each stream loses 10 d values as burn-in and the rest is
    cut into 10 d blocks. The estimate is the mean of the stream means with the
    unbiased spread of those means over sqrt(n_stream) as its error.
    """
    streams = list(streams)
    if len(streams) < 2:
        raise InvalidParameterError(f"need at least 2 streams, got {len(streams)}")

    tau = max(integrated_autocorrelation(s.values) for s in streams)
    d = autocorrelation_length(tau)
    block = BURN_IN_BLOCKS * d

    stream_means = []
    n_samples = 0
    for s in streams:
        if len(s) - block < 2 * block:
            raise InsufficientDataError(
                f"stream {s.stream_id} of {s.name} has {len(s)} values, "
                f"needs at least {3 * block} for d={d}",
                stream_id=s.stream_id,
            )
        if min_length_factor and len(s) < min_length_factor * d:
            logger.warning(
                "stream %s of %s has %d values, below %g d = %d",
                s.stream_id, s.name, len(s), min_length_factor, math.ceil(min_length_factor * d),
            )
        means = block_means(s.values, block)
        stream_means.append(means.mean())
        n_samples += means.size

    stream_means = np.asarray(stream_means)
    return AggregateResult(
        mean=float(stream_means.mean()),
        std_error=float(stream_means.std(ddof=1) / math.sqrt(stream_means.size)),
        d=d,
        n_samples=n_samples,
        n_stream=stream_means.size,
        n_step=min(len(s) for s in streams),
        tau_int=tau,
    )


@dataclass(frozen=True)
class RelativeErrorRow:
    inv_a_dig: float
    rel_err: float
    rel_err_err: float


def relative_error_table(mc_results, exact_value):
    """(Exact - MC) / Exact against 1 / a_dig, ordered by 1 / a_dig."""
    if exact_value == 0:
        raise InvalidParameterError("relative error is undefined for an exact value of 0")
    rows = [
        RelativeErrorRow(
            inv_a_dig=1.0 / a_dig,
            rel_err=(exact_value - result.mean) / exact_value,
            rel_err_err=result.std_error / abs(exact_value),
        )
        for a_dig, result in mc_results
    ]
    return sorted(rows, key=lambda row: row.inv_a_dig)
