# analysis/autocorrelation.py
import math

import numpy as np

from digitization.exceptions import DegenerateSeriesError, InvalidParameterError

WINDOW_RULE = "first non-positive lag"
LENGTH_RULE = "d = ceil(2 tau_int)"


def autocorrelation_function(series):
    """Normalized autocorrelation rho(t), t = 0 .. n-1, via a zero-padded FFT."""
    x = np.asarray(series, dtype=float)
    n = x.size
    f = np.fft.rfft(x - x.mean(), n=2 * n)
    acf = np.fft.irfft(f * np.conjugate(f), n=2 * n)[:n]
    return acf / acf[0]


def integrated_autocorrelation(series):
    """
    tau_int = 1/2 + sum_{t=1}^{W} rho(t), W the first lag with rho(W) <= 0.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 10:
        raise InvalidParameterError(f"need at least 10 values, got {x.size}")
    if np.ptp(x) == 0:
        raise DegenerateSeriesError("series is constant; its autocorrelation is undefined")
    rho = autocorrelation_function(x)
    nonpositive = np.flatnonzero(rho[1:] <= 0)
    window = int(nonpositive[0]) + 1 if nonpositive.size else x.size - 1
    return 0.5 + float(rho[1 : window + 1].sum())


def autocorrelation_length(tau_int):
    return max(1, math.ceil(2.0 * tau_int))


def single_stream_error(series):
    """Mean of one correlated series and its error sigma * sqrt(2 tau / n)."""
    x = np.asarray(series, dtype=float)
    tau = integrated_autocorrelation(x)
    err = float(np.std(x, ddof=1) * math.sqrt(2.0 * tau / x.size))
    return float(x.mean()), err, tau
