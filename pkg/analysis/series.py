# analysis/series.py
from dataclasses import dataclass, field

import numpy as np


@dataclass
class ObservableSeries:
    """One measured observable along one chain stream, one value per recorded sweep."""

    name: str
    values: np.ndarray
    stream_id: int = 0
    fingerprint: str = ""
    sweeps: np.ndarray = field(default=None)  # pyright: ignore

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.sweeps is None:
            self.sweeps = np.arange(1, self.values.size + 1)
        self.sweeps = np.asarray(self.sweeps, dtype=np.int64)
        if self.sweeps.shape != self.values.shape:
            raise ValueError(
                f"{self.name}: {self.sweeps.size} sweep numbers for {self.values.size} values"
            )

    def __len__(self):
        return int(self.values.size)

    def __str__(self):
        return f"{self.name} (stream {self.stream_id}, {len(self)} values)"

    def scaled(self, factor):
        return ObservableSeries(
            self.name, self.values * factor, self.stream_id, self.fingerprint, self.sweeps
        )


@dataclass(frozen=True)
class AggregateResult:
    mean: float
    std_error: float
    d: int
    n_samples: int
    n_stream: int = 0
    n_step: int = 0
    tau_int: float = 0.0

    def __str__(self):
        return f"{self.mean:.6g} +/- {self.std_error:.2g} (d={self.d}, n_stream={self.n_stream})"
