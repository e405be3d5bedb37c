# mcmc/configuration.py
from dataclasses import dataclass

import numpy as np

from digitization.exceptions import ShapeError


@dataclass
class PathConfiguration:
    """
    Grid indices n_i^(j) of one Euclidean-time path, shape (K, N_bos).

    Slices are periodic: slice K-1 links back to slice 0.
    """

    indices: np.ndarray

    def __post_init__(self):
        self.indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        if self.indices.ndim != 2:
            raise ShapeError(f"path needs shape (K, N_bos), got {self.indices.shape}")

    @classmethod
    def uniform(cls, k, n_bos, index):
        return cls(np.full((k, n_bos), index, dtype=np.int64))

    @property
    def k(self):
        return self.indices.shape[0]

    @property
    def n_bos(self):
        return self.indices.shape[1]

    def copy(self):
        return PathConfiguration(self.indices.copy())

    def key(self):
        return self.indices.tobytes()

    def coordinates(self, grid):
        return grid.to_coordinates(self.indices)

    def in_range(self, grid):
        return bool(self.indices.min() >= 0 and self.indices.max() <= grid.lambda_ - 1)

    def links_valid(self):
        """Every adjacent slice pair is equal or differs by one step in one coordinate."""
        diff = np.roll(self.indices, -1, axis=0) - self.indices
        changed = np.count_nonzero(diff, axis=1)
        return bool(np.all(np.abs(diff) <= 1) and np.all(changed <= 1))

    def is_valid(self, grid):
        return self.in_range(grid) and self.links_valid()
