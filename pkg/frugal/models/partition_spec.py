import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from frugal.errors import ConfigError

# One integer cell index per selected dimension; plain tuples hash and
# compare element-wise.
AbstractStateId = Tuple[int, ...]


@dataclass(frozen=True)
class PartitionSpec:
    kappa: Tuple[int, ...]
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    mu: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.kappa)
        if not (len(self.lower) == len(self.upper) == len(self.mu) == n):
            raise ConfigError("kappa, lower, upper and mu must have equal length")
        if n == 0:
            raise ConfigError("partition needs at least one dimension")
        for lo, hi, m in zip(self.lower, self.upper, self.mu):
            if not lo < hi:
                raise ConfigError(f"lower bound {lo} is not below upper bound {hi}")
            if m < 1:
                raise ConfigError(f"cell count must be >= 1, got {m}")

    @property
    def widths(self):
        return (np.asarray(self.upper) - np.asarray(self.lower)) / np.asarray(self.mu)

    @property
    def cell_count(self):
        """Total number of abstract states (v); never materialised."""
        return math.prod(int(m) for m in self.mu)

    def centers(self, dim):
        """Cell centres along the dim-th selected dimension."""
        width = (self.upper[dim] - self.lower[dim]) / self.mu[dim]
        return self.lower[dim] + (np.arange(self.mu[dim]) + 0.5) * width
