from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class QrPivotResult:
    """A[:, perm] == q @ r, |diag(r)| non-increasing."""

    q: Optional[np.ndarray]
    r: np.ndarray
    perm: np.ndarray

    @property
    def pivots(self):
        k = min(self.r.shape)
        return np.abs(np.diag(self.r)[:k])


@dataclass(frozen=True)
class DimensionSelection:
    # original state-dimension indices, in pivot order
    kappa: Tuple[int, ...]
    # kept pivots, non-increasing; empty when no QR was run
    pivots: Tuple[float, ...]

    @classmethod
    def all_dimensions(cls, p):
        return cls(kappa=tuple(range(p)), pivots=())
