"""Uniform grid over the significant dimensions (the abstraction map)."""

import logging

import numpy as np

from frugal.errors import DegenerateRollout, NonFiniteState, ShapeMismatch
from frugal.models import PartitionSpec

logger = logging.getLogger(__name__)

# Bounds are widened by this fraction of the observed range, or by
# ZERO_RANGE_PAD when the range is zero.
RANGE_PAD = 0.01
ZERO_RANGE_PAD = 1.0


def _broadcast_mu(mu, count):
    mu = np.atleast_1d(np.asarray(mu, dtype=np.int64))
    if mu.size == 1:
        mu = np.repeat(mu, count)
    if mu.size != count:
        raise ShapeMismatch(f"mu has {mu.size} entries for {count} selected dimensions")
    return tuple(int(m) for m in mu)


def build_partition(omega, selection, mu=50):
    """Grid spanning the rollout's range on each selected dimension."""
    omega = np.asarray(omega, dtype=np.float64)
    if omega.ndim != 2 or omega.shape[0] == 0:
        raise DegenerateRollout("cannot partition an empty rollout")

    kappa = tuple(int(k) for k in selection.kappa)
    if max(kappa) >= omega.shape[1]:
        raise ShapeMismatch(f"dimension {max(kappa)} outside a {omega.shape[1]}-dimensional rollout")

    cols = omega[:, list(kappa)]
    lo = cols.min(axis=0)
    hi = cols.max(axis=0)
    span = hi - lo
    pad = np.where(span > 0, RANGE_PAD * span, ZERO_RANGE_PAD)

    spec = PartitionSpec(
        kappa=kappa,
        lower=tuple(float(v) for v in lo - pad),
        upper=tuple(float(v) for v in hi + pad),
        mu=_broadcast_mu(mu, len(kappa)),
    )
    logger.info("Built partition over dims %s with %s cells", list(kappa), spec.cell_count)
    return spec


class StateMapper:
    """Vectorised form of map_state bound to one spec."""

    def __init__(self, spec):
        self.spec = spec
        self._kappa = np.asarray(spec.kappa, dtype=np.int64)
        self._lower = np.asarray(spec.lower, dtype=np.float64)
        self._width = spec.widths
        self._top = np.asarray(spec.mu, dtype=np.int64) - 1

    def cells(self, states):
        """Cell indices for a (n, p) array of states, shape (n, |kappa|)."""
        states = np.asarray(states, dtype=np.float64)
        if states.ndim == 1:
            states = states[None, :]
        if states.shape[1] <= self._kappa.max():
            raise ShapeMismatch(
                f"state has {states.shape[1]} entries, partition reads dimension {self._kappa.max()}"
            )
        x = states[:, self._kappa]
        if not np.isfinite(x).all():
            raise NonFiniteState("state contains NaN or Inf")
        idx = np.floor((x - self._lower) / self._width).astype(np.int64)
        return np.clip(idx, 0, self._top)

    def __call__(self, state):
        return tuple(int(i) for i in self.cells(state)[0])


def map_state(spec, state):
    """Abstract-state id of one raw state.

    Boundaries belong to the upper cell; out-of-range coordinates clamp to
    the end cells.
    """
    return StateMapper(spec)(state)
