"""Epanechnikov reward density estimate (RDE) and the insertion gate."""

import logging
import math

import numpy as np

from frugal.models import GateDecision

logger = logging.getLogger(__name__)

# Peak coefficient of the unit Epanechnikov kernel, 3/4. Module level so the
# self-test mutation hook can perturb it.
KERNEL_SCALE = 0.75


def kernel_eval(u, h):
    """(3/(4h)) * (1 - (u/h)^2) on |u| <= h, else 0. Vectorised over u."""
    z = np.asarray(u, dtype=np.float64) / h
    values = np.where(np.abs(z) <= 1.0, KERNEL_SCALE * (1.0 - z * z), 0.0) / h
    return float(values) if values.ndim == 0 else values


def kernel_cdf(z):
    """Integral of the unit kernel from -inf to z."""
    z = np.clip(np.asarray(z, dtype=np.float64), -1.0, 1.0)
    return 0.5 + KERNEL_SCALE * (z - z ** 3 / 3.0)


def kde_density(r, rewards, h, normalized=True):
    """Kernel density of reward r given a cell's stored rewards."""
    rewards = np.asarray(rewards, dtype=np.float64)
    if rewards.size == 0:
        return 0.0
    total = float(np.sum(kernel_eval(r - rewards, h)))
    return total / rewards.size if normalized else total


def rde(r, rewards, cfg):
    """Mass of the cell's reward KDE inside [r - beta, r + beta].

    Exact: each kernel contributes the difference of its CDF at the two
    window edges.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    if rewards.size == 0:
        return 0.0
    h = cfg.bandwidth
    upper = kernel_cdf((r + cfg.beta - rewards) / h)
    lower = kernel_cdf((r - cfg.beta - rewards) / h)
    mass = float(np.sum(upper - lower))
    if cfg.normalized:
        # rounding can push a full-coverage mean a hair past 1
        return min(mass / rewards.size, 1.0)
    return mass


def dynamic_epsilon(cfg, n):
    """Acceptance threshold shrinking with the cell's reward count."""
    return cfg.epsilon / math.exp(n / cfg.eta)


def gate_decision(r, cell, ledger, cfg):
    """Accept iff the reward is under-represented in its cell.

    The caller appends r to the ledger on acceptance.
    """
    rewards = ledger.rewards(cell)
    value = rde(r, rewards, cfg)
    threshold = dynamic_epsilon(cfg, len(rewards))
    accepted = value < threshold
    logger.debug("cell=%s r=%.6g rde=%.6g threshold=%.6g accepted=%s",
                 cell, r, value, threshold, accepted)
    return GateDecision(accepted=accepted, rde_value=value, threshold=threshold)


class RewardLedger:
    """Sparse map from abstract-state id to the rewards stored in that cell.

    Only visited cells exist as keys; a cell whose last reward is removed is
    dropped again.
    """

    def __init__(self):
        self._cells = {}
        self._total = 0

    def rewards(self, cell):
        return self._cells.get(cell, ())

    def append(self, cell, reward):
        self._cells.setdefault(cell, []).append(float(reward))
        self._total += 1

    def remove(self, cell, reward):
        """Drop one occurrence of reward from cell."""
        bucket = self._cells.get(cell)
        if not bucket:
            raise KeyError(f"cell {cell} holds no rewards")
        bucket.remove(float(reward))
        self._total -= 1
        if not bucket:
            del self._cells[cell]

    def total(self):
        return self._total

    def cells(self):
        return list(self._cells)

    def items(self):
        return ((cell, list(bucket)) for cell, bucket in self._cells.items())

    def clear(self):
        self._cells.clear()
        self._total = 0

    def __len__(self):
        return len(self._cells)

    def __contains__(self, cell):
        return cell in self._cells

    def __eq__(self, other):
        if not isinstance(other, RewardLedger):
            return NotImplemented
        return list(self.items()) == list(other.items())
