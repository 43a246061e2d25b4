from dataclasses import dataclass
from typing import Optional

from frugal.errors import ConfigError


@dataclass(frozen=True)
class GateConfig:
    """Hyperparameters of the reward-density insertion gate.

    ``bandwidth`` defaults to ``beta``; keeping h <= beta makes an exact
    duplicate of a cell's only reward always rejected. ``normalized=False``
    switches the density estimate to the plain (unaveraged) kernel sum.
    """

    epsilon: float = 0.2
    eta: float = 1e5
    beta: float = 0.2
    bandwidth: Optional[float] = None
    normalized: bool = True

    def __post_init__(self):
        if self.bandwidth is None:
            object.__setattr__(self, 'bandwidth', self.beta)
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.eta > 0.0:
            raise ConfigError(f"eta must be positive, got {self.eta}")
        if not self.beta > 0.0:
            raise ConfigError(f"beta must be positive, got {self.beta}")
        if not self.bandwidth > 0.0:
            raise ConfigError(f"bandwidth must be positive, got {self.bandwidth}")
