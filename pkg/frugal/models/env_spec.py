from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class EnvSpec:
    name: str
    obs_dim: int
    action_dim: int
    action_low: Tuple[float, ...]
    action_high: Tuple[float, ...]
    max_episode_steps: int
    dt: Optional[float] = None

    @property
    def action_range(self):
        return np.asarray(self.action_high) - np.asarray(self.action_low)


class StepResult(NamedTuple):
    observation: np.ndarray
    reward: float
    # true on goal and on the time limit
    done: bool
    # true only on the time limit; the learner keeps bootstrapping
    truncated: bool = False
