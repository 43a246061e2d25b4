from abc import ABC, abstractmethod

import numpy as np

from frugal.errors import NonFiniteAction


class Env(ABC):
    """Deterministic single-owner environment.

    reset(seed) reseeds the initial-state generator; reset() without a seed
    keeps drawing from the current one.
    """

    spec = None

    def __init__(self):
        self.rng = np.random.default_rng()
        self.steps = 0

    def reset(self, seed=None):
        if seed is not None:
            self.rng = np.random.default_rng(seed)
        self.steps = 0
        self._reset_state()
        return self.observation()

    def clip_action(self, action):
        action = np.asarray(action, dtype=np.float64).reshape(self.spec.action_dim)
        if not np.isfinite(action).all():
            raise NonFiniteAction(f"action {action} is not finite")
        return np.clip(action, self.spec.action_low, self.spec.action_high)

    def horizon_reached(self):
        return self.steps >= self.spec.max_episode_steps

    @abstractmethod
    def _reset_state(self):
        pass

    @abstractmethod
    def observation(self):
        pass

    @abstractmethod
    def step(self, action):
        """Advance one step; returns a StepResult."""
