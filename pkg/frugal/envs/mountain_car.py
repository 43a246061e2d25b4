import math

import numpy as np

from frugal.envs.base import Env
from frugal.models import EnvSpec, StepResult


class MountainCarContinuous(Env):
    """Under-powered car in a valley; +100 on reaching the right hilltop."""

    min_position = -1.2
    max_position = 0.6
    max_speed = 0.07
    goal_position = 0.45
    power = 0.0015

    def __init__(self, max_episode_steps=999):
        super().__init__()
        self.spec = EnvSpec(
            name='mountaincar',
            obs_dim=2,
            action_dim=1,
            action_low=(-1.0,),
            action_high=(1.0,),
            max_episode_steps=max_episode_steps,
        )
        self.position = -0.5
        self.velocity = 0.0

    def _reset_state(self):
        self.position = float(self.rng.uniform(-0.6, -0.4))
        self.velocity = 0.0

    def set_state(self, position, velocity):
        self.position = float(position)
        self.velocity = float(velocity)

    def observation(self):
        return np.array([self.position, self.velocity])

    def step(self, action):
        force = float(self.clip_action(action)[0])

        velocity = self.velocity + force * self.power - 0.0025 * math.cos(3.0 * self.position)
        velocity = min(max(velocity, -self.max_speed), self.max_speed)
        position = self.position + velocity
        position = min(max(position, self.min_position), self.max_position)
        if position == self.min_position and velocity < 0.0:
            velocity = 0.0

        self.position, self.velocity = position, velocity
        self.steps += 1

        reached = position >= self.goal_position
        reward = -0.1 * force ** 2 + (100.0 if reached else 0.0)
        truncated = not reached and self.horizon_reached()
        return StepResult(self.observation(), reward, reached or truncated, truncated)
