import math

import numpy as np

from frugal.envs.base import Env
from frugal.models import EnvSpec, StepResult


def wrap_angle(x):
    """Map an angle into [-pi, pi)."""
    return ((x + math.pi) % (2.0 * math.pi)) - math.pi


class Pendulum(Env):
    """Torque-limited inverted pendulum, angle 0 upright.

    Observation is (cos theta, sin theta, theta_dot).
    """

    g = 10.0
    m = 1.0
    l = 1.0
    max_speed = 8.0
    max_torque = 2.0

    def __init__(self, dt=0.05, max_episode_steps=200):
        super().__init__()
        self.dt = dt
        self.spec = EnvSpec(
            name='pendulum',
            obs_dim=3,
            action_dim=1,
            action_low=(-self.max_torque,),
            action_high=(self.max_torque,),
            max_episode_steps=max_episode_steps,
            dt=dt,
        )
        self.theta = 0.0
        self.theta_dot = 0.0

    def _reset_state(self):
        self.theta = float(self.rng.uniform(-math.pi, math.pi))
        self.theta_dot = float(self.rng.uniform(-1.0, 1.0))

    def set_state(self, theta, theta_dot):
        self.theta = float(theta)
        self.theta_dot = float(theta_dot)

    def observation(self):
        return np.array([math.cos(self.theta), math.sin(self.theta), self.theta_dot])

    def step(self, action):
        u = float(self.clip_action(action)[0])
        th, thdot = self.theta, self.theta_dot

        cost = wrap_angle(th) ** 2 + 0.1 * thdot ** 2 + 0.001 * u ** 2

        thdot = thdot + (3.0 * self.g / (2.0 * self.l) * math.sin(th)
                         + 3.0 / (self.m * self.l ** 2) * u) * self.dt
        thdot = min(max(thdot, -self.max_speed), self.max_speed)
        th = th + thdot * self.dt

        self.theta, self.theta_dot = th, thdot
        self.steps += 1
        done = self.horizon_reached()
        return StepResult(self.observation(), -cost, done, done)
