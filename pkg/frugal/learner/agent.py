"""TD3-lite: twin critics, delayed deterministic actor, Polyak targets."""

import logging

import numpy as np

from frugal.errors import DivergedTraining
from frugal.learner.mlp import OUTPUT_TANH, Mlp, soft_update
from frugal.learner.optim import make_optimizer

logger = logging.getLogger(__name__)


def td_delta(t, critic_target, actor_target, critic, gamma, critic_target_2=None):
    """r + (1 - done) * gamma * Q'(s', mu'(s')) - Q(s, a) for one transition.

    With a second target critic the bootstrap takes the smaller estimate.
    """
    next_action = actor_target.forward(t.s_next)
    next_input = np.concatenate([t.s_next, next_action])
    bootstrap = float(critic_target.forward(next_input)[0])
    if critic_target_2 is not None:
        bootstrap = min(bootstrap, float(critic_target_2.forward(next_input)[0]))
    q = float(critic.forward(np.concatenate([t.s, t.a]))[0])
    return t.r + (0.0 if t.done else gamma * bootstrap) - q


class Td3Agent:
    def __init__(self, spec, cfg, rng):
        self.spec = spec
        self.cfg = cfg
        self.rng = rng
        self.low = np.asarray(spec.action_low, dtype=np.float64)
        self.high = np.asarray(spec.action_high, dtype=np.float64)
        self.half_range = (self.high - self.low) / 2.0

        p, q = spec.obs_dim, spec.action_dim
        hidden = list(cfg.hidden)
        self.actor = Mlp.create([p] + hidden + [q], rng, output=OUTPUT_TANH,
                                scale=self.half_range, offset=(self.high + self.low) / 2.0)
        self.critic1 = Mlp.create([p + q] + hidden + [1], rng)
        self.critic2 = Mlp.create([p + q] + hidden + [1], rng)
        self.actor_target = self.actor.copy()
        self.critic1_target = self.critic1.copy()
        self.critic2_target = self.critic2.copy()

        self.actor_opt = make_optimizer(cfg.optimizer, self.actor.parameters())
        self.critic1_opt = make_optimizer(cfg.optimizer, self.critic1.parameters())
        self.critic2_opt = make_optimizer(cfg.optimizer, self.critic2.parameters())
        self.updates = 0

    def act(self, obs, explore=False):
        action = self.actor.forward(obs)
        if explore:
            noise = self.rng.normal(0.0, self.cfg.exploration_noise * self.half_range)
            action = action + noise
        return np.clip(action, self.low, self.high)

    def random_action(self):
        return self.rng.uniform(self.low, self.high)

    def td_targets(self, batch):
        cfg = self.cfg
        next_actions = self.actor_target.forward(batch.next_states)
        noise = self.rng.normal(0.0, cfg.target_noise * self.half_range, size=next_actions.shape)
        limit = cfg.noise_clip * self.half_range
        next_actions = np.clip(next_actions + np.clip(noise, -limit, limit), self.low, self.high)

        next_inputs = np.concatenate([batch.next_states, next_actions], axis=1)
        q1 = self.critic1_target.forward(next_inputs)[:, 0]
        q2 = self.critic2_target.forward(next_inputs)[:, 0]
        not_done = 1.0 - batch.dones.astype(np.float64)
        return batch.rewards + not_done * cfg.gamma * np.minimum(q1, q2)

    def _critic_step(self, critic, optimizer, inputs, targets):
        q, cache = critic.forward(inputs, keep=True)
        residual = q[:, 0] - targets
        # d/dq of mean squared error
        upstream = (2.0 / len(targets)) * residual[:, None]
        grads, _ = critic.backward(cache, upstream)
        optimizer.step(critic.parameters(), grads, self.cfg.lr_critic)
        return float(np.mean(residual ** 2))

    def _actor_step(self, states):
        p = self.spec.obs_dim
        actions, actor_cache = self.actor.forward(states, keep=True)
        inputs = np.concatenate([states, actions], axis=1)
        q, critic_cache = self.critic1.forward(inputs, keep=True)
        # maximise mean Q: descend on -mean Q
        upstream = -np.ones_like(q) / len(states)
        _, d_inputs = self.critic1.backward(critic_cache, upstream)
        grads, _ = self.actor.backward(actor_cache, d_inputs[:, p:])
        self.actor_opt.step(self.actor.parameters(), grads, self.cfg.lr_actor)
        return float(-np.mean(q))

    def update(self, batch):
        """One critic step and, every policy_delay updates, an actor step."""
        targets = self.td_targets(batch)
        inputs = np.concatenate([batch.states, batch.actions], axis=1)
        stats = {
            'critic_loss': self._critic_step(self.critic1, self.critic1_opt, inputs, targets)
            + self._critic_step(self.critic2, self.critic2_opt, inputs, targets),
        }
        self.updates += 1

        if self.updates % self.cfg.policy_delay == 0:
            stats['actor_loss'] = self._actor_step(batch.states)
            soft_update(self.actor_target, self.actor, self.cfg.tau)
            soft_update(self.critic1_target, self.critic1, self.cfg.tau)
            soft_update(self.critic2_target, self.critic2, self.cfg.tau)

        self.check_finite()
        return stats

    def networks(self):
        return {
            'actor': self.actor,
            'critic1': self.critic1,
            'critic2': self.critic2,
            'actor_target': self.actor_target,
            'critic1_target': self.critic1_target,
            'critic2_target': self.critic2_target,
        }

    def check_finite(self):
        for name, net in self.networks().items():
            if not net.is_finite():
                raise DivergedTraining(f"{name} has non-finite parameters after update {self.updates}")
