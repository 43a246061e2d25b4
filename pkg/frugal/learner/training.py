"""Warm-up rollout, partition construction and the gated learning loop."""

import logging
import time

import numpy as np

from frugal.errors import DegenerateRollout
from frugal.learner.agent import Td3Agent
from frugal.models import DimensionSelection, RunLog, Transition
from frugal.utils.linalg import find_important_dimensions
from frugal.utils.partition import build_partition

logger = logging.getLogger(__name__)


def split_seed(seed):
    """Independent env / learner / sampler / evaluation streams from one seed."""
    env_ss, learner_ss, sampler_ss, eval_ss = np.random.SeedSequence(seed).spawn(4)
    return {
        'env': int(env_ss.generate_state(1)[0]),
        'learner': np.random.default_rng(learner_ss),
        'sampler': np.random.default_rng(sampler_ss),
        'eval': int(eval_ss.generate_state(1)[0]),
    }


def evaluate(policy, env, episodes, seed):
    """Mean and population std of undiscounted returns under the noise-free policy."""
    if episodes < 1:
        raise ValueError(f"episodes must be >= 1, got {episodes}")
    rng = np.random.default_rng(seed)
    returns = []
    for _ in range(episodes):
        obs = env.reset(seed=int(rng.integers(2 ** 32)))
        total = 0.0
        done = False
        while not done:
            result = env.step(policy.forward(obs))
            total += result.reward
            obs, done = result.observation, result.done
        returns.append(total)
    return float(np.mean(returns)), float(np.std(returns))


def select_partition(omega, nu, mu, select_dims=True):
    """Significant dimensions plus grid; falls back to every dimension."""
    if select_dims:
        try:
            selection = find_important_dimensions(omega, nu)
        except DegenerateRollout as e:
            logger.warning("Dimension selection failed (%s); partitioning every dimension", e)
            selection = DimensionSelection.all_dimensions(omega.shape[1])
    else:
        selection = DimensionSelection.all_dimensions(omega.shape[1])
    return selection, build_partition(omega, selection, mu)


def train(env, buffer, cfg, nu=0.5, mu=50, select_dims=True, eval_env=None):
    """Run the full schedule; returns (policy, RunLog).

    Steps [0, warmup) act uniformly at random and their states form the
    rollout matrix; the partition is attached to the buffer when warm-up
    ends. Every later step inserts, samples a minibatch and updates.
    """
    streams = split_seed(cfg.seed)
    agent = Td3Agent(env.spec, cfg, streams['learner'])
    sampler = streams['sampler']
    log = RunLog()
    started = time.perf_counter()

    if eval_env is None:
        eval_env = env.__class__()
    obs = env.reset(seed=streams['env'])
    rollout = []
    episode, episode_return = 0, 0.0
    evaluations = 0

    for step in range(cfg.total_steps):
        warming_up = step < cfg.warmup_steps
        if warming_up:
            rollout.append(obs)
            action = agent.random_action()
        else:
            action = agent.act(obs, explore=True)

        result = env.step(action)
        terminal = result.done and not result.truncated
        t = Transition.make(obs, action, result.reward, result.observation, terminal)
        outcome = buffer.insert(t)
        log.log_step(step, result.reward, outcome.accepted, outcome.rde_value, len(buffer))

        episode_return += result.reward
        if result.done:
            log.log_episode(step, episode, episode_return)
            episode += 1
            episode_return = 0.0
            obs = env.reset()
        else:
            obs = result.observation

        if step == cfg.warmup_steps - 1:
            selection, spec = select_partition(np.asarray(rollout), nu, mu, select_dims)
            buffer.attach_partition(spec)
            logger.info("Warm-up done after %d steps; kappa=%s, buffer holds %d",
                        cfg.warmup_steps, list(selection.kappa), len(buffer))

        if warming_up:
            continue

        agent.update(buffer.sample_minibatch(cfg.batch_size, sampler))

        if cfg.eval_interval and (step + 1) % cfg.eval_interval == 0:
            mean, std = evaluate(agent.actor, eval_env, cfg.eval_episodes, streams['eval'])
            log.log_eval(step, mean, std)
            evaluations += 1
            logger.info("step %d: eval %.2f +/- %.2f, buffer %d", step + 1, mean, std, len(buffer))

    log.wall_time = time.perf_counter() - started
    logger.info("Training finished in %.1fs: %d steps, %d evaluations, final buffer %d",
                log.wall_time, cfg.total_steps, evaluations, len(buffer))
    return agent.actor, log
