"""Convergence point, buffer/reward deltas and per-sample efficiency."""

import logging

import numpy as np

from frugal.errors import DivisionDegenerate, EmptyCurve, RunLogError
from frugal.models import MetricDeltas, MetricsRow

logger = logging.getLogger(__name__)

BAND = 0.9


def convergence_point(eval_curve):
    """Earliest step from which every later eval stays in the top band.

    Values are shifted by the curve minimum first so the band
    [0.9 * max, max] is well ordered for negative returns.
    """
    if not eval_curve:
        raise EmptyCurve("convergence point of an empty curve")
    steps = [int(s) for s, _ in eval_curve]
    values = np.asarray([v for _, v in eval_curve], dtype=np.float64)
    shifted = values - values.min()
    floor = BAND * shifted.max()

    cp = steps[-1]
    # walk back while the suffix stays in band
    for i in range(len(shifted) - 1, -1, -1):
        if shifted[i] < floor:
            break
        cp = steps[i]
    return cp


def translate_rewards(r_base, r_fac):
    """Shift both rewards by |R_B| + |R_F| when either is non-positive."""
    if r_base <= 0 or r_fac <= 0:
        shift = abs(r_base) + abs(r_fac)
        return r_base + shift, r_fac + shift
    return r_base, r_fac


def metric_deltas(base, fac):
    """Delta CP, Delta |R|, Delta R (percent) and relative per-sample efficiency P."""
    if base.cp == 0:
        raise DivisionDegenerate("baseline convergence point is 0")
    if base.buffer_size == 0 or fac.buffer_size == 0:
        raise DivisionDegenerate("empty replay buffer")

    r_base, r_fac = translate_rewards(base.reward_mean, fac.reward_mean)
    if r_base == 0:
        raise DivisionDegenerate("baseline reward is 0 after translation")

    return MetricDeltas(
        delta_cp=(base.cp - fac.cp) / base.cp * 100.0,
        delta_buf=(base.buffer_size - fac.buffer_size) / base.buffer_size * 100.0,
        delta_reward=(r_fac - r_base) / r_base * 100.0,
        p=(r_fac * base.buffer_size) / (fac.buffer_size * r_base),
    )


def summarize_run(log, run_id, env, buffer, seed, algo='td3', tail=10):
    """MetricsRow for one run log.

    Reward statistics come from the last evaluation; runs without one fall
    back to the last `tail` training episodes.
    """
    curve = log.eval_curve()
    evals = log.eval_records()
    if evals:
        reward_mean, reward_std = evals[-1]['eval_mean'], evals[-1]['eval_std']
        cp = convergence_point(curve)
    else:
        returns = [r['episode_return'] for r in log.episode_records()][-tail:]
        if not returns:
            raise RunLogError(f"run {run_id} has neither evaluations nor finished episodes")
        reward_mean, reward_std = float(np.mean(returns)), float(np.std(returns))
        cp = log.total_steps() - 1

    return MetricsRow(
        run_id=run_id,
        env=env,
        algo=algo,
        buffer=buffer,
        seed=int(seed),
        cp=int(cp),
        buffer_size=int(log.final_buffer_size()),
        reward_mean=float(reward_mean),
        reward_std=float(reward_std),
    )


def pair_efficiency(rows):
    """Fill each frugal row's p from the plain row with the same env and seed."""
    baselines = {(r.env, r.seed): r for r in rows if r.buffer == 'plain'}
    for row in rows:
        base = baselines.get((row.env, row.seed))
        if row.buffer == 'plain' or base is None:
            row.p = 1.0
            continue
        try:
            row.p = metric_deltas(base, row).p
        except DivisionDegenerate as e:
            logger.warning("No efficiency for %s: %s", row.run_id, e)
            row.p = 1.0
    return rows
