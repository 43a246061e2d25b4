import math

import numpy as np
import pytest

from conftest import make_transition
from frugal.analysis import (
    convergence_factor,
    convergence_point,
    duplicate_mass_function,
    empirical_entropy,
    entropy_brute_force,
    entropy_delta_brute_force,
    entropy_delta_closed_form,
    metric_deltas,
    pair_efficiency,
    summarize_run,
    translate_rewards,
    variance_ratio_experiment,
)
from frugal.errors import DivisionDegenerate, DomainError, EmptyCurve, NotADistribution
from frugal.models import MetricsRow, RunLog
from frugal.utils.oracles import suffix_convergence_point


def _row(cp=1, size=1, reward=1.0, buffer='frugal', seed=0, env='pendulum'):
    return MetricsRow('run', env, 'td3', buffer, seed, cp, size, reward, 0.0)


def _curve(values, every=1000):
    return [(every * (i + 1), float(v)) for i, v in enumerate(values)]


def test_convergence_monotone():
    assert convergence_point(_curve([0, 50, 80, 95, 100, 100])) == 4000


def test_convergence_constant():
    assert convergence_point(_curve([-5.0] * 6)) == 1000


def test_convergence_reentry():
    curve = _curve([-1000, -200, -150, -900, -160, -140])
    assert convergence_point(curve) == 5000
    assert convergence_point(curve) == suffix_convergence_point(curve)


def test_convergence_random_curves(rng):
    for _ in range(500):
        curve = _curve(rng.normal(size=rng.integers(1, 25)).cumsum() - 100.0)
        assert convergence_point(curve) == suffix_convergence_point(curve)


def test_convergence_empty():
    with pytest.raises(EmptyCurve):
        convergence_point([])


def test_table_pendulum_row():
    d = metric_deltas(_row(size=20000, reward=-143.97), _row(size=11412, reward=-144.66))
    assert round(d.delta_buf, 2) == 42.94
    assert d.p == pytest.approx(1.75, abs=0.02)
    assert translate_rewards(-143.97, -144.66) == pytest.approx((144.66, 143.97))


def test_table_mountain_car_row():
    d = metric_deltas(_row(cp=30696), _row(cp=23089))
    assert round(d.delta_cp, 2) == 24.78


def test_positive_rewards_are_not_translated():
    assert translate_rewards(10.0, 12.0) == (10.0, 12.0)
    d = metric_deltas(_row(size=100, reward=10.0), _row(size=50, reward=12.0))
    assert d.delta_reward == pytest.approx(20.0)
    assert d.p == pytest.approx(2.4)


@pytest.mark.parametrize("base, fac", [
    (_row(cp=0), _row()),
    (_row(size=0), _row()),
    (_row(), _row(size=0)),
    (_row(reward=0.0), _row(reward=0.0)),
])
def test_degenerate_deltas(base, fac):
    with pytest.raises(DivisionDegenerate):
        metric_deltas(base, fac)


def test_pair_efficiency():
    rows = [
        _row(size=20000, reward=-143.97, buffer='plain'),
        _row(size=11412, reward=-144.66),
        _row(size=11412, reward=-144.66, seed=1),
    ]
    pair_efficiency(rows)
    assert rows[0].p == 1.0
    assert rows[1].p == pytest.approx(1.75, abs=0.02)
    assert rows[2].p == 1.0


def test_summarize_run_uses_last_eval():
    log = RunLog()
    for step in range(4):
        log.log_step(step, -1.0, True, 0.0, step + 1)
        if step % 2:
            log.log_eval(step, -100.0 + step, 2.0)
    row = summarize_run(log, 'r', 'pendulum', 'plain', 0)
    assert (row.cp, row.buffer_size, row.reward_mean, row.reward_std) == (3, 4, -97.0, 2.0)


@pytest.mark.parametrize("m, lam, expected", [
    (10, 0, 0.0),
    (4, 1, 2 * math.log(2) / 4),
    (100, 3, 4 * math.log(4) / 100),
])
def test_entropy_closed_form(m, lam, expected):
    assert entropy_delta_closed_form(m, lam) == pytest.approx(expected, abs=1e-12)
    assert abs(entropy_delta_brute_force(m, lam) - expected) <= 1e-12


def test_entropy_brute_force():
    assert entropy_brute_force(np.full(8, 1 / 8)) == pytest.approx(math.log(8))
    assert entropy_brute_force([1.0, 0.0, 0.0]) == 0.0
    m, lam = 50, 7
    expected = math.log(m) - (lam + 1) * math.log(lam + 1) / m
    assert abs(entropy_brute_force(duplicate_mass_function(m, lam)) - expected) <= 1e-12


@pytest.mark.parametrize("m, lam", [(2, 0), (10, 10), (10, -1)])
def test_entropy_domain(m, lam):
    with pytest.raises(DomainError):
        entropy_delta_closed_form(m, lam)


def test_not_a_distribution():
    with pytest.raises(NotADistribution):
        entropy_brute_force([0.5, 0.6])
    with pytest.raises(NotADistribution):
        entropy_brute_force([1.5, -0.5])


def test_empirical_entropy():
    a, b = make_transition([0.0], 1.0), make_transition([1.0], 1.0)
    assert empirical_entropy([]) == 0.0
    assert empirical_entropy([a, a]) == 0.0
    assert empirical_entropy([a, b]) == pytest.approx(math.log(2))


def test_convergence_factor():
    assert convergence_factor(4, 2) == 2.5
    assert convergence_factor(32, 4) == 1.625


def test_variance_ratio_without_duplicates():
    assert variance_ratio_experiment(16, 0, 20_000, seed=0) == pytest.approx(1.0, rel=0.1)


@pytest.mark.parametrize("b, zeta", [(32, 4), (64, 8)])
def test_variance_ratio_matches_factor(b, zeta):
    measured = variance_ratio_experiment(b, zeta, 100_000, seed=1)
    assert abs(measured / convergence_factor(b, zeta) - 1.0) <= 0.15


def test_variance_ratio_needs_enough_trials():
    with pytest.raises(DomainError):
        variance_ratio_experiment(32, 4, 100, seed=0)
