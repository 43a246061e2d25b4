import math

import pytest

from frugal.models import GateConfig
from frugal.utils import density
from frugal.utils.density import (
    RewardLedger,
    dynamic_epsilon,
    gate_decision,
    kde_density,
    kernel_eval,
    rde,
)
from frugal.utils.oracles import kernel_mass, quad_rde


def test_kernel_values():
    assert kernel_eval(0.0, 0.2) == pytest.approx(3.75)
    assert kernel_eval(0.2, 0.2) == 0.0
    assert kernel_eval(-0.3, 0.2) == 0.0


@pytest.mark.parametrize("h", [0.05, 0.2, 1.0, 3.0])
def test_kernel_integrates_to_one(h):
    assert abs(kernel_mass(h) - 1.0) <= 1e-9


def test_kde_density():
    assert kde_density(0.0, [], 0.2) == 0.0
    assert kde_density(0.0, [0.0], 0.2) == pytest.approx(3.75)
    assert kde_density(0.2, [0.0, 0.4], 0.2) == 0.0
    # literal sum against the mean
    assert kde_density(0.0, [0.0, 0.1], 0.2, normalized=False) == pytest.approx(
        2 * kde_density(0.0, [0.0, 0.1], 0.2))


def test_rde_worked_values(gate_cfg):
    assert rde(0.0, [], gate_cfg) == 0.0
    assert rde(0.0, [0.0], gate_cfg) == pytest.approx(1.0, abs=1e-12)
    assert rde(0.3, [0.0], gate_cfg) == pytest.approx(0.15625, abs=1e-12)


@pytest.mark.parametrize("normalized", [True, False])
@pytest.mark.parametrize("bandwidth", [None, 0.1, 0.5])
def test_rde_matches_quadrature(rng, normalized, bandwidth):
    cfg = GateConfig(bandwidth=bandwidth, normalized=normalized)
    for _ in range(200):
        rewards = rng.uniform(-1.0, 1.0, size=rng.integers(0, 20))
        r = rng.uniform(-1.5, 1.5)
        assert abs(rde(r, rewards, cfg) - quad_rde(r, rewards, cfg)) <= 1e-9


def test_normalized_rde_never_exceeds_one(rng, gate_cfg):
    rewards = rng.uniform(-0.01, 0.01, size=1000)
    assert rde(0.0, rewards, gate_cfg) <= 1.0


@pytest.mark.parametrize("n, expected", [(0, 0.2), (1e5, 0.2 / math.e), (2e5, 0.2 / math.e ** 2)])
def test_dynamic_epsilon(gate_cfg, n, expected):
    assert dynamic_epsilon(gate_cfg, n) == pytest.approx(expected)


def test_gate_on_empty_cell(gate_cfg):
    decision = gate_decision(0.7, (3,), RewardLedger(), gate_cfg)
    assert decision.accepted and decision.rde_value == 0.0 and decision.threshold == 0.2


def test_gate_rejects_exact_duplicate(gate_cfg):
    ledger = RewardLedger()
    ledger.append((0,), 0.0)
    decision = gate_decision(0.0, (0,), ledger, gate_cfg)
    assert not decision.accepted
    assert decision.rde_value == pytest.approx(1.0)


def test_gate_accepts_distant_reward(gate_cfg):
    ledger = RewardLedger()
    ledger.append((0,), 0.0)
    decision = gate_decision(0.3, (0,), ledger, gate_cfg)
    assert decision.accepted
    assert decision.threshold == pytest.approx(0.2 * math.exp(-1e-5))


def _scalar_rde(r, rewards, beta, h):
    def cdf(z):
        z = min(max(z, -1.0), 1.0)
        return 0.5 + 0.75 * (z - z ** 3 / 3.0)
    if not rewards:
        return 0.0
    return min(sum(cdf((r + beta - x) / h) - cdf((r - beta - x) / h) for x in rewards) / len(rewards), 1.0)


def test_gate_stream_matches_scalar_replay(rng, gate_cfg):
    ledger = RewardLedger()
    stored = []
    decisions = []
    expected = []
    for r in rng.uniform(0.0, 1.0, size=10_000):
        decision = gate_decision(r, (0,), ledger, gate_cfg)
        if decision.accepted:
            ledger.append((0,), r)
        decisions.append(decision.accepted)

        accept = _scalar_rde(r, stored, 0.2, 0.2) < 0.2 * math.exp(-len(stored) / 1e5)
        if accept:
            stored.append(r)
        expected.append(accept)

    assert decisions == expected
    assert sum(decisions) < 1000


def test_ledger_is_sparse():
    ledger = RewardLedger()
    assert ledger.rewards((1, 2)) == ()
    assert (1, 2) not in ledger

    ledger.append((1, 2), 0.5)
    ledger.append((1, 2), 0.5)
    ledger.append((4, 4), 1.0)
    assert len(ledger) == 2 and ledger.total() == 3

    ledger.remove((1, 2), 0.5)
    assert list(ledger.rewards((1, 2))) == [0.5]
    ledger.remove((4, 4), 1.0)
    assert (4, 4) not in ledger
    assert ledger.total() == 1

    with pytest.raises(KeyError):
        ledger.remove((9, 9), 0.0)


def test_kernel_scale_hook(gate_cfg, monkeypatch):
    monkeypatch.setattr(density, 'KERNEL_SCALE', 0.8)
    assert rde(0.3, [0.0], gate_cfg) != pytest.approx(0.15625)
    assert abs(kernel_mass(0.2) - 1.0) > 1e-3


def test_gate_properties_on_random_cases(rng, gate_cfg):
    for r, cell in zip(rng.normal(scale=50.0, size=10_000), rng.integers(0, 1000, size=(10_000, 3))):
        cell = tuple(int(c) for c in cell)
        ledger = RewardLedger()
        assert gate_decision(r, cell, ledger, gate_cfg).accepted
        ledger.append(cell, r)
        assert not gate_decision(r, cell, ledger, gate_cfg).accepted
