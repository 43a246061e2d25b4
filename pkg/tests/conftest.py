import numpy as np
import pytest

from frugal.models import GateConfig, PartitionSpec, TrainConfig, Transition


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gate_cfg():
    return GateConfig()


@pytest.fixture
def unit_spec():
    """One selected dimension (state index 0) split into 4 cells over [0, 1]."""
    return PartitionSpec(kappa=(0,), lower=(0.0,), upper=(1.0,), mu=(4,))


@pytest.fixture
def small_train_cfg():
    return TrainConfig(
        batch_size=16,
        total_steps=300,
        warmup_steps=100,
        hidden=(8, 8),
        eval_interval=100,
        eval_episodes=1,
        seed=3,
    )


def make_transition(s, r, a=0.0, s_next=None, done=False):
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    return Transition.make(s, [a], r, s if s_next is None else s_next, done)
