import logging
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Tuple

from frugal.errors import ConfigError
from frugal.models.gate_config import GateConfig
from frugal.models.train_config import TrainConfig

logger = logging.getLogger(__name__)

BUFFER_KINDS = ('frugal', 'plain')
ENV_NAMES = ('pendulum', 'mountaincar')


def _parse_bool(text):
    value = text.strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f"not a boolean: '{text}'")


def _parse_ints(text):
    parts = [p for p in text.replace(' ', '').split(',') if p]
    if not parts:
        raise ValueError("empty list")
    return tuple(int(p) for p in parts)


def _parse_optional_float(text):
    if text.strip().lower() in ('', 'none'):
        return None
    return float(text)


def _parse_optional_str(text):
    text = text.strip()
    return None if text.lower() in ('', 'none') else text


def _render(value):
    if value is None:
        return 'none'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ','.join(str(v) for v in value)
    return str(value)


def _opt(default, parse, doc):
    return field(default=default, metadata={'parse': parse, 'doc': doc})


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one training run."""

    env: str = _opt('pendulum', str, "environment name")
    buffer: str = _opt('frugal', str, "replay buffer kind: frugal or plain")
    capacity: int = _opt(20000, int, "replay buffer capacity")
    seed: int = _opt(0, int, "single source of all run randomness")
    out: Optional[str] = _opt(None, _parse_optional_str, "run directory")

    # dimension selection and partition
    nu: float = _opt(0.5, float, "pivot ratio threshold for significant dimensions")
    mu: Tuple[int, ...] = _opt((50,), _parse_ints, "cells per selected dimension")
    select_dims: bool = _opt(True, _parse_bool, "false partitions every state dimension")

    # insertion gate
    epsilon: float = _opt(0.2, float, "base acceptance threshold")
    eta: float = _opt(1e5, float, "threshold decay scale")
    beta: float = _opt(0.2, float, "half-width of the reward window")
    bandwidth: Optional[float] = _opt(None, _parse_optional_float, "kernel bandwidth (none = beta)")
    normalized: bool = _opt(True, _parse_bool, "average the kernel sum over the cell count")

    # learner
    gamma: float = _opt(0.99, float, "discount factor")
    lr_actor: float = _opt(1e-3, float, "actor learning rate")
    lr_critic: float = _opt(1e-3, float, "critic learning rate")
    batch_size: int = _opt(100, int, "minibatch size")
    steps: int = _opt(20000, int, "total environment steps")
    warmup: int = _opt(1000, int, "random-policy warm-up steps")
    tau: float = _opt(0.005, float, "target smoothing coefficient")
    exploration_noise: float = _opt(0.1, float, "exploration noise std (fraction of half-range)")
    policy_delay: int = _opt(2, int, "critic updates per actor update")
    target_noise: float = _opt(0.2, float, "target policy smoothing std")
    noise_clip: float = _opt(0.5, float, "target policy smoothing clip")
    hidden: Tuple[int, ...] = _opt((64, 64), _parse_ints, "hidden layer widths")
    optimizer: str = _opt('adam', str, "adam or sgd")
    eval_interval: int = _opt(1000, int, "steps between evaluations (0 disables)")
    eval_episodes: int = _opt(5, int, "episodes per evaluation")

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_mapping(cls, values, base=None):
        """Build a config from string values, rejecting unknown keys."""
        known = {f.name: f for f in fields(cls)}
        parsed = {}
        for key, text in values.items():
            if key not in known:
                raise ConfigError(f"unknown configuration key '{key}'")
            try:
                parsed[key] = known[key].metadata['parse'](str(text))
            except ValueError as e:
                raise ConfigError(f"bad value for '{key}': {e}") from e

        config = replace(base, **parsed) if base is not None else cls(**parsed)
        return config.validate()

    @classmethod
    def parse_text(cls, text, base=None):
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value'")
            key, value = line.split('=', 1)
            values[key.strip()] = value.strip()
        return cls.from_mapping(values, base=base)

    @classmethod
    def load_file(cls, path, base=None):
        with open(path, 'r', encoding='utf-8') as f:
            config = cls.parse_text(f.read(), base=base)
        logger.debug("Loaded configuration from %s", path)
        return config

    def to_text(self):
        lines = []
        for f in fields(self):
            lines.append(f"{f.name} = {_render(getattr(self, f.name))}")
        return '\n'.join(lines) + '\n'

    def with_defaults_text(self):
        """Commented rendering used by `init-config`."""
        lines = []
        for f in fields(self):
            lines.append(f"# {f.metadata['doc']}")
            lines.append(f"{f.name} = {_render(getattr(self, f.name))}")
        return '\n'.join(lines) + '\n'

    def validate(self):
        if self.env not in ENV_NAMES:
            raise ConfigError(f"bad value for 'env': unknown environment '{self.env}' (choose from {', '.join(ENV_NAMES)})")
        if self.buffer not in BUFFER_KINDS:
            raise ConfigError(f"bad value for 'buffer': unknown kind '{self.buffer}' (choose from {', '.join(BUFFER_KINDS)})")
        if self.capacity < 1:
            raise ConfigError(f"capacity must be >= 1, got {self.capacity}")
        if not 0.0 < self.nu < 1.0:
            raise ConfigError(f"nu must lie in (0, 1), got {self.nu}")
        if any(m < 1 for m in self.mu):
            raise ConfigError(f"mu entries must be >= 1, got {self.mu}")
        # constructing the derived configs runs their own checks
        self.gate_config()
        self.train_config()
        return self

    def gate_config(self):
        return GateConfig(
            epsilon=self.epsilon,
            eta=self.eta,
            beta=self.beta,
            bandwidth=self.bandwidth,
            normalized=self.normalized,
        )

    def train_config(self):
        return TrainConfig(
            gamma=self.gamma,
            lr_actor=self.lr_actor,
            lr_critic=self.lr_critic,
            batch_size=self.batch_size,
            total_steps=self.steps,
            warmup_steps=self.warmup,
            tau=self.tau,
            exploration_noise=self.exploration_noise,
            policy_delay=self.policy_delay,
            target_noise=self.target_noise,
            noise_clip=self.noise_clip,
            hidden=self.hidden,
            optimizer=self.optimizer,
            eval_interval=self.eval_interval,
            eval_episodes=self.eval_episodes,
            seed=self.seed,
        )
