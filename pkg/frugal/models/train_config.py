from dataclasses import dataclass
from typing import Tuple

from frugal.errors import ConfigError

OPTIMIZERS = ('adam', 'sgd')


@dataclass(frozen=True)
class TrainConfig:
    """Learner schedule and TD3-lite hyperparameters.

    Noise magnitudes are fractions of the action half-range.
    """

    gamma: float = 0.99
    lr_actor: float = 1e-3
    lr_critic: float = 1e-3
    batch_size: int = 100
    total_steps: int = 20000
    warmup_steps: int = 1000
    tau: float = 0.005
    exploration_noise: float = 0.1
    policy_delay: int = 2
    target_noise: float = 0.2
    noise_clip: float = 0.5
    hidden: Tuple[int, ...] = (64, 64)
    optimizer: str = 'adam'
    eval_interval: int = 1000
    eval_episodes: int = 5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.gamma <= 1.0:
            raise ConfigError(f"gamma must lie in (0, 1], got {self.gamma}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.warmup_steps < 1:
            raise ConfigError(f"warmup must be >= 1, got {self.warmup_steps}")
        if self.warmup_steps > self.total_steps:
            raise ConfigError(
                f"warmup ({self.warmup_steps}) exceeds total steps ({self.total_steps})"
            )
        if not 0.0 < self.tau <= 1.0:
            raise ConfigError(f"tau must lie in (0, 1], got {self.tau}")
        if self.policy_delay < 1:
            raise ConfigError(f"policy_delay must be >= 1, got {self.policy_delay}")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(f"optimizer must be one of {OPTIMIZERS}, got '{self.optimizer}'")
        if self.eval_interval < 0 or self.eval_episodes < 1:
            raise ConfigError("eval_interval must be >= 0 and eval_episodes >= 1")
        if any(w < 1 for w in self.hidden):
            raise ConfigError(f"hidden widths must be positive, got {self.hidden}")
