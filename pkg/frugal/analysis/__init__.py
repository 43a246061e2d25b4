from .metrics import convergence_point, metric_deltas, pair_efficiency, summarize_run, translate_rewards
from .theory import (
    convergence_factor,
    duplicate_mass_function,
    empirical_entropy,
    entropy_brute_force,
    entropy_delta_brute_force,
    entropy_delta_closed_form,
    variance_ratio_experiment,
)
from .census import duplicate_census

__all__ = [
    'convergence_point',
    'metric_deltas',
    'pair_efficiency',
    'summarize_run',
    'translate_rewards',
    'convergence_factor',
    'duplicate_mass_function',
    'empirical_entropy',
    'entropy_brute_force',
    'entropy_delta_brute_force',
    'entropy_delta_closed_form',
    'variance_ratio_experiment',
    'duplicate_census',
]
