"""Diagnostics for the entropy and minibatch-variance arguments."""

import math
from collections import Counter

import numpy as np

from frugal.errors import DomainError, NotADistribution


def entropy_delta_closed_form(m, lam):
    """(lam + 1) * ln(lam + 1) / m: entropy gained by removing lam duplicates."""
    if m <= 2 or not 0 <= lam < m:
        raise DomainError(f"need m > 2 and 0 <= lambda < m, got m={m}, lambda={lam}")
    return (lam + 1) * math.log(lam + 1) / m


def entropy_brute_force(mass_function):
    """-sum p ln p with 0 ln 0 = 0."""
    p = np.asarray(mass_function, dtype=np.float64)
    if p.ndim != 1 or p.size == 0 or (p < 0).any() or abs(p.sum() - 1.0) > 1e-12:
        raise NotADistribution("probabilities must be non-negative and sum to 1")
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def duplicate_mass_function(m, lam):
    """Buffer of m samples where lam + 1 are copies of one element."""
    if m <= 2 or not 0 <= lam < m:
        raise DomainError(f"need m > 2 and 0 <= lambda < m, got m={m}, lambda={lam}")
    return np.array([(lam + 1) / m] + [1.0 / m] * (m - lam - 1))


def entropy_delta_brute_force(m, lam):
    """H(all distinct) - H(with duplicates), evaluated directly."""
    return entropy_brute_force(np.full(m, 1.0 / m)) - entropy_brute_force(duplicate_mass_function(m, lam))


def convergence_factor(b, zeta):
    return (b + zeta ** 2 + zeta) / b


def variance_ratio_experiment(b, zeta, trials, seed, sigma=1.0, chunk=4096):
    """Variance of duplicated vs all-distinct minibatch mean gradients.

    A duplicated minibatch holds zeta + 1 copies of one draw and b - zeta - 1
    fresh draws. Expected ratio is (b + zeta^2 + zeta) / b.
    """
    if not 0 <= zeta < b:
        raise DomainError(f"need 0 <= zeta < b, got b={b}, zeta={zeta}")
    if trials < 10_000:
        raise DomainError(f"need at least 10^4 trials, got {trials}")

    rng = np.random.default_rng(seed)
    sums = np.zeros(2)
    squares = np.zeros(2)
    done = 0
    while done < trials:
        n = min(chunk, trials - done)
        distinct = rng.normal(0.0, sigma, size=(n, b)).mean(axis=1)
        draws = rng.normal(0.0, sigma, size=(n, b - zeta))
        duplicated = (zeta * draws[:, 0] + draws.sum(axis=1)) / b
        for i, means in enumerate((duplicated, distinct)):
            sums[i] += means.sum()
            squares[i] += (means ** 2).sum()
        done += n

    variances = squares / trials - (sums / trials) ** 2
    return float(variances[0] / variances[1])


def empirical_entropy(transitions):
    """Entropy of the empirical distribution over distinct transitions."""
    counts = Counter(t.key() for t in transitions)
    total = sum(counts.values())
    if total == 0:
        return 0.0
    return entropy_brute_force(np.array(list(counts.values()), dtype=np.float64) / total)
