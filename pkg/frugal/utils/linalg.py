"""Column-pivoted Householder QR and significant-dimension selection."""

import logging

import numpy as np

from frugal.errors import DegenerateRollout, DomainError, NonFiniteInput, ShapeMismatch
from frugal.models import DimensionSelection, QrPivotResult

logger = logging.getLogger(__name__)


def as_matrix(a):
    """Coerce to a 2-D float64 array and reject NaN/Inf."""
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise NonFiniteInput("matrix contains NaN or Inf")
    return a


def _pick_pivot(r, perm, k):
    """Index (>= k) of the remaining column with the largest trailing norm.

    Exact ties go to the lowest original column index.
    """
    norms = np.einsum('ij,ij->j', r[k:, k:], r[k:, k:])
    best = norms.max()
    candidates = np.flatnonzero(norms == best) + k
    return int(candidates[np.argmin(perm[candidates])])


def qr_column_pivot(a, compute_q=True):
    """Businger-Golub QR with column pivoting: a[:, perm] == q @ r.

    q is the full rows x rows orthogonal factor (None when compute_q is
    false), r is rows x cols upper-trapezoidal with |diag(r)| non-increasing.
    """
    r = as_matrix(a)
    m, n = r.shape
    perm = np.arange(n)
    q = np.eye(m) if compute_q else None

    for k in range(min(m, n)):
        j = _pick_pivot(r, perm, k)
        if j != k:
            r[:, [k, j]] = r[:, [j, k]]
            perm[[k, j]] = perm[[j, k]]

        if k == m - 1:
            break

        x = r[k:, k]
        normx = np.linalg.norm(x)
        if normx == 0.0:
            # every remaining column is zero
            break

        v = x.copy()
        v[0] += normx if x[0] >= 0 else -normx
        v /= np.linalg.norm(v)

        r[k:, k:] -= 2.0 * np.outer(v, v @ r[k:, k:])
        r[k + 1:, k] = 0.0
        if q is not None:
            q[:, k:] -= 2.0 * np.outer(q[:, k:] @ v, v)

    return QrPivotResult(q=q, r=r, perm=perm)


def find_important_dimensions(omega, nu):
    """Select the state dimensions whose pivot is at least nu times the largest.

    Columns are mean-centred but not rescaled. Indices are original state
    dimensions listed in pivot order. Raises DegenerateRollout when every
    column is constant; callers fall back to all dimensions.
    """
    if not 0.0 < nu < 1.0:
        raise DomainError(f"nu must lie in (0, 1), got {nu}")

    omega = as_matrix(omega)
    if omega.shape[0] < 2:
        raise DegenerateRollout(f"rollout needs at least 2 rows, got {omega.shape[0]}")

    centered = omega - omega.mean(axis=0)
    if not np.any(centered):
        raise DegenerateRollout("every rollout column is constant")

    result = qr_column_pivot(centered, compute_q=False)
    pivots = result.pivots
    threshold = nu * pivots[0]

    count = 1
    while count < len(pivots) and pivots[count] >= threshold:
        count += 1

    kappa = tuple(int(i) for i in result.perm[:count])
    selection = DimensionSelection(kappa=kappa, pivots=tuple(float(p) for p in pivots[:count]))
    logger.info("Selected %d of %d state dimensions: %s", count, omega.shape[1], list(kappa))
    return selection
