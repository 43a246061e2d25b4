"""Independent reference computations used by the tests and `fac.py selftest`.

Each oracle recomputes a quantity the slow, obvious way so the production
code path can be checked against it.
"""

import numpy as np
from scipy import integrate

from frugal.utils import density


def quad_rde(r, rewards, cfg):
    """Adaptive quadrature of the cell KDE over [r - beta, r + beta]."""
    rewards = np.asarray(rewards, dtype=np.float64)
    if rewards.size == 0:
        return 0.0
    lo, hi = r - cfg.beta, r + cfg.beta
    h = cfg.bandwidth
    # kinks of the piecewise-quadratic integrand inside the window
    kinks = np.concatenate([rewards - h, rewards + h])
    kinks = np.unique(kinks[(kinks > lo) & (kinks < hi)])

    def integrand(y):
        return density.kde_density(y, rewards, h, normalized=cfg.normalized)

    value, _ = integrate.quad(integrand, lo, hi, points=kinks if kinks.size else None,
                              epsabs=1e-13, epsrel=1e-12, limit=4 * kinks.size + 50)
    return value


def kernel_mass(h):
    """Integral of the kernel over its support."""
    value, _ = integrate.quad(lambda u: density.kernel_eval(u, h), -h, h,
                              epsabs=1e-14, epsrel=1e-12)
    return value


def gram_schmidt(a):
    """Modified Gram-Schmidt thin QR of a full-column-rank matrix."""
    a = np.asarray(a, dtype=np.float64)
    m, n = a.shape
    q = np.zeros((m, n))
    r = np.zeros((n, n))
    for j in range(n):
        v = a[:, j].copy()
        for i in range(j):
            r[i, j] = q[:, i] @ v
            v -= r[i, j] * q[:, i]
        r[j, j] = np.linalg.norm(v)
        q[:, j] = v / r[j, j]
    return q, r


def finite_difference(f, params, step=1e-5):
    """Central differences of scalar f() w.r.t. every entry of each array."""
    grads = []
    for p in params:
        g = np.zeros_like(p)
        it = np.nditer(p, flags=['multi_index'])
        for _ in it:
            idx = it.multi_index
            saved = p[idx]
            p[idx] = saved + step
            up = f()
            p[idx] = saved - step
            down = f()
            p[idx] = saved
            g[idx] = (up - down) / (2.0 * step)
        grads.append(g)
    return grads


def relative_error(analytic, numeric):
    """Largest per-array relative error across matching gradient lists."""
    worst = 0.0
    for a, n in zip(analytic, numeric):
        scale = max(np.linalg.norm(a) + np.linalg.norm(n), 1e-12)
        worst = max(worst, float(np.linalg.norm(a - n) / scale))
    return worst


def nearest_cell(spec, state):
    """Arg-min over cell centres per selected dimension; ties go to the upper cell."""
    state = np.asarray(state, dtype=np.float64)
    cell = []
    for d, k in enumerate(spec.kappa):
        distance = np.abs(spec.centers(d) - state[k])
        # reversed argmin picks the last (upper) index among equals
        cell.append(len(distance) - 1 - int(np.argmin(distance[::-1])))
    return tuple(cell)


def suffix_convergence_point(eval_curve):
    """Try every suffix start; first one whose values all sit in the band."""
    values = np.asarray([v for _, v in eval_curve], dtype=np.float64)
    shifted = values - values.min()
    floor = 0.9 * shifted.max()
    for i, (step, _) in enumerate(eval_curve):
        if all(shifted[j] >= floor for j in range(i, len(values))):
            return step
    return eval_curve[-1][0]
