"""Oracle suite: every closed form checked against an independent computation."""

import logging
import sys
import time
from contextlib import contextmanager

import numpy as np

from frugal.analysis import (
    convergence_factor,
    convergence_point,
    entropy_delta_brute_force,
    entropy_delta_closed_form,
    metric_deltas,
    variance_ratio_experiment,
)
from frugal.learner.mlp import OUTPUT_TANH, Mlp
from frugal.models import GateConfig, MetricsRow, PartitionSpec
from frugal.utils import density, oracles
from frugal.utils.linalg import find_important_dimensions, qr_column_pivot
from frugal.utils.partition import StateMapper

logger = logging.getLogger(__name__)

ORACLES = []


def oracle(name):
    def decorator(f):
        ORACLES.append((name, f))
        return f
    return decorator


@contextmanager
def perturbed_kernel(scale=0.8):
    """Mutation hook: temporarily corrupt the kernel's peak coefficient."""
    saved = density.KERNEL_SCALE
    density.KERNEL_SCALE = scale
    try:
        yield
    finally:
        density.KERNEL_SCALE = saved


@oracle('density.rde_quadrature')
def check_rde(rng, full):
    cfg = GateConfig()
    worked = density.rde(0.3, [0.0], cfg)
    if abs(worked - 0.15625) > 1e-12:
        return False, f"worked example gave {worked!r}, expected 0.15625"

    for h in (0.05, 0.2, 1.0):
        mass = oracles.kernel_mass(h)
        if abs(mass - 1.0) > 1e-9:
            return False, f"kernel with h={h} integrates to {mass!r}"

    worst = 0.0
    for _ in range(10_000 if full else 2_000):
        rewards = rng.uniform(-1.0, 1.0, size=rng.integers(0, 51))
        r = rng.uniform(-1.2, 1.2)
        worst = max(worst, abs(density.rde(r, rewards, cfg) - oracles.quad_rde(r, rewards, cfg)))
    return worst <= 1e-9, f"max |closed form - quadrature| = {worst:.2e}"


@oracle('linalg.qr_reconstruction')
def check_qr(rng, full):
    worst = 0.0
    shapes = [(50, 6), (200, 20), (3, 5), (1, 4)]
    shapes += [(int(rng.integers(1, 201)), int(rng.integers(1, 21))) for _ in range(100 if full else 20)]
    for m, n in shapes:
        a = rng.normal(size=(m, n))
        res = qr_column_pivot(a)
        scale = np.abs(a).max()
        err = np.abs(a[:, res.perm] - res.q @ res.r).max() / scale
        ortho = np.abs(res.q.T @ res.q - np.eye(m)).max()
        piv = res.pivots
        if err > 1e-9 or ortho > 1e-10 or np.any(np.diff(piv) > 1e-12 * scale):
            return False, f"{m}x{n}: reconstruction {err:.1e}, orthogonality {ortho:.1e}"
        if m >= n:
            _, r_gs = oracles.gram_schmidt(a[:, res.perm])
            gap = np.abs(np.abs(np.diag(r_gs)) - piv).max() / scale
            if gap > 1e-8:
                return False, f"{m}x{n}: pivots differ from Gram-Schmidt by {gap:.1e}"
        worst = max(worst, err)
    return True, f"{len(shapes)} matrices, worst relative reconstruction {worst:.1e}"


@oracle('linalg.rank_selection')
def check_rank_selection(rng, full):
    trials = 100 if full else 20
    hits = 0
    for _ in range(trials):
        base = rng.normal(size=(1000, 4))
        mixed = 0.5 * (base + np.roll(base, 1, axis=1))
        omega = np.hstack([base, mixed]) + rng.normal(scale=1e-6, size=(1000, 8))
        sel = find_important_dimensions(omega, 0.5)
        if len(sel.kappa) == 4 and np.linalg.matrix_rank(omega[:, list(sel.kappa)], tol=1e-3) == 4:
            hits += 1
    return hits >= 0.95 * trials, f"{hits}/{trials} trials selected the 4 independent directions"


@oracle('learner.finite_difference')
def check_gradients(rng, full):
    worst = 0.0
    for _ in range(5 if full else 2):
        x = rng.normal(size=(7, 4))
        upstream = rng.normal(size=(7, 2))
        for output in ('identity', OUTPUT_TANH):
            net = Mlp.create([4, 6, 5, 2], rng, output=output, scale=[2.0, 0.5], final_init=0.5)
            grads, dx = net.gradient(x, upstream)
            numeric = oracles.finite_difference(lambda: float(np.sum(upstream * net.forward(x))),
                                                net.parameters())
            numeric_dx = oracles.finite_difference(lambda: float(np.sum(upstream * net.forward(x))), [x])
            worst = max(worst, oracles.relative_error(grads, numeric),
                        oracles.relative_error([dx], numeric_dx))
    return worst <= 1e-4, f"max relative error {worst:.1e}"


@oracle('analysis.entropy')
def check_entropy(rng, full):
    ms = range(3, 1001) if full else (4, 10, 100, 1000)
    worst = 0.0
    for m in ms:
        for lam in sorted({0, 1, 2, 3, m // 2, m - 2} & set(range(m))):
            worst = max(worst, abs(entropy_delta_closed_form(m, lam) - entropy_delta_brute_force(m, lam)))
    return worst <= 1e-12, f"max |closed form - brute force| = {worst:.1e}"


@oracle('analysis.convergence_suffix')
def check_convergence(rng, full):
    for i in range(1000 if full else 200):
        n = int(rng.integers(1, 30))
        values = rng.normal(size=n).cumsum() * rng.uniform(0.1, 100) - rng.uniform(0, 500)
        curve = [(1000 * (j + 1), float(v)) for j, v in enumerate(values)]
        got, want = convergence_point(curve), oracles.suffix_convergence_point(curve)
        if got != want:
            return False, f"curve {i}: got {got}, exhaustive scan says {want}"
    return True, "all random curves agree with the suffix scan"


@oracle('analysis.variance_ratio')
def check_variance(rng, full):
    trials = 100_000 if full else 20_000
    details = []
    ok = True
    for b, zeta in ((32, 4), (64, 8), (256, 16)):
        measured = variance_ratio_experiment(b, zeta, trials, int(rng.integers(2 ** 31)))
        expected = convergence_factor(b, zeta)
        ok &= abs(measured / expected - 1.0) <= 0.15
        details.append(f"b={b} zeta={zeta}: {measured:.3f} vs {expected:.3f}")
    return ok, '; '.join(details)


@oracle('partition.grid_argmin')
def check_grid(rng, full):
    spec = PartitionSpec(kappa=(2, 0), lower=(-1.0, 0.0), upper=(1.5, 4.0), mu=(50, 7))
    mapper = StateMapper(spec)
    points = rng.uniform(-2.0, 5.0, size=(10_000, 3))
    got = mapper.cells(points)
    for point, cell in zip(points, got):
        if tuple(int(c) for c in cell) != oracles.nearest_cell(spec, point):
            return False, f"state {point} maps to {tuple(cell)}"
    boundary = PartitionSpec(kappa=(0,), lower=(0.0,), upper=(1.0,), mu=(4,))
    if StateMapper(boundary)((0.5,)) != (2,) or oracles.nearest_cell(boundary, (0.5,)) != (2,):
        return False, "shared boundary 0.5 should belong to cell 2"
    return True, f"{len(points)} states agree with the nearest-centre scan"


@oracle('analysis.table_replay')
def check_table(rng, full):
    def row(cp, size, reward):
        return MetricsRow('x', 'env', 'sac', 'b', 0, cp, size, reward, 0.0)

    pendulum = metric_deltas(row(1, 20000, -143.97), row(1, 11412, -144.66))
    car = metric_deltas(row(30696, 1, 1.0), row(23089, 1, 1.0))
    ok = (round(pendulum.delta_buf, 2) == 42.94 and abs(pendulum.p - 1.75) <= 0.02
          and round(car.delta_cp, 2) == 24.78)
    return ok, (f"delta_buf={pendulum.delta_buf:.2f} p={pendulum.p:.3f} "
                f"delta_cp={car.delta_cp:.2f}")


def register(subparsers):
    parser = subparsers.add_parser('selftest', help="run the oracle suite")
    parser.add_argument('--filter', default='', help="only oracles whose name contains this text")
    parser.add_argument('--full', action='store_true', help="acceptance-size sample counts")
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--perturb-kernel', action='store_true',
                        help="corrupt the kernel constant (the RDE oracle must fail)")
    parser.set_defaults(handler=cmd_selftest)
    return parser


def run_oracles(name_filter='', full=False, seed=0):
    """[(name, passed, detail)] for every matching oracle."""
    results = []
    for name, check in ORACLES:
        if name_filter not in name:
            continue
        rng = np.random.default_rng(seed)
        started = time.perf_counter()
        try:
            passed, detail = check(rng, full)
        except Exception as e:  # an oracle that crashes is a failed oracle
            passed, detail = False, f"{type(e).__name__}: {e}"
        logger.debug("%s took %.2fs", name, time.perf_counter() - started)
        results.append((name, bool(passed), detail))
    return results


def cmd_selftest(args):
    if args.perturb_kernel:
        with perturbed_kernel():
            results = run_oracles(args.filter, args.full, args.seed)
    else:
        results = run_oracles(args.filter, args.full, args.seed)

    if not results:
        print(f"❌ No oracle matches '{args.filter}'", file=sys.stderr)
        return 1

    for name, passed, detail in results:
        print(f"{'✅' if passed else '❌'} {name}: {detail}")

    failed = [name for name, passed, _ in results if not passed]
    print(f"\n{len(results) - len(failed)}/{len(results)} oracles passed")
    return 1 if failed else 0
