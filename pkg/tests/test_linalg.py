import numpy as np
import pytest

from frugal.errors import DegenerateRollout, DomainError, NonFiniteInput
from frugal.models import DimensionSelection
from frugal.utils.linalg import find_important_dimensions, qr_column_pivot
from frugal.utils.oracles import gram_schmidt


def test_identity():
    res = qr_column_pivot(np.eye(3))
    np.testing.assert_allclose(res.pivots, [1.0, 1.0, 1.0])
    assert sorted(res.perm) == [0, 1, 2]


def test_exact_ties_prefer_lower_column():
    res = qr_column_pivot(np.eye(3))
    assert list(res.perm) == [0, 1, 2]


def test_rank_one_detected():
    c = np.array([1.0, 2.0, 3.0])
    res = qr_column_pivot(np.column_stack([c, 2 * c]))
    assert res.pivots[1] <= 1e-12
    # the larger column pivots first
    assert res.perm[0] == 1


def test_reconstruction_against_gram_schmidt(rng):
    a = rng.normal(size=(50, 6))
    res = qr_column_pivot(a)

    assert np.abs(a[:, res.perm] - res.q @ res.r).max() <= 1e-9
    np.testing.assert_allclose(res.q.T @ res.q, np.eye(50), atol=1e-10)
    assert np.all(np.diff(res.pivots) <= 1e-12)

    q_gs, r_gs = gram_schmidt(a[:, res.perm])
    np.testing.assert_allclose(np.abs(np.diag(r_gs)), res.pivots, rtol=1e-9)
    np.testing.assert_allclose(q_gs @ r_gs, a[:, res.perm], atol=1e-9)


@pytest.mark.parametrize("shape", [(3, 5), (1, 4), (6, 1), (20, 20)])
def test_non_square_shapes(rng, shape):
    a = rng.normal(size=shape)
    res = qr_column_pivot(a)
    assert res.r.shape == shape
    assert np.allclose(np.tril(res.r, -1), 0.0)
    assert np.abs(a[:, res.perm] - res.q @ res.r).max() <= 1e-9


def test_without_q():
    res = qr_column_pivot(np.arange(12.0).reshape(4, 3), compute_q=False)
    assert res.q is None


def test_rejects_non_finite():
    with pytest.raises(NonFiniteInput):
        qr_column_pivot([[1.0, np.nan], [0.0, 1.0]])


def test_duplicate_columns_never_both_selected(rng):
    x = rng.normal(size=200)
    y = rng.normal(size=200)
    omega = np.column_stack([x, x, y])
    sel = find_important_dimensions(omega, 0.5)
    assert len(sel.kappa) <= 2
    assert not {0, 1} <= set(sel.kappa)


def test_independent_subspace_selected(rng):
    base = rng.normal(size=(1000, 4))
    mixed = 0.5 * (base + np.roll(base, 1, axis=1))
    omega = np.hstack([base, mixed])

    sel = find_important_dimensions(omega, 0.5)

    assert len(sel.kappa) == 4
    assert np.linalg.matrix_rank(omega[:, list(sel.kappa)]) == 4
    assert list(sel.pivots) == sorted(sel.pivots, reverse=True)


def test_scale_dominates_selection(rng):
    omega = np.column_stack([rng.normal(size=500), 10.0 * rng.normal(size=500)])
    assert find_important_dimensions(omega, 0.5).kappa == (1,)


def _spread_rollout(rng):
    scales = np.array([3.0, 1.0, 0.6, 0.35, 0.2, 0.1])
    return rng.normal(size=(400, 6)) * scales


def test_selection_shrinks_as_nu_grows(rng):
    omega = _spread_rollout(rng)
    selections = [find_important_dimensions(omega, nu).kappa for nu in np.linspace(0.05, 0.95, 19)]
    for looser, tighter in zip(selections, selections[1:]):
        assert set(tighter) <= set(looser)
        assert looser[:len(tighter)] == tighter
    assert len(selections[0]) > len(selections[-1]) >= 1


@pytest.mark.parametrize("factor", [1024.0, 1.0 / 1024.0, 3.7, 1e-6])
def test_selection_ignores_common_scale(rng, factor):
    omega = _spread_rollout(rng)
    for nu in (0.1, 0.3, 0.5, 0.8):
        assert find_important_dimensions(factor * omega, nu).kappa == find_important_dimensions(omega, nu).kappa


def test_selection_ignores_offset(rng):
    omega = _spread_rollout(rng)
    assert find_important_dimensions(omega + 50.0, 0.5).kappa == find_important_dimensions(omega, 0.5).kappa


def test_all_dimensions_has_no_pivots():
    sel = DimensionSelection.all_dimensions(3)
    assert sel.kappa == (0, 1, 2)
    assert sel.pivots == ()


@pytest.mark.parametrize("nu", [0.0, 1.0, -0.5, 2.0])
def test_nu_out_of_range(nu):
    with pytest.raises(DomainError):
        find_important_dimensions(np.eye(3), nu)


def test_constant_rollout_is_degenerate():
    with pytest.raises(DegenerateRollout):
        find_important_dimensions(np.ones((10, 3)), 0.5)


def test_single_row_is_degenerate():
    with pytest.raises(DegenerateRollout):
        find_important_dimensions(np.ones((1, 3)), 0.5)
