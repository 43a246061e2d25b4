import numpy as np
import pytest

from frugal.errors import ConfigError, NonFiniteState, ShapeMismatch
from frugal.models import DimensionSelection, PartitionSpec
from frugal.utils.oracles import nearest_cell
from frugal.utils.partition import StateMapper, build_partition, map_state


def test_padding_rule():
    omega = np.linspace(-1.0, 1.0, 101)[:, None]
    spec = build_partition(omega, DimensionSelection.all_dimensions(1), mu=50)

    np.testing.assert_allclose(spec.lower, [-1.02])
    np.testing.assert_allclose(spec.upper, [1.02])
    np.testing.assert_allclose(spec.widths, [0.0408])
    assert spec.cell_count == 50


def test_zero_range_column():
    omega = np.column_stack([np.full(10, 3.0), np.arange(10.0)])
    spec = build_partition(omega, DimensionSelection((0, 1), (1.0, 1.0)), mu=(5, 10))
    assert spec.lower[0] == 2.0 and spec.upper[0] == 4.0
    assert spec.mu == (5, 10)


def test_mu_length_mismatch():
    omega = np.random.default_rng(0).normal(size=(10, 3))
    with pytest.raises(ShapeMismatch):
        build_partition(omega, DimensionSelection((0, 1), (1.0, 1.0)), mu=(5, 10, 2))


def test_huge_grid_is_never_materialised():
    spec = PartitionSpec(kappa=tuple(range(5)), lower=(0.0,) * 5, upper=(1.0,) * 5, mu=(50,) * 5)
    assert spec.cell_count == 50 ** 5
    assert map_state(spec, np.full(5, 0.999)) == (49,) * 5


def test_center_maps_to_own_cell():
    spec = PartitionSpec(kappa=(0,), lower=(-1.0,), upper=(1.0,), mu=(50,))
    assert map_state(spec, [spec.centers(0)[7]]) == (7,)


def test_out_of_range_clamps(unit_spec):
    assert map_state(unit_spec, [-5.0]) == (0,)
    assert map_state(unit_spec, [5.0]) == (3,)
    assert map_state(unit_spec, [1.0]) == (3,)


def test_shared_boundary_goes_to_upper_cell(unit_spec):
    assert map_state(unit_spec, [0.5]) == (2,)
    assert nearest_cell(unit_spec, [0.5]) == (2,)


def test_reads_only_selected_dimensions():
    spec = PartitionSpec(kappa=(2,), lower=(0.0,), upper=(1.0,), mu=(10,))
    assert map_state(spec, [np.inf, -7.0, 0.55]) == (5,)


def test_vectorised_matches_argmin(rng):
    spec = PartitionSpec(kappa=(1, 0), lower=(-2.0, 0.0), upper=(2.0, 3.0), mu=(13, 6))
    states = rng.uniform(-3.0, 4.0, size=(2000, 2))
    cells = StateMapper(spec).cells(states)
    for state, cell in zip(states, cells):
        assert tuple(cell) == nearest_cell(spec, state)


def test_non_finite_state(unit_spec):
    with pytest.raises(NonFiniteState):
        map_state(unit_spec, [np.nan])


def test_state_too_short():
    spec = PartitionSpec(kappa=(3,), lower=(0.0,), upper=(1.0,), mu=(2,))
    with pytest.raises(ShapeMismatch):
        map_state(spec, [0.0, 0.0])


@pytest.mark.parametrize("kwargs", [
    dict(kappa=(0,), lower=(1.0,), upper=(1.0,), mu=(3,)),
    dict(kappa=(0,), lower=(0.0,), upper=(1.0,), mu=(0,)),
    dict(kappa=(0, 1), lower=(0.0,), upper=(1.0,), mu=(3,)),
    dict(kappa=(), lower=(), upper=(), mu=()),
])
def test_invalid_specs(kwargs):
    with pytest.raises(ConfigError):
        PartitionSpec(**kwargs)
