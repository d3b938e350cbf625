import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsc.errors import NumericsError
from qsc.hermite import build_basis_table
from qsc.state import (DensityProfile, Grid, canonical_theta, default_grid,
                       eval_density, make_state, rotate)
from conftest import INV_SQRT2, fock


def test_grid_symmetry_is_exact():
    grid = Grid(extent=7.5, count=4096)
    assert np.array_equal(grid.points, -grid.points[::-1])
    assert grid.points[0] == -7.5 and grid.points[-1] == 7.5
    assert grid.dx == pytest.approx(15.0 / 4095)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(extent=0.0, count=16)
    with pytest.raises(ValueError):
        Grid(extent=1.0, count=1)


def test_canonical_theta():
    assert canonical_theta(0.0) == 0.0
    assert canonical_theta(math.pi) == 0.0
    assert canonical_theta(-0.1) == pytest.approx(math.pi - 0.1)
    assert canonical_theta(4.0) == pytest.approx(4.0 - math.pi)


def test_make_state_requires_unit_norm():
    with pytest.raises(ValueError, match="renormalize"):
        make_state([1.0, 1.0])
    st_ = make_state([1.0, 1.0], renormalize=True)
    np.testing.assert_allclose(st_.coeffs, [INV_SQRT2, INV_SQRT2])
    assert st_.norm == pytest.approx(1.0, abs=1e-15)


def test_make_state_rejects_zero_vector():
    with pytest.raises(ValueError, match="zero"):
        make_state([0.0, 0.0], renormalize=True)


def test_state_is_immutable():
    st_ = fock(2)
    with pytest.raises(ValueError):
        st_.coeffs[0] = 1.0


def test_trailing_weight():
    assert fock(3).trailing_weight == 1.0
    assert make_state([INV_SQRT2, 0, INV_SQRT2]).trailing_weight == pytest.approx(0.5)


def test_rotate_half_turn_conjugates_superposition():
    plus = make_state([INV_SQRT2, 0.0, INV_SQRT2])
    minus = rotate(plus, math.pi / 2)
    np.testing.assert_allclose(minus.coeffs, [INV_SQRT2, 0.0, -INV_SQRT2],
                               atol=1e-15)


def test_rotate_identity():
    st_ = make_state([0.6, 0.8j], renormalize=True)
    np.testing.assert_array_equal(rotate(st_, 0.0).coeffs, st_.coeffs)


def test_rotated_eigenstate_density_unchanged():
    # a basis state only acquires a global phase
    grid = default_grid(3, grid_points=512)
    table = build_basis_table(3, grid)
    base = eval_density(fock(3), 0.0, grid, table)
    turned = eval_density(fock(3), 1.234, grid, table)
    np.testing.assert_allclose(turned.rho, base.rho, atol=1e-14)


@given(alpha=st.floats(-6.0, 6.0), beta=st.floats(-6.0, 6.0))
@settings(max_examples=50, deadline=None)
def test_rotation_composition(alpha, beta):
    st_ = make_state([0.5, 0.5, 0.5, 0.5])
    once = rotate(rotate(st_, alpha), beta)
    joint = rotate(st_, alpha + beta)
    np.testing.assert_allclose(once.coeffs, joint.coeffs, atol=1e-14)


def test_vacuum_density_is_gaussian():
    grid = default_grid(0)
    table = build_basis_table(0, grid)
    prof = eval_density(fock(0), 0.0, grid, table)
    expected = np.exp(-grid.points ** 2) / math.sqrt(math.pi)
    np.testing.assert_allclose(prof.rho, expected, atol=1e-12)


@pytest.mark.parametrize("theta", [0.0, 0.4, math.pi / 2, 2.9])
def test_density_mass_is_one(theta):
    st_ = make_state([INV_SQRT2, 0.0, INV_SQRT2])
    grid = default_grid(2)
    table = build_basis_table(2, grid)
    assert eval_density(st_, theta, grid, table).mass() == pytest.approx(1.0, abs=1e-8)


def test_excited_node_survives_rotation():
    # odd-count grid puts a point exactly at the origin
    grid = default_grid(1, grid_points=4097)
    table = build_basis_table(1, grid)
    prof = eval_density(fock(1), math.pi / 3, grid, table)
    assert prof.rho[2048] == 0.0


def test_pi_shift_reflects_density():
    st_ = make_state(np.array([0.5, 0.5j, 0.5, -0.5]), renormalize=True)
    grid = default_grid(3, grid_points=1024)
    table = build_basis_table(3, grid)
    a = eval_density(st_, 0.7, grid, table)
    b = eval_density(st_, 0.7 + math.pi, grid, table)
    np.testing.assert_allclose(b.rho, a.rho[::-1], atol=1e-12)


def test_norm_conservation_random_states():
    rng = np.random.default_rng(42)
    grid = default_grid(12)
    table = build_basis_table(12, grid)
    thetas = np.linspace(0.0, math.pi, 10, endpoint=False)
    for _ in range(100):
        raw = rng.normal(size=13) + 1j * rng.normal(size=13)
        st_ = make_state(raw, renormalize=True)
        for theta in thetas:
            assert eval_density(st_, theta, grid, table).mass() == pytest.approx(
                1.0, abs=1e-8)


def test_drho_matches_finite_differences():
    # fine spacing keeps the O(h^2) difference error below the tolerance
    st_ = make_state([0.3, 0.5, 0.2, 0.7, 0.1], renormalize=True)
    grid = Grid(extent=6.0, count=64001)
    table = build_basis_table(4, grid)
    prof = eval_density(st_, 1.1, grid, table)
    fd = np.gradient(prof.rho, grid.dx)
    np.testing.assert_allclose(prof.drho[5:-5], fd[5:-5], atol=1e-6)


def test_eval_density_dimension_checks():
    grid = default_grid(1)
    table = build_basis_table(1, grid)
    with pytest.raises(NumericsError):
        eval_density(fock(3), 0.0, grid, table)
    other = default_grid(3, grid_points=512)
    with pytest.raises(NumericsError):
        eval_density(fock(1), 0.0, other, table)


def test_profile_from_samples():
    grid = Grid(extent=2.0, count=801)
    rho = np.where(np.abs(grid.points) <= 1.0, 0.5, 0.0)
    prof = DensityProfile.from_samples(grid, rho)
    # the sampled jump overshoots the exact mass by about half a cell
    assert prof.mass() == pytest.approx(1.0, abs=5e-3)
    assert prof.dpsi_abs2 is None
    assert np.any(prof.drho != 0.0)
    with pytest.raises(ValueError):
        DensityProfile.from_samples(grid, rho[:100])
