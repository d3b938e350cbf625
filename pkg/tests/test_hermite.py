import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsc.errors import NumericsError
from qsc.hermite import build_basis_table, hermite_fn, hermite_fn_derivative, tabulate
from qsc.state import Grid, default_grid

PI4 = math.pi ** -0.25

# frozen from a 30-digit mpmath evaluation of the closed form
ORACLE_VALUES = {
    (1, 1.0): 0.64428836511347518,
    (7, 2.5): -0.19825280491742293,
    (50, 3.7): -0.051686678508137491,
    (200, 15.0): 0.13205466913907389,
    (1000, 40.0): 0.17225052073279227,
}


def mp_hermite_fn(n, x):
    with mp.workdps(30):
        val = (1 / mp.sqrt(mp.mpf(2) ** n * mp.factorial(n) * mp.sqrt(mp.pi))
               * mp.e ** (-mp.mpf(x) ** 2 / 2) * mp.hermite(n, mp.mpf(x)))
        return float(val)


def test_ground_state_value():
    assert hermite_fn(0, 0.0) == pytest.approx(PI4, rel=1e-12)


def test_odd_parity_node():
    assert hermite_fn(1, 0.0) == 0.0


@pytest.mark.parametrize("key,expected", sorted(ORACLE_VALUES.items()))
def test_frozen_oracle_values(key, expected):
    n, x = key
    assert hermite_fn(n, x) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("n,x", [(3, 0.31), (12, -4.2), (77, 6.25), (150, 1.0)])
def test_against_live_oracle(n, x):
    assert hermite_fn(n, x) == pytest.approx(mp_hermite_fn(n, x), rel=1e-11, abs=1e-250)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        hermite_fn(-1, 0.0)
    with pytest.raises(ValueError):
        hermite_fn_derivative(-2, 0.0)


def test_derivative_at_origin():
    assert hermite_fn_derivative(0, 0.0) == 0.0
    assert hermite_fn_derivative(1, 0.0) == pytest.approx(math.sqrt(2.0) * PI4, rel=1e-12)


def test_derivative_ground_state_slope():
    # u_0' = -x u_0
    assert hermite_fn_derivative(0, 1.0) == pytest.approx(-hermite_fn(0, 1.0), rel=1e-12)
    assert hermite_fn_derivative(0, 1.0) == pytest.approx(-0.455580672, rel=1e-8)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 17, 50])
def test_derivative_matches_finite_difference(n):
    h = 1e-5
    for x in np.linspace(-10.0, 10.0, 41):
        fd = (hermite_fn(n, x + h) - hermite_fn(n, x - h)) / (2 * h)
        assert hermite_fn_derivative(n, x) == pytest.approx(fd, abs=1e-7)


@given(x=st.floats(-10.0, 10.0), n=st.integers(0, 40))
@settings(max_examples=60, deadline=None)
def test_ladder_identity_property(n, x):
    lhs = hermite_fn_derivative(n, x)
    rhs = (math.sqrt(n / 2.0) * (hermite_fn(n - 1, x) if n else 0.0)
           - math.sqrt((n + 1) / 2.0) * hermite_fn(n + 1, x))
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_table_three_point_grid():
    table = build_basis_table(0, Grid(extent=1.0, count=3))
    np.testing.assert_allclose(table.values[0],
                               [0.455580672, 0.751125544, 0.455580672],
                               rtol=1e-8)


def test_table_parity_exact():
    grid = Grid(extent=8.0, count=256)
    table = build_basis_table(6, grid)
    for n in range(7):
        sign = (-1) ** n
        assert np.array_equal(table.values[n], sign * table.values[n][::-1])


def test_table_matches_pointwise_recurrence():
    grid = Grid(extent=9.0, count=129)
    table = build_basis_table(25, grid)
    for n in (0, 1, 13, 25):
        expected = hermite_fn(n, grid.points)
        np.testing.assert_allclose(table.values[n], expected, rtol=1e-12, atol=1e-300)
        np.testing.assert_allclose(table.derivs[n],
                                   hermite_fn_derivative(n, grid.points),
                                   rtol=1e-12, atol=1e-300)


def test_table_ladder_identity():
    grid = default_grid(32, grid_points=512)
    table = build_basis_table(32, grid)
    for n in range(32):
        lower = table.values[n - 1] if n else np.zeros(grid.count)
        ladder = (math.sqrt(n / 2.0) * lower
                  - math.sqrt((n + 1) / 2.0) * table.values[n + 1])
        np.testing.assert_allclose(table.derivs[n], ladder, atol=1e-10)


def test_table_row_norms():
    grid = default_grid(10)
    table = build_basis_table(10, grid)
    for n in range(11):
        norm = np.trapezoid(table.values[n] ** 2, dx=grid.dx)
        assert norm == pytest.approx(1.0, abs=1e-8)


def test_orthonormality():
    grid = default_grid(40)
    table = build_basis_table(40, grid)
    w = np.full(grid.count, grid.dx)
    w[0] = w[-1] = grid.dx / 2
    gram = (table.values * w) @ table.values.T
    np.testing.assert_allclose(gram, np.eye(41), atol=1e-7)


def test_no_overflow_large_n():
    xs = np.linspace(-60.0, 60.0, 7)
    vals = hermite_fn(1000, xs)
    assert np.all(np.isfinite(vals))
    table = tabulate(np.array([-60.0, 0.0, 60.0]), 1000)
    assert np.all(np.isfinite(table.values))


def test_table_cell_cap():
    with pytest.raises(NumericsError):
        tabulate(np.zeros(1 << 20), 1 << 10)
