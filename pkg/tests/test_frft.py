import math
import warnings

import numpy as np
import pytest

from qsc import _kernels
from qsc.catalog import box_wavefunction, superposition_state
from qsc.errors import NumericsError
from qsc.frft import KernelTransform, equivalence_failures, kernel, transform
from qsc.hermite import build_basis_table
from qsc.state import Grid, default_grid, eval_density, make_state
from conftest import INV_SQRT2, fock


@pytest.fixture(scope="module")
def small_grid():
    return default_grid(12, grid_points=1024)


@pytest.fixture(scope="module")
def small_table(small_grid):
    return build_basis_table(12, small_grid)


def l1_distance(a, b, grid):
    return _kernels.trapezoid(np.abs(np.asarray(a) - np.asarray(b)), grid.dx)


class TestKernel:
    @pytest.mark.parametrize("alpha", [0.2, 0.9, math.pi / 2, 2.7])
    def test_constant_modulus(self, alpha):
        u = np.linspace(-3, 3, 7)
        mags = np.abs(kernel(alpha, u[:, None], u[None, :]))
        np.testing.assert_allclose(
            mags, (2 * math.pi * abs(math.sin(alpha))) ** -0.5, rtol=1e-12)

    def test_symmetric_in_arguments(self):
        assert kernel(0.8, 1.3, -0.4) == pytest.approx(kernel(0.8, -0.4, 1.3))

    def test_quarter_turn_is_fourier_kernel(self):
        # ordinary Fourier kernel up to the phase convention: the sign of the
        # cross term is fixed by the oscillator eigenphase exp(+i n alpha)
        val = kernel(math.pi / 2, 1.1, 0.7)
        assert val == pytest.approx(
            math.sqrt(1 / (2 * math.pi)) * np.exp(1j * 1.1 * 0.7), rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, math.pi, 2 * math.pi, 1e-9])
    def test_degenerate_angle_rejected(self, alpha):
        with pytest.raises(NumericsError):
            kernel(alpha, 0.0, 0.0)

    @pytest.mark.parametrize("n", [0, 1, 4, 9])
    def test_eigenphase_matches_fock_rule(self, n, small_grid, small_table):
        # the convention-pinning test: K u_n = exp(+i n alpha) u_n
        alpha = 0.7
        out = transform(small_table.values[n].astype(complex), alpha, small_grid)
        mid = slice(400, 624)
        expected = np.exp(1j * n * alpha) * small_table.values[n][mid]
        np.testing.assert_allclose(out[mid], expected, atol=1e-8)


class TestTransform:
    def test_vacuum_density_invariant(self, small_grid, small_table):
        psi = small_table.values[0].astype(complex)
        for alpha in (0.3, 1.1, 2.5):
            out = transform(psi, alpha, small_grid)
            assert l1_distance(np.abs(out) ** 2, np.abs(psi) ** 2,
                               small_grid) < 1e-6

    def test_norm_conserved(self, small_grid, small_table):
        state = make_state([0.5, 0.5j, 0.5, -0.5], renormalize=True)
        psi = state.coeffs @ small_table.values[:4].astype(complex)
        out = transform(psi, 0.9, small_grid)
        norm = _kernels.trapezoid(np.abs(out) ** 2, small_grid.dx)
        assert norm == pytest.approx(1.0, abs=1e-6)

    def test_matches_phase_pipeline(self, small_grid, small_table):
        state = superposition_state(2, INV_SQRT2)
        psi0 = state.coeffs @ small_table.values[:3].astype(complex)
        out = transform(psi0, 0.3, small_grid)
        fockside = eval_density(state, 0.3, small_grid, small_table)
        assert l1_distance(np.abs(out) ** 2, fockside.rho, small_grid) < 1e-5

    def test_box_momentum_density(self, small_grid):
        # quarter turn of the well ground state against the closed-form
        # momentum density (pi/2) cos^2(p) / (pi^2/4 - p^2)^2
        psi = box_wavefunction(1, small_grid.points).astype(complex)
        out = transform(psi, math.pi / 2, small_grid)
        p = small_grid.points
        with np.errstate(divide="ignore", invalid="ignore"):
            exact = (math.pi / 2) * np.cos(p) ** 2 / (math.pi ** 2 / 4 - p * p) ** 2
        exact[~np.isfinite(exact)] = 0.5 / math.pi  # removable singularity
        assert l1_distance(np.abs(out) ** 2, exact, small_grid) < 1e-3

    def test_composition_on_densities(self, small_grid, small_table):
        # compared at the density level: composing kernels leaves a global
        # phase that no density-level quantity can see
        psi = small_table.values[2].astype(complex) * 0.6 \
            + small_table.values[0].astype(complex) * 0.8
        two = transform(transform(psi, 0.4, small_grid), 0.9, small_grid)
        one = transform(psi, 1.3, small_grid)
        assert l1_distance(np.abs(two) ** 2, np.abs(one) ** 2, small_grid) < 1e-4

    def test_edge_mass_warning(self):
        grid = Grid(extent=2.0, count=256)
        psi = np.exp(-grid.points ** 2 / 32).astype(complex)
        with pytest.warns(RuntimeWarning, match="edge mass"):
            transform(psi, 0.7, grid)

    def test_degenerate_angle_rejected(self, small_grid):
        with pytest.raises(NumericsError):
            transform(np.ones(small_grid.count, complex), math.pi, small_grid)

    def test_sample_count_checked(self, small_grid):
        with pytest.raises(ValueError):
            transform(np.ones(7, complex), 0.5, small_grid)


class TestKernelTransform:
    def test_matrix_agrees_with_blocked_apply(self):
        grid = default_grid(4, grid_points=256)
        table = build_basis_table(4, grid)
        psi = table.values[1].astype(complex)
        kt = KernelTransform.build(0.8, grid)
        np.testing.assert_allclose(kt.apply(psi), transform(psi, 0.8, grid),
                                   atol=1e-12)
        assert kt.matrix.shape == (256, 256)

    def test_near_unitary_on_band_limited_input(self):
        grid = default_grid(6, grid_points=512)
        table = build_basis_table(6, grid)
        kt = KernelTransform.build(1.1, grid)
        psi = (table.values[3] * 0.6 + table.values[5] * 0.8).astype(complex)
        out = kt.apply(psi)
        assert _kernels.trapezoid(np.abs(out) ** 2, grid.dx) == pytest.approx(
            _kernels.trapezoid(np.abs(psi) ** 2, grid.dx), abs=1e-6)


def test_equivalence_suite_is_clean():
    assert equivalence_failures() == []
