"""Orthonormal harmonic-oscillator eigenfunctions (m = hbar = omega = 1).

All evaluation runs through the normalized three-term recurrence on the
Gaussian-weighted functions

    u_0(x)     = pi**-0.25 * exp(-x**2 / 2)
    u_1(x)     = sqrt(2) * x * u_0(x)
    u_{n+1}(x) = sqrt(2/(n+1)) * x * u_n(x) - sqrt(n/(n+1)) * u_{n-1}(x)

which stays bounded up to quantum numbers of order 10^3, where the bare
Hermite polynomials have long since overflowed.  The kernel carries a
per-point exponent besides, so points inside the classical turning point but
beyond the float range of exp(-x^2/2) still come out right.  Derivatives
come from the ladder identity

    u_n'(x) = sqrt(n/2) * u_{n-1}(x) - sqrt((n+1)/2) * u_{n+1}(x)

rather than from differentiating the recurrence: it is an exact algebraic
relation and costs a single extra row.  Far in the tail (|x| >> sqrt(2n+1))
the weighted functions underflow to zero silently, which is harmless because
every integrand built from them vanishes there as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NumericsError

__all__ = ["BasisTable", "MAX_TABLE_CELLS", "build_basis_table",
           "hermite_fn", "hermite_fn_derivative"]

# guards accidental huge allocations, not a tuning knob
MAX_TABLE_CELLS = 1 << 27


def _recurrence_triplet(n: int, x):
    """Return (u_{n-1}, u_n, u_{n+1}) at x, with u_{-1} = 0."""
    x = np.asarray(x, dtype=float)
    pts = np.ascontiguousarray(np.atleast_1d(x), dtype=float)
    values, _ = _kernels.hermite_table(pts, n + 1)
    lo = values[n - 1] if n > 0 else np.zeros_like(pts)
    return lo, values[n], values[n + 1]


def hermite_fn(n: int, x):
    """Value of the n-th orthonormal oscillator eigenfunction at x.

    x may be a scalar or an ndarray.  Total over the domain: the scaled
    recurrence neither overflows nor loses the value to premature underflow,
    and flushes to zero only in the true far tail.
    """
    if n < 0:
        raise ValueError("quantum number must be >= 0")
    _, mid, _ = _recurrence_triplet(n, x)
    return float(mid[0]) if np.ndim(x) == 0 else mid


def hermite_fn_derivative(n: int, x):
    """First derivative of the n-th eigenfunction via the ladder identity."""
    if n < 0:
        raise ValueError("quantum number must be >= 0")
    lo, _, hi = _recurrence_triplet(n, x)
    out = np.sqrt(0.5 * n) * lo - np.sqrt(0.5 * (n + 1.0)) * hi
    return float(out[0]) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class BasisTable:
    """Eigenfunction values and derivatives tabulated on a set of points.

    Rows run n = 0..n_max; columns follow ``points``.  Immutable after
    construction and safe to share across concurrent workers.
    """

    n_max: int
    points: np.ndarray
    values: np.ndarray
    derivs: np.ndarray


def tabulate(points: np.ndarray, n_max: int) -> BasisTable:
    """Single-pass recurrence fill over arbitrary points."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    points = np.ascontiguousarray(points, dtype=float)
    cells = (n_max + 2) * points.shape[0]
    if cells > MAX_TABLE_CELLS:
        raise NumericsError(
            f"basis table of {cells} cells exceeds cap {MAX_TABLE_CELLS}")
    values, derivs = _kernels.hermite_table(points, n_max)
    for arr in (points, values, derivs):
        arr.setflags(write=False)
    return BasisTable(n_max=n_max, points=points, values=values, derivs=derivs)


def build_basis_table(n_max: int, grid) -> BasisTable:
    """Tabulate the first n_max+1 eigenfunctions on a Grid."""
    return tabulate(grid.points, n_max)
