"""Classical periodic polynomial splines used as reference interpolants.

Only what is needed to check the trigonometric splines against their
polynomial counterparts: the periodic broken line and the periodic cubic
spline with knots on the interpolation grid.  Nothing in here touches the
Fourier machinery.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import TWO_PI, Grid


@dataclass(frozen=True)
class PiecewisePoly:
    """Periodic piecewise polynomial.

    Interval ``i`` runs from ``breakpoints[i]`` to ``breakpoints[i+1]``; the
    last one wraps to ``breakpoints[0] + period``.  ``coeffs[i]`` holds the
    local coefficients in ascending powers of ``t - breakpoints[i]``.
    """

    breakpoints: np.ndarray
    coeffs: np.ndarray
    period: float = TWO_PI

    @property
    def degree(self) -> int:
        return self.coeffs.shape[1] - 1

    def locate(self, t):
        """Interval index and local coordinate of each ``t``."""
        tau = np.mod(np.asarray(t, dtype=float), self.period)
        idx = np.searchsorted(self.breakpoints, tau, side="right") - 1
        wrap = idx < 0
        idx = np.where(wrap, len(self.breakpoints) - 1, idx)
        local = np.where(wrap, tau + self.period, tau) - self.breakpoints[idx]
        return idx, local

    def eval_interval(self, idx, local):
        """Evaluate interval ``idx`` at local coordinate ``local`` (no wrapping)."""
        c = self.coeffs[idx]
        out = c[..., -1]
        for d in range(self.degree - 1, -1, -1):
            out = out * local + c[..., d]
        return out

    def __call__(self, t):
        idx, local = self.locate(t)
        out = self.eval_interval(idx, local)
        return float(out) if np.ndim(out) == 0 else out


def eval_piecewise(pp: PiecewisePoly, t):
    return pp(t)


def _check_values(values, grid):
    y = np.asarray(values, dtype=float)
    if y.ndim != 1 or y.size != grid.N:
        raise ValueError(f"expected {grid.N} values, got shape {y.shape}")
    return y


def linear_periodic(values, grid: Grid) -> PiecewisePoly:
    """Periodic broken line through ``values`` at the grid nodes."""
    y = _check_values(values, grid)
    h = grid.step
    slope = (np.roll(y, -1) - y) / h
    return PiecewisePoly(np.array(grid.nodes), np.column_stack([y, slope]))


def solve_cyclic_tridiagonal(diag, sub, sup, corner_lo, corner_hi, rhs):
    """Solve a cyclic tridiagonal system by Sherman-Morrison.

    The matrix has ``diag`` on the main diagonal, ``A[i+1, i] = sub[i]``,
    ``A[i, i+1] = sup[i]`` (both of length ``n - 1``), and the wrap-around
    entries ``A[n-1, 0] = corner_lo`` and ``A[0, n-1] = corner_hi``.
    """
    d = np.array(diag, dtype=float)
    a = np.asarray(sub, dtype=float)
    c = np.asarray(sup, dtype=float)
    b = np.asarray(rhs, dtype=float)
    n = d.size
    if n < 3:
        raise ValueError(f"cyclic system needs size >= 3, got {n}")
    if a.size != n - 1 or c.size != n - 1 or b.size != n:
        raise ValueError("sub/sup must have length n-1 and rhs length n")

    gamma = -d[0] if d[0] != 0 else -1.0
    d[0] -= gamma
    d[-1] -= corner_lo * corner_hi / gamma
    u = np.zeros(n)
    u[0] = gamma
    u[-1] = corner_lo
    y = _thomas(a, d, c, b)
    z = _thomas(a, d, c, u)
    vy = y[0] + corner_hi / gamma * y[-1]
    vz = z[0] + corner_hi / gamma * z[-1]
    if 1.0 + vz == 0.0:
        raise ValueError("cyclic tridiagonal system is singular")
    return y - z * (vy / (1.0 + vz))


def _thomas(sub, diag, sup, rhs):
    n = diag.size
    cp = np.empty(n - 1)
    dp = np.empty(n)
    piv = diag[0]
    if piv == 0:
        raise ValueError("zero pivot in tridiagonal solve")
    cp[0] = sup[0] / piv
    dp[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diag[i] - sub[i - 1] * cp[i - 1]
        if piv == 0:
            raise ValueError("zero pivot in tridiagonal solve")
        if i < n - 1:
            cp[i] = sup[i] / piv
        dp[i] = (rhs[i] - sub[i - 1] * dp[i - 1]) / piv
    x = np.empty(n)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def cubic_periodic(values, grid: Grid) -> PiecewisePoly:
    """C2 periodic cubic spline with knots at the grid nodes."""
    y = _check_values(values, grid)
    N = grid.N
    h = grid.step
    off = np.full(N - 1, h / 6.0)
    rhs = (np.roll(y, -1) - 2.0 * y + np.roll(y, 1)) / h
    m = solve_cyclic_tridiagonal(np.full(N, 2.0 * h / 3.0), off, off, h / 6.0, h / 6.0, rhs)
    m1 = np.roll(m, -1)
    coeffs = np.column_stack([
        y,
        (np.roll(y, -1) - y) / h - h * (2.0 * m + m1) / 6.0,
        m / 2.0,
        (m1 - m) / (6.0 * h),
    ])
    return PiecewisePoly(np.array(grid.nodes), coeffs)
