"""Uniform grids on [0, 2pi) and discrete trigonometric interpolation.

Two grid families are used throughout the package. Indicator 0 places the
nodes at ``2*pi*(i-1)/N`` and indicator 1 shifts them by half a step to
``pi*(2i-1)/N`` (1-based ``i``). ``N`` is always odd, ``N = 2n + 1``, so the
interpolating trigonometric polynomial has exactly ``n`` harmonics.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# coefficients below this multiple of eps * max|y| are rounding residue
_SNAP_ULPS = 64.0


def check_node_count(N: int) -> int:
    if isinstance(N, bool) or int(N) != N:
        raise ValueError(f"N must be an odd integer N = 2n+1 with n >= 1, got {N!r}")
    N = int(N)
    if N < 3 or N % 2 == 0:
        raise ValueError(f"N must be odd, N = 2n+1 with n >= 1 (N >= 3), got N={N}")
    return N


def check_indicator(indicator: int, name: str = "indicator") -> int:
    if indicator not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {indicator!r}")
    return int(indicator)


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [0, 2pi) with ``N`` nodes.

    ``nodes`` is stored 0-based; ``nodes[0]`` is node 1 in the usual 1-based numbering.
    """

    N: int
    indicator: int
    nodes: np.ndarray

    @property
    def n(self) -> int:
        return (self.N - 1) // 2

    @property
    def step(self) -> float:
        return TWO_PI / self.N

    def angles(self, k: int) -> np.ndarray:
        """``k * nodes`` reduced into [0, 2pi) using integer arithmetic."""
        i = np.arange(self.N)
        if self.indicator == 0:
            return TWO_PI * ((k * i) % self.N) / self.N
        return np.pi * ((k * (2 * i + 1)) % (2 * self.N)) / self.N


def build_grid(N: int, indicator: int) -> Grid:
    """Build the grid with indicator 0 (nodes at 0, h, 2h, ...) or 1 (h/2, 3h/2, ...)."""
    N = check_node_count(N)
    indicator = check_indicator(indicator)
    i = np.arange(N, dtype=float)
    if indicator == 0:
        nodes = TWO_PI * i / N
    else:
        nodes = np.pi * (2.0 * i + 1.0) / N
    nodes.setflags(write=False)
    return Grid(N, indicator, nodes)


@dataclass(frozen=True)
class TrigCoefficients:
    """Coefficients of ``a0/2 + sum_k (a_k cos kt + b_k sin kt)``, k = 1..n.

    ``a[k-1]`` holds ``a_k``; likewise ``b``.
    """

    N: int
    grid_indicator: int
    a0: float
    a: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return (self.N - 1) // 2

    def __call__(self, t):
        return eval_trig_poly(self, t)


def trig_coefficients(values, grid: Grid) -> TrigCoefficients:
    """Discrete Fourier coefficients of the trig polynomial interpolating ``values``.

    Uses the direct O(N^2) sums ``a_k = (2/N) sum y_i cos(k x_i)`` and
    ``b_k = (2/N) sum y_i sin(k x_i)``. Coefficients that are pure rounding
    residue (below ``64 * eps * max|y|``) are set to zero so that e.g.
    constant data gives an exactly empty harmonic part.
    """
    y = np.asarray(values, dtype=float)
    if y.ndim != 1 or y.size != grid.N:
        raise ValueError(f"expected {grid.N} values for N={grid.N}, got shape {y.shape}")
    n = grid.n
    a = np.empty(n)
    b = np.empty(n)
    for k in range(1, n + 1):
        ang = grid.angles(k)
        a[k - 1] = 2.0 / grid.N * np.dot(y, np.cos(ang))
        b[k - 1] = 2.0 / grid.N * np.dot(y, np.sin(ang))
    a0 = 2.0 / grid.N * np.sum(y)

    tol = _SNAP_ULPS * np.finfo(float).eps * (np.max(np.abs(y)) if y.size else 0.0)
    a[np.abs(a) <= tol] = 0.0
    b[np.abs(b) <= tol] = 0.0
    if abs(a0) <= tol:
        a0 = 0.0
    a.setflags(write=False)
    b.setflags(write=False)
    return TrigCoefficients(grid.N, grid.indicator, float(a0), a, b)


def reduce_angle(t):
    """Reduce ``t`` into [0, 2pi) by floored division."""
    tau = np.mod(t, TWO_PI)
    # np.mod can round up to exactly 2pi for tiny negative inputs
    return np.where(tau >= TWO_PI, 0.0, tau)


def eval_trig_poly(coeffs: TrigCoefficients, t):
    """Evaluate the interpolating trig polynomial at ``t`` (scalar or array)."""
    tau = reduce_angle(np.asarray(t, dtype=float))
    k = np.arange(1, coeffs.n + 1, dtype=float)
    kt = np.multiply.outer(tau, k)
    out = coeffs.a0 / 2.0 + np.cos(kt) @ coeffs.a + np.sin(kt) @ coeffs.b
    return float(out) if np.ndim(out) == 0 else out
