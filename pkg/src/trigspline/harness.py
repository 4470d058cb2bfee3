"""Error measurement, convergence rates and finite-difference jump profiles."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import TWO_PI

MAX_PROFILE_ORDER = 6


@dataclass(frozen=True)
class ErrorReport:
    sample_count: int
    sup_error: float
    l2_error: float
    argmax_t: float


def sample(f, ts) -> np.ndarray:
    """Evaluate ``f`` on the array ``ts``; ``f`` may be vectorised or scalar-only."""
    ts = np.asarray(ts, dtype=float)
    if hasattr(f, "evaluate_many"):
        return np.asarray(f.evaluate_many(ts), dtype=float)
    try:
        out = np.asarray(f(ts), dtype=float)
        if out.shape == ts.shape:
            return out
        return np.broadcast_to(out, ts.shape).astype(float)
    except (TypeError, ValueError):
        return np.array([float(f(t)) for t in ts])


def sample_points(samples: int) -> np.ndarray:
    """``2 pi i / samples`` for ``i = 0..samples-1`` (2pi itself excluded)."""
    return TWO_PI * np.arange(samples) / samples


def sup_distance(f, g, samples: int = 10_000) -> ErrorReport:
    """Sup and RMS distance of ``f`` and ``g`` over one period."""
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    ts = sample_points(samples)
    diff = np.abs(sample(f, ts) - sample(g, ts))
    i = int(np.argmax(diff))
    return ErrorReport(samples, float(diff[i]), float(np.sqrt(np.mean(diff ** 2))), float(ts[i]))


def convergence_order(errors) -> float:
    """Negated least-squares slope of ``log(error)`` against ``log(M)``."""
    data = np.asarray(errors, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or data.shape[0] < 3:
        raise ValueError("need at least 3 (M, error) pairs")
    M, err = data[:, 0], data[:, 1]
    if np.any(np.diff(M) <= 0):
        raise ValueError("M values must be strictly increasing")
    if np.any(err <= 0) or np.any(M <= 0):
        raise ValueError("errors and M must be positive for a log-log fit")
    slope = np.polyfit(np.log(M), np.log(err), 1)[0]
    return float(-slope)


@lru_cache(maxsize=None)
def one_sided_weights(order: int) -> tuple:
    """Offsets and weights for a right-sided ``order``-th derivative, error O(h^2).

    Orders >= 1 use the point itself plus ``order + 1`` points to its right.
    Order 0 extrapolates linearly from the two nearest right-hand points, so it
    measures the one-sided limit rather than returning ``f(x)``.
    """
    if order == 0:
        offsets = np.array([1.0, 2.0])
    else:
        offsets = np.arange(order + 2, dtype=float)
    size = offsets.size
    V = np.vander(offsets, size, increasing=True).T
    rhs = np.zeros(size)
    rhs[order] = float(np.prod(np.arange(1, order + 1)))
    w = np.linalg.solve(V, rhs)
    return tuple(offsets), tuple(w)


def one_sided_derivative(f, x, order: int, h: float, side: int) -> np.ndarray:
    """One-sided finite-difference derivative estimate at ``x``; ``side`` is +1 or -1."""
    offsets, w = one_sided_weights(order)
    x = np.asarray(x, dtype=float)
    pts = x[:, None] + side * h * np.asarray(offsets)[None, :]
    vals = sample(f, pts.ravel()).reshape(pts.shape)
    return (vals @ np.asarray(w)) * side ** order / h ** order


def smoothness_profile(f, knots, max_order: int, h: float = 1e-4) -> np.ndarray:
    """Largest one-sided derivative jump over ``knots`` for orders 0..max_order."""
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    if not 0 <= max_order <= MAX_PROFILE_ORDER:
        raise ValueError(f"max_order must lie in 0..{MAX_PROFILE_ORDER}, got {max_order}")
    knots = np.atleast_1d(np.asarray(knots, dtype=float))
    jumps = np.empty(max_order + 1)
    for o in range(max_order + 1):
        right = one_sided_derivative(f, knots, o, h, +1)
        left = one_sided_derivative(f, knots, o, h, -1)
        jumps[o] = np.max(np.abs(right - left))
    return jumps
