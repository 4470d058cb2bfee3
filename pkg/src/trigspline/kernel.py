"""Convergence factors, interpolation factors and folded harmonic blocks.

Harmonic ``k`` (1 <= k <= n) of a spline is spread over the frequencies
``k``, ``mN - k`` and ``mN + k`` for ``m = 1, 2, ...``.  The infinite
``m``-series is cut at a block count ``M``; the same ``M`` must be used for
the blocks and for the interpolation factors that normalise them, otherwise
the spline stops interpolating at the grid nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .grid import check_indicator, check_node_count

COS = "cos"
SIN = "sin"


def _check_kind(kind: str) -> str:
    if kind not in (COS, SIN):
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    return kind


@dataclass(frozen=True)
class ParamVectors:
    """Weights ``gamma`` (cosine blocks) and ``eta`` (sine blocks).

    Each vector is ``(w1, w2, w3)``: weight of the base harmonic ``k``, of
    the lower aliases ``mN - k`` and of the upper aliases ``mN + k``.
    With ``gamma = eta = (1, 0, 0)`` the spline degenerates to the plain
    trig interpolation polynomial; that case has to be asked for with
    ``reduction=True`` (or :meth:`ParamVectors.plain`).
    """

    gamma: tuple = (1.0, 1.0, 1.0)
    eta: tuple = (1.0, 1.0, 1.0)
    reduction: bool = False

    def __post_init__(self):
        gamma = tuple(float(g) for g in self.gamma)
        eta = tuple(float(e) for e in self.eta)
        if len(gamma) != 3 or len(eta) != 3:
            raise ValueError("gamma and eta must each have exactly 3 components")
        if not all(math.isfinite(v) for v in gamma + eta):
            raise ValueError("gamma and eta must be finite")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "eta", eta)
        tail_zero = gamma[1] == gamma[2] == eta[1] == eta[2] == 0.0
        if tail_zero and not self.reduction:
            raise ValueError(
                "at least one of gamma2, gamma3, eta2, eta3 must be nonzero; "
                "use ParamVectors.plain() for the trig interpolation polynomial"
            )

    @classmethod
    def simple(cls) -> "ParamVectors":
        return cls((1.0, 1.0, 1.0), (1.0, 1.0, 1.0))

    @classmethod
    def plain(cls) -> "ParamVectors":
        return cls((1.0, 0.0, 0.0), (1.0, 0.0, 0.0), reduction=True)

    @property
    def is_simple(self) -> bool:
        return self.gamma == (1.0, 1.0, 1.0) and self.eta == (1.0, 1.0, 1.0)

    def weights(self, kind: str) -> tuple:
        return self.gamma if _check_kind(kind) == COS else self.eta

    def max_magnitude(self) -> float:
        return max(abs(v) for v in self.gamma + self.eta)


@dataclass(frozen=True)
class TruncationPolicy:
    """How many alias blocks ``M`` to keep when summing the ``m``-series.

    ``eps_tail`` is relative to the data scale.
    """

    eps_tail: float = 1e-10
    M_min: int = 1
    M_max: int = 100_000

    def __post_init__(self):
        if not self.eps_tail > 0:
            raise ValueError(f"eps_tail must be positive, got {self.eps_tail}")
        if not (1 <= self.M_min <= self.M_max):
            raise ValueError(f"need 1 <= M_min <= M_max, got M_min={self.M_min}, M_max={self.M_max}")

    @classmethod
    def fixed(cls, M: int, eps_tail: float = 1e-10) -> "TruncationPolicy":
        return cls(eps_tail=eps_tail, M_min=M, M_max=M)


class FrequencyTerm(NamedTuple):
    """One folded frequency: ``p*cos(j t + phase) + q_amp*sin(j t + phase)``."""

    j: int
    p: float
    q_amp: float


def _sin_pi_ratio(j, N: int):
    # sin(pi*j/N) with j reduced mod 2N so large aliases keep full accuracy
    return np.sin(np.pi * (np.mod(j, 2 * N)) / N)


def _nu(j, r: int, N: int):
    j = np.asarray(j)
    return (_sin_pi_ratio(j, N) / j) ** (1 + r)


def convergence_factor(k: int, r: int, N: int) -> float:
    """``[(1/k) sin(pi k / N)]**(1 + r)``, of order ``k**-(1+r)``."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return float(_nu(int(k), int(r), int(N)))


def int_power(j, q):
    """``j**q`` for integer ``q`` by repeated multiplication, else ``exp(q log j)``."""
    j = np.asarray(j, dtype=float)
    qf = float(q)
    if qf.is_integer():
        e = abs(int(qf))
        out = np.ones_like(j)
        for _ in range(e):
            out = out * j
        return 1.0 / out if qf < 0 else out
    return np.exp(qf * np.log(j))


def alias_frequencies(k: int, N: int, M: int) -> np.ndarray:
    """Frequencies ``k, N-k, N+k, 2N-k, 2N+k, ..., MN-k, MN+k``."""
    m = np.arange(1, M + 1)
    j = np.empty(2 * M + 1, dtype=np.int64)
    j[0] = k
    j[1::2] = m * N - k
    j[2::2] = m * N + k
    return j


def block_base(kind: str, k: int, I1: int, vectors: ParamVectors, r: int, N: int, M: int):
    """Frequencies and ``q = 0`` amplitudes of one folded harmonic block.

    Returns ``(j, amp)`` in emission order (see :func:`alias_frequencies`).
    The stitching sign ``(-1)**(m*I1)`` and, for sine blocks, the minus sign
    on the lower aliases are already applied.
    """
    w1, w2, w3 = vectors.weights(kind)
    j = alias_frequencies(k, N, M)
    nu = _nu(j, r, N)
    amp = np.empty_like(nu)
    sign = 1.0 - 2.0 * ((np.arange(1, M + 1) * I1) % 2)
    lower = w2 * sign if kind == COS else -w2 * sign
    amp[0] = w1 * nu[0]
    amp[1::2] = lower * nu[1::2]
    amp[2::2] = w3 * sign * nu[2::2]
    return j, amp


def interp_factor(kind: str, k: int, I1: int, I2: int, vectors: ParamVectors,
                  r: int, N: int, M: int) -> float:
    """Partial sum (``m = 1..M``) of the interpolation factor ``hc_k`` or ``hs_k``.

    ``w1 nu_k + sum_m (-1)**(m (I1 - I2)) [w3 nu_{mN+k} + w2 nu_{mN-k}]`` with
    ``w = gamma`` for ``kind='cos'`` and ``w = eta`` for ``kind='sin'``.
    """
    _check_kind(kind)
    I1 = check_indicator(I1, "I1")
    I2 = check_indicator(I2, "I2")
    N = check_node_count(N)
    if not 1 <= k <= (N - 1) // 2:
        raise ValueError(f"k must lie in 1..{(N - 1) // 2}, got {k}")
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    return float(_interp_terms(kind, k, I1, I2, vectors, r, N, M).sum())


def _interp_terms(kind, k, I1, I2, vectors, r, N, M):
    w1, w2, w3 = vectors.weights(kind)
    j = alias_frequencies(k, N, M)
    nu = _nu(j, r, N)
    sign = 1.0 - 2.0 * ((np.arange(1, M + 1) * (I1 - I2)) % 2)
    terms = np.empty_like(nu)
    terms[0] = w1 * nu[0]
    terms[1::2] = w2 * sign * nu[1::2]
    terms[2::2] = w3 * sign * nu[2::2]
    return terms


def fold_block(kind: str, k: int, I1: int, vectors: ParamVectors, r: int,
               q: float, N: int, M: int) -> list[FrequencyTerm]:
    """Folded terms of ``C_k`` (``kind='cos'``) or ``S_k`` (``kind='sin'``).

    The block equals ``sum amp * cos(j t + pi q / 2)`` over the returned
    terms (``sin`` for sine blocks); cosine amplitudes are reported in
    ``p`` and sine amplitudes in ``q_amp``.
    """
    _check_kind(kind)
    I1 = check_indicator(I1, "I1")
    N = check_node_count(N)
    if not 1 <= k <= (N - 1) // 2:
        raise ValueError(f"k must lie in 1..{(N - 1) // 2}, got {k}")
    j, base = block_base(kind, k, I1, vectors, r, N, M)
    amp = base * int_power(j, q)
    if kind == COS:
        return [FrequencyTerm(int(jj), float(a), 0.0) for jj, a in zip(j, amp)]
    return [FrequencyTerm(int(jj), 0.0, float(a)) for jj, a in zip(j, amp)]


def tail_exponent(r: int, q: float) -> float:
    return float(q) - 1.0 - r


def choose_truncation(r: int, q: float, N: int, policy: TruncationPolicy,
                      data_scale: float = 1.0, vector_scale: float = 1.0):
    """Smallest block count ``M`` whose next-block term bound meets ``eps_tail``.

    The bound is ``(M N + 1 - n)**(q - 1 - r) * vector_scale``.  Because
    ``eps_tail`` is relative, ``data_scale`` only has to be positive.

    Returns
    -------
    M : int
    truncated : bool
        True when even ``policy.M_max`` does not meet the bound.
    """
    if q >= r:
        raise ValueError(
            f"derivative order q={q} must be below the spline order r={r}: "
            "the alias series does not converge absolutely for q >= r"
        )
    if not data_scale > 0:
        raise ValueError(f"data_scale must be positive, got {data_scale}")
    N = check_node_count(N)
    n = (N - 1) // 2
    expo = tail_exponent(r, q)

    def bound(M):
        return (M * N + 1 - n) ** expo * vector_scale

    if vector_scale == 0 or bound(policy.M_min) <= policy.eps_tail:
        return policy.M_min, False
    # (M N + 1 - n) >= (eps/scale)**(1/expo)
    target = (policy.eps_tail / vector_scale) ** (1.0 / expo)
    M = max(policy.M_min, math.ceil((target - 1 + n) / N))
    if M > policy.M_max:
        return policy.M_max, True
    # guard the closed form against rounding on either side
    while M > policy.M_min and bound(M - 1) <= policy.eps_tail:
        M -= 1
    while bound(M) > policy.eps_tail:
        M += 1
        if M > policy.M_max:
            return policy.M_max, True
    return M, False
