"""Trigonometric interpolation splines as folded finite spectra.

A spline is

    St(t) = a0/2 * I(q) + sum_{k=1..n} [a_k C_k(t) / hc_k + b_k S_k(t) / hs_k]

where ``a_k, b_k`` are the trig interpolation coefficients of the data on
the interpolation grid ``I2`` and ``C_k, S_k`` are the harmonic blocks
folded with the stitching indicator ``I1``.  After truncating the alias
series at ``M`` blocks the whole thing is a finite trigonometric sum, which
is what :class:`TrigSpline` stores.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .grid import (TWO_PI, TrigCoefficients, build_grid, check_indicator,
                   check_node_count, reduce_angle, trig_coefficients)
from .kernel import (COS, SIN, FrequencyTerm, ParamVectors, TruncationPolicy,
                     _interp_terms, block_base, choose_truncation,
                     int_power, tail_exponent)

# |hc_k| <= DEGENERATE_RTOL * sum|terms| marks an unusable interpolation factor
DEGENERATE_RTOL = 1e-13

# points per evaluation chunk times spectrum length
_CHUNK_ELEMS = 2_000_000


@dataclass(frozen=True)
class SplineConfig:
    """Parameters of ``St(I1, I2, gamma, eta, nu, r, q, t)`` on ``N`` nodes."""

    N: int
    I1: int = 0
    I2: int = 0
    vectors: ParamVectors = field(default_factory=ParamVectors.simple)
    r: int = 1
    q: float = 0.0
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    domain: Optional[tuple] = None

    def __post_init__(self):
        check_node_count(self.N)
        check_indicator(self.I1, "I1")
        check_indicator(self.I2, "I2")
        if isinstance(self.r, bool) or int(self.r) != self.r or self.r < 1:
            raise ValueError(f"spline order r must be an integer >= 1, got {self.r!r}")
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "q", float(self.q))
        if not math.isfinite(self.q):
            raise ValueError(f"q must be finite, got {self.q}")
        if self.q >= self.r:
            raise ValueError(
                f"derivative order q={self.q:g} must satisfy q < r={self.r}: "
                "for q >= r the alias series no longer converges"
            )
        if self.domain is not None:
            a, b = (float(v) for v in self.domain)
            if not b > a:
                raise ValueError(f"domain [a, b] needs b > a, got [{a}, {b}]")
            object.__setattr__(self, "domain", (a, b))

    @property
    def n(self) -> int:
        return (self.N - 1) // 2


def map_domain(a: float, b: float, x):
    """Affine map of ``[a, b]`` onto ``[0, 2pi]``: ``2pi (x - a) / (b - a)``."""
    if not b > a:
        raise ValueError(f"domain [a, b] needs b > a, got [{a}, {b}]")
    return TWO_PI * (np.asarray(x, dtype=float) - a) / (b - a)


def stitching_grid(config: SplineConfig) -> int:
    """Indicator of the grid on which the spline's smooth pieces actually join.

    For odd ``r`` this is ``I1``.  For even ``r`` the factor
    ``sin(pi j / N)**(1 + r)`` flips sign from one alias block to the next,
    which moves the breakpoints half a step, onto grid ``1 - I1``.
    """
    return config.I1 if config.r % 2 == 1 else 1 - config.I1


def derivative_indicator(q: float) -> int:
    return 1 if q == 0 else 0


def _phase(q: float):
    """cos and sin of ``pi q / 2``; exact for integer ``q``."""
    if float(q).is_integer():
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[int(q) % 4]
    return math.cos(math.pi * q / 2), math.sin(math.pi * q / 2)


@dataclass(frozen=True, eq=False)
class TrigSpline:
    """Immutable folded spectrum of a trigonometric spline.

    The spline value is ``constant + sum p*cos(j t + pi q/2) + s*sin(j t + pi q/2)``
    over ``frequencies``, ``cos_amplitudes`` (p) and ``sin_amplitudes`` (s).
    """

    config: SplineConfig
    coefficients: TrigCoefficients
    constant: float
    frequencies: np.ndarray
    cos_amplitudes: np.ndarray
    sin_amplitudes: np.ndarray
    M_used: int
    truncated: bool
    _eff: tuple = field(default=None, repr=False)

    def __post_init__(self):
        for arr in (self.frequencies, self.cos_amplitudes, self.sin_amplitudes):
            arr.setflags(write=False)
        c, s = _phase(self.config.q)
        p, qa = self.cos_amplitudes, self.sin_amplitudes
        # p cos(x + phi) + s sin(x + phi) = (p c + s s') cos x + (s c - p s') sin x
        object.__setattr__(self, "_eff", (p * c + qa * s, qa * c - p * s))

    @property
    def spectrum(self) -> tuple:
        return tuple(FrequencyTerm(int(j), float(p), float(s)) for j, p, s in
                     zip(self.frequencies, self.cos_amplitudes, self.sin_amplitudes))

    @property
    def truncated_flag(self) -> bool:
        return self.truncated

    def evaluate(self, t) -> float:
        return float(self.evaluate_many(np.array([t], dtype=float))[0])

    def evaluate_many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float).ravel()
        if self.config.domain is not None:
            ts = map_domain(*self.config.domain, ts)
        tau = reduce_angle(ts)
        out = np.full(tau.shape, self.constant)
        if self.frequencies.size == 0 or tau.size == 0:
            return out
        j = self.frequencies.astype(float)
        ec, es = self._eff
        step = max(1, _CHUNK_ELEMS // j.size)
        for lo in range(0, tau.size, step):
            x = np.multiply.outer(tau[lo:lo + step], j)
            # row sums keep each point's result independent of chunking
            out[lo:lo + step] += (np.cos(x) * ec + np.sin(x) * es).sum(axis=1)
        return out

    def __call__(self, t):
        if np.ndim(t) == 0:
            return self.evaluate(t)
        return self.evaluate_many(t).reshape(np.shape(t))

    def differintegrate(self, q_new: float) -> "TrigSpline":
        return differintegrate(self, q_new)

    def node_values(self) -> np.ndarray:
        """Spline values at the interpolation-grid nodes (in [0, 2pi) coordinates)."""
        nodes = build_grid(self.config.N, self.config.I2).nodes
        if self.config.domain is not None:
            a, b = self.config.domain
            nodes = a + (b - a) * nodes / TWO_PI
        return self.evaluate_many(nodes)


def _harmonic_scale(kind, k, coef, config, M):
    """``coef / h_k`` with the degeneracy check, h_k being hc_k or hs_k."""
    if coef == 0.0:
        return 0.0
    terms = _interp_terms(kind, k, config.I1, config.I2, config.vectors, config.r, config.N, M)
    h = terms.sum()
    if abs(h) <= DEGENERATE_RTOL * np.abs(terms).sum():
        name = "hc" if kind == COS else "hs"
        raise ValueError(f"ill-posed parameter vectors: {name}_{k} ≈ 0 (value {h:.3e})")
    return coef / h


def _assemble(config: SplineConfig, coeffs: TrigCoefficients, M: int, truncated: bool) -> TrigSpline:
    js, ps, ss = [], [], []
    for k in range(1, config.n + 1):
        ca = _harmonic_scale(COS, k, coeffs.a[k - 1], config, M)
        sa = _harmonic_scale(SIN, k, coeffs.b[k - 1], config, M)
        if ca == 0.0 and sa == 0.0:
            continue
        j, cbase = block_base(COS, k, config.I1, config.vectors, config.r, config.N, M)
        _, sbase = block_base(SIN, k, config.I1, config.vectors, config.r, config.N, M)
        js.append(j)
        ps.append(ca * cbase)
        ss.append(sa * sbase)
    if js:
        j = np.concatenate(js)
        p = np.concatenate(ps)
        s = np.concatenate(ss)
        # each alias frequency belongs to exactly one k, so sorting is the merge
        order = np.argsort(j, kind="stable")
        j, p, s = j[order], p[order], s[order]
        keep = (p != 0.0) | (s != 0.0)
        j, p, s = j[keep], p[keep], s[keep]
        if config.q != 0:
            w = int_power(j, config.q)
            p = p * w
            s = s * w
    else:
        j = np.zeros(0, dtype=np.int64)
        p = np.zeros(0)
        s = np.zeros(0)
    constant = coeffs.a0 / 2.0 * derivative_indicator(config.q)
    return TrigSpline(config, coeffs, float(constant), j, p, s, int(M), bool(truncated))


def build_spline(config: SplineConfig, values) -> TrigSpline:
    """Build the spline interpolating ``values`` on the ``I2`` grid.

    ``values[i]`` belongs to node ``i`` of the interpolation grid (mapped onto
    ``config.domain`` when one is given).
    """
    y = np.asarray(values, dtype=float)
    if y.ndim != 1 or y.size != config.N:
        raise ValueError(f"expected {config.N} data values, got {y.size}")
    if not np.all(np.isfinite(y)):
        raise ValueError("data values must be finite")
    coeffs = trig_coefficients(y, build_grid(config.N, config.I2))
    scale = max(1.0, float(np.max(np.abs(y))))
    M, truncated = choose_truncation(config.r, config.q, config.N, config.policy,
                                     data_scale=scale,
                                     vector_scale=config.vectors.max_magnitude())
    return _assemble(config, coeffs, M, truncated)


def evaluate(spline: TrigSpline, t) -> float:
    return spline.evaluate(t)


def evaluate_many(spline: TrigSpline, ts) -> np.ndarray:
    return spline.evaluate_many(ts)


def spectrum(spline: TrigSpline) -> tuple:
    return spline.spectrum


def differintegrate(spline: TrigSpline, q_new: float) -> TrigSpline:
    """Rebuild ``spline`` with derivative order ``q_new`` (Weyl sense for fractional q).

    ``q_new > 0`` differentiates, ``q_new < 0`` integrates.  The result keeps
    the source's block count ``M_used`` so both spectra share frequencies;
    amplitudes scale by ``j**(q_new - q)`` and the phase moves by
    ``pi (q_new - q) / 2``.  The constant term is dropped for ``q_new != 0``.
    """
    cfg = spline.config
    q_new = float(q_new)
    if q_new >= cfg.r:
        raise ValueError(f"derivative order q={q_new:g} must satisfy q < r={cfg.r}")
    new_cfg = replace(cfg, q=q_new)
    bound = (spline.M_used * cfg.N + 1 - cfg.n) ** tail_exponent(cfg.r, q_new)
    truncated = bound * cfg.vectors.max_magnitude() > cfg.policy.eps_tail
    return _assemble(new_cfg, spline.coefficients, spline.M_used, truncated)


def truncation_error_bound(spline: TrigSpline) -> float:
    """Upper bound on ``sup |St_M - St_inf|`` caused by cutting the series at ``M``.

    Combines the dropped block terms with the induced change of the
    interpolation factors, using ``|sin| <= 1`` and the integral bound
    ``sum_{m>M} (mN - k)**-s <= (MN - k)**(1-s) / (N (s - 1))``.
    """
    cfg = spline.config
    N, M, r, q = cfg.N, spline.M_used, cfg.r, cfg.q
    coeffs = spline.coefficients

    def tail(k, expo_q):
        s = 1.0 + r - expo_q
        return 2.0 * (M * N - k) ** (1.0 - s) / (N * (s - 1.0))

    total = 0.0
    for kind, cs in ((COS, coeffs.a), (SIN, coeffs.b)):
        wmax = max(abs(w) for w in cfg.vectors.weights(kind))
        for k in range(1, cfg.n + 1):
            c = abs(cs[k - 1])
            if c == 0.0:
                continue
            terms = _interp_terms(kind, k, cfg.I1, cfg.I2, cfg.vectors, r, N, M)
            h_m = abs(terms.sum())
            dh = wmax * tail(k, 0.0)
            j, base = block_base(kind, k, cfg.I1, cfg.vectors, r, N, M)
            block_abs = float(np.sum(np.abs(base) * int_power(j, q)))
            t_q = wmax * tail(k, q)
            h_inf = h_m - dh
            if h_inf <= 0:
                return math.inf
            total += c * (t_q / h_m + (block_abs + t_q) * dh / (h_m * h_inf))
    return total


def trig_polynomial_spline(N: int, I2: int, values, q: float = 0.0) -> TrigSpline:
    """Spline with ``gamma = eta = (1, 0, 0)``: the plain trig interpolation polynomial."""
    cfg = SplineConfig(N=N, I1=0, I2=I2, vectors=ParamVectors.plain(), r=max(1, math.floor(q) + 1),
                       q=q, policy=TruncationPolicy.fixed(1))
    return build_spline(cfg, values)
