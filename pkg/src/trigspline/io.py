"""JSON spline documents, JSON run configs and CSV data files."""
from __future__ import annotations

import csv
import json
import os
from pathlib import Path

import numpy as np

from .grid import TrigCoefficients
from .kernel import ParamVectors, TruncationPolicy
from .spline import SplineConfig, TrigSpline

EPS_ENV = "TRIGSPLINE_EPS_TAIL"


def config_to_dict(cfg: SplineConfig) -> dict:
    return {
        "N": cfg.N,
        "I1": cfg.I1,
        "I2": cfg.I2,
        "gamma": list(cfg.vectors.gamma),
        "eta": list(cfg.vectors.eta),
        "reduction": cfg.vectors.reduction,
        "r": cfg.r,
        "q": cfg.q,
        "eps_tail": cfg.policy.eps_tail,
        "M_min": cfg.policy.M_min,
        "M_max": cfg.policy.M_max,
        "domain": None if cfg.domain is None else list(cfg.domain),
    }


def config_from_dict(d: dict, env=None) -> SplineConfig:
    """Build a :class:`SplineConfig` from a config mapping.

    Required keys: ``N``, ``r``. ``M`` (fixed block count) takes precedence
    over ``M_min``/``M_max``. The ``TRIGSPLINE_EPS_TAIL`` environment variable
    overrides ``eps_tail``.
    """
    env = os.environ if env is None else env
    missing = [k for k in ("N", "r") if k not in d]
    if missing:
        raise ValueError(f"config is missing required keys: {', '.join(missing)}")
    default = TruncationPolicy()
    eps = float(d.get("eps_tail", default.eps_tail))
    if env.get(EPS_ENV):
        eps = float(env[EPS_ENV])
    if "M" in d and d["M"] is not None:
        policy = TruncationPolicy.fixed(int(d["M"]), eps)
    else:
        policy = TruncationPolicy(eps, int(d.get("M_min", default.M_min)),
                                  int(d.get("M_max", default.M_max)))
    gamma = d.get("gamma", (1, 1, 1))
    eta = d.get("eta", (1, 1, 1))
    vectors = ParamVectors(tuple(gamma), tuple(eta), reduction=bool(d.get("reduction", False)))
    domain = d.get("domain")
    return SplineConfig(
        N=_as_int(d["N"], "N"),
        I1=_as_int(d.get("I1", 0), "I1"),
        I2=_as_int(d.get("I2", 0), "I2"),
        vectors=vectors,
        r=_as_int(d["r"], "r"),
        q=float(d.get("q", 0.0)),
        policy=policy,
        domain=None if domain is None else tuple(domain),
    )


def _as_int(v, name):
    if isinstance(v, bool) or (isinstance(v, float) and not v.is_integer()):
        raise ValueError(f"{name} must be an integer, got {v!r}")
    return int(v)


def load_config(path) -> SplineConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def load_data(path) -> np.ndarray:
    """One value per line; an optional ``y`` header line is skipped."""
    values = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not row[0].strip():
                continue
            cell = row[0].strip()
            if lineno == 1 and cell.lower() == "y":
                continue
            try:
                values.append(float(cell))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: not a number: {cell!r}") from None
    return np.array(values)


def spline_to_dict(spline: TrigSpline) -> dict:
    c = spline.coefficients
    return {
        "config": config_to_dict(spline.config),
        "constant": spline.constant,
        "M_used": spline.M_used,
        "truncated": spline.truncated,
        "spectrum": [[int(j), float(p), float(s)] for j, p, s in
                     zip(spline.frequencies, spline.cos_amplitudes, spline.sin_amplitudes)],
        "coefficients": {"grid_indicator": c.grid_indicator, "a0": c.a0,
                         "a": c.a.tolist(), "b": c.b.tolist()},
    }


def spline_from_dict(d: dict) -> TrigSpline:
    try:
        cfg = config_from_dict(d["config"], env={})
        spec = np.asarray(d["spectrum"], dtype=float).reshape(-1, 3)
        co = d["coefficients"]
        coeffs = TrigCoefficients(cfg.N, int(co["grid_indicator"]), float(co["a0"]),
                                  np.asarray(co["a"], dtype=float), np.asarray(co["b"], dtype=float))
        return TrigSpline(cfg, coeffs, float(d["constant"]), spec[:, 0].astype(np.int64),
                          spec[:, 1].copy(), spec[:, 2].copy(), int(d["M_used"]), bool(d["truncated"]))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed spline document: {exc}") from None


def save_spline(spline: TrigSpline, path) -> None:
    Path(path).write_text(json.dumps(spline_to_dict(spline)) + "\n", encoding="utf-8")


def load_spline(path) -> TrigSpline:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not a spline document: {exc}") from None
    return spline_from_dict(doc)


def write_samples(path, ts, values) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "value"])
        for t, v in zip(ts, values):
            w.writerow([repr(float(t)), repr(float(v))])
