"""Command-line front end.

Exit codes: 0 success, 1 comparison above threshold, 2 validation error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io
from .grid import TWO_PI, build_grid
from .harness import sup_distance
from .kernel import ParamVectors, TruncationPolicy, convergence_factor, interp_factor
from .oracle import cubic_periodic, linear_periodic
from .spline import SplineConfig, build_spline, trig_polynomial_spline, truncation_error_bound

log = logging.getLogger("trigspline")

EXIT_OK, EXIT_THRESHOLD, EXIT_INVALID = 0, 1, 2

EXAMPLE_DATA = (2.0, 1.0, 3.0, 2.0, 4.0, 1.0, 3.0, 1.0, 3.0)

# curves only need plotting accuracy
FIGURE_EPS_TAIL = 1e-8

# spline order required by each oracle
ORACLE_ORDER = {"linear": 1, "cubic": 3}


class UsageError(ValueError):
    pass


def cmd_interpolate(config_path, data_path, out_path) -> int:
    cfg = io.load_config(config_path)
    y = io.load_data(data_path)
    if y.size != cfg.N:
        raise UsageError(f"data has {y.size} rows but N = {cfg.N}")
    spline = build_spline(cfg, y)
    if spline.truncated:
        log.warning("tail bound not met at M_max=%d; spline is truncated", spline.M_used)
    io.save_spline(spline, out_path)
    return EXIT_OK


def cmd_sample(spline_path, t_from, t_to, count, out_path) -> int:
    if count < 2:
        raise UsageError(f"count must be >= 2, got {count}")
    if not t_to > t_from:
        raise UsageError(f"need --to > --from, got [{t_from}, {t_to})")
    spline = io.load_spline(spline_path)
    ts = t_from + (t_to - t_from) * np.arange(count) / count
    io.write_samples(out_path, ts, spline.evaluate_many(ts))
    return EXIT_OK


def comparison_threshold(spline) -> float:
    """Tail bound of the truncated series plus slack for oracle rounding."""
    scale = max(1.0, float(np.max(np.abs(spline.node_values()))))
    return truncation_error_bound(spline) + 1e-10 * scale


def cmd_compare(config_path, data_path, oracle, samples, out=None) -> int:
    out = out or sys.stdout
    cfg = io.load_config(config_path)
    if oracle not in ORACLE_ORDER:
        raise UsageError(f"unknown oracle {oracle!r}; use linear or cubic")
    if cfg.r != ORACLE_ORDER[oracle]:
        raise UsageError(
            f"oracle {oracle} is the polynomial analogue of order r={ORACLE_ORDER[oracle]} only, "
            f"config has r={cfg.r}")
    if cfg.I1 != 0 or cfg.I2 != 0 or not cfg.vectors.is_simple or cfg.q != 0:
        raise UsageError("polynomial analogues need I1 = I2 = 0, simple vectors and q = 0")
    y = io.load_data(data_path)
    if y.size != cfg.N:
        raise UsageError(f"data has {y.size} rows but N = {cfg.N}")
    spline = build_spline(cfg, y)
    grid = build_grid(cfg.N, 0)
    pp = linear_periodic(y, grid) if oracle == "linear" else cubic_periodic(y, grid)
    rep = sup_distance(spline, pp, samples)
    threshold = comparison_threshold(spline)
    ok = rep.sup_error <= threshold
    print(f"oracle={oracle} M={spline.M_used} samples={rep.sample_count}", file=out)
    print(f"sup_error={rep.sup_error:.6e} l2_error={rep.l2_error:.6e} argmax_t={rep.argmax_t:.6f}", file=out)
    print(f"threshold={threshold:.6e} {'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_THRESHOLD


def parse_k_range(text, n):
    if text is None:
        return range(1, n + 1)
    for sep in ("..", ":", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            lo, hi = int(lo), int(hi)
            break
    else:
        lo = hi = int(text)
    if not 1 <= lo <= hi <= n:
        raise UsageError(f"k-range must lie within 1..{n}, got {text!r}")
    return range(lo, hi + 1)


def cmd_factors(N, r, I1, I2, gamma, eta, k_range, M, out=None) -> int:
    out = out or sys.stdout
    tail_zero = gamma[1] == gamma[2] == eta[1] == eta[2] == 0
    vectors = ParamVectors(tuple(gamma), tuple(eta), reduction=tail_zero)
    cfg = SplineConfig(N=N, I1=I1, I2=I2, vectors=vectors, r=r)
    ks = parse_k_range(k_range, cfg.n)
    if M < 1:
        raise UsageError(f"M must be >= 1, got {M}")
    print("k,nu,hc,hs", file=out)
    for k in ks:
        nu = convergence_factor(k, r, N)
        hc = interp_factor("cos", k, I1, I2, vectors, r, N, M)
        hs = interp_factor("sin", k, I1, I2, vectors, r, N, M)
        print(f"{k},{nu:.15g},{hc:.15g},{hs:.15g}", file=out)
    return EXIT_OK


def figure_curves(preset, values=EXAMPLE_DATA, policy=None):
    """Named splines for the figure presets as ``(name, spline)`` pairs."""
    y = np.asarray(values, dtype=float)
    N = y.size
    if policy is None:
        eps = float(os.environ.get(io.EPS_ENV) or FIGURE_EPS_TAIL)
        policy = TruncationPolicy(eps_tail=eps)
    base = SplineConfig(N=N, policy=policy)
    pairs = ((0, 0), (1, 0), (0, 1), (1, 1))
    curves = []
    if preset == "fig1":
        for I2 in (0, 1):
            curves.append((f"T{I2}_{(N - 1) // 2}", trig_polynomial_spline(N, I2, y)))
        for I1, I2 in pairs:
            curves.append((f"St_{I1}_{I2}_1_0", build_spline(replace(base, I1=I1, I2=I2, r=1), y)))
    elif preset == "fig2":
        for I1, I2 in pairs:
            curves.append((f"St_{I1}_{I2}_2_0", build_spline(replace(base, I1=I1, I2=I2, r=2), y)))
    elif preset == "fig3":
        for r in range(1, 6):
            curves.append((f"St_0_0_{r}_0", build_spline(replace(base, r=r), y)))
    elif preset == "fig4":
        vec = ParamVectors((1.5, 0.5, -1.0), (1.0, 0.5, 0.5))
        for I1, I2 in pairs:
            curves.append((f"St_{I1}_{I2}_1_0_general",
                           build_spline(replace(base, I1=I1, I2=I2, r=1, vectors=vec), y)))
    else:
        raise UsageError(f"unknown preset {preset!r}; use fig1, fig2, fig3 or fig4")
    return curves


def cmd_figure(preset, out_dir, count=600, data_path=None, out=None) -> int:
    out = out or sys.stdout
    if count < 2:
        raise UsageError(f"count must be >= 2, got {count}")
    values = EXAMPLE_DATA if data_path is None else io.load_data(data_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ts = TWO_PI * np.arange(count) / count
    for name, spline in figure_curves(preset, values):
        path = out_dir / f"{preset}_{name}.csv"
        io.write_samples(path, ts, spline.evaluate_many(ts))
        print(path, file=out)
    return EXIT_OK


def _triple(text):
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trigspline", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpolate", help="build a spline document from config + data")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sample", help="sample a spline document to CSV")
    p.add_argument("--spline", required=True)
    p.add_argument("--from", dest="t_from", type=float, default=0.0)
    p.add_argument("--to", dest="t_to", type=float, default=TWO_PI)
    p.add_argument("--count", type=int, default=600)
    p.add_argument("--out", required=True)

    p = sub.add_parser("compare", help="compare against the polynomial analogue")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--oracle", choices=sorted(ORACLE_ORDER), required=True)
    p.add_argument("--samples", type=int, default=10_000)

    p = sub.add_parser("factors", help="tabulate nu_k, hc_k, hs_k")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--I1", type=int, default=0)
    p.add_argument("--I2", type=int, default=0)
    p.add_argument("--gamma", type=_triple, default=[1.0, 1.0, 1.0])
    p.add_argument("--eta", type=_triple, default=[1.0, 1.0, 1.0])
    p.add_argument("--k-range", dest="k_range", help="e.g. 1..4 (default: all k)")
    p.add_argument("--M", type=int, default=1000)

    p = sub.add_parser("figure", help="write CSV curves for a figure preset")
    p.add_argument("--preset", required=True, choices=["fig1", "fig2", "fig3", "fig4"])
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--count", type=int, default=600)
    p.add_argument("--data", help="data CSV (default: the nine-point example)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "interpolate":
            return cmd_interpolate(args.config, args.data, args.out)
        if args.command == "sample":
            return cmd_sample(args.spline, args.t_from, args.t_to, args.count, args.out)
        if args.command == "compare":
            return cmd_compare(args.config, args.data, args.oracle, args.samples)
        if args.command == "factors":
            return cmd_factors(args.N, args.r, args.I1, args.I2, args.gamma, args.eta,
                               args.k_range, args.M)
        return cmd_figure(args.preset, args.out, args.count, args.data)
    except (ValueError, OSError) as exc:
        print(f"trigspline: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
