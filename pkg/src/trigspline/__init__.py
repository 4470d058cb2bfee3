"""Periodic trigonometric interpolation splines given by a single Fourier series."""
from .grid import Grid, TrigCoefficients, build_grid, eval_trig_poly, trig_coefficients
from .kernel import (FrequencyTerm, ParamVectors, TruncationPolicy, choose_truncation,
                     convergence_factor, fold_block, interp_factor)
from .spline import (SplineConfig, TrigSpline, build_spline, differintegrate, evaluate,
                     evaluate_many, map_domain, spectrum, stitching_grid,
                     truncation_error_bound)

__all__ = [
    "Grid", "TrigCoefficients", "build_grid", "eval_trig_poly", "trig_coefficients",
    "FrequencyTerm", "ParamVectors", "TruncationPolicy", "choose_truncation",
    "convergence_factor", "fold_block", "interp_factor",
    "SplineConfig", "TrigSpline", "build_spline", "differintegrate", "evaluate",
    "evaluate_many", "map_domain", "spectrum", "stitching_grid", "truncation_error_bound",
]
