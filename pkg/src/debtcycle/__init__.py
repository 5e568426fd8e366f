"""debtcycle: simulation and analysis engine for leveraged equity recycling.

Closed-form mean dynamics of the coupled equity/mortgage recursion, Monte
Carlo path ensembles, outcome phase diagrams over the (p, s) plane, and
empirical calibration of (p, s) from market data, with country/ownership
presets. Hot kernels are numba-jitted with a pure-numpy fallback (see the
DEBTCYCLE_BACKEND environment variable).
"""

from ._kernels import available_backends, default_backend
from .calibration import (CalibrationPoint, DailyCloseSeries, PEstimate,
                          QuarterDrift, QuarterlyIndexSeries,
                          QuarterPEstimate, SEstimate, Track, build_track,
                          estimate_p, estimate_p_by_quarter, estimate_s)
from .config import DEFAULTS, RunConfig, build_run_config, parse_config
from .errors import (ConfigError, DataError, EngineError, GridRangeError,
                     InsufficientDataError, NearSingularError, ParamError)
from .meanpath import (DEFAULT_HORIZON, SINGULARITY_TOL, ClosedFormCoeffs,
                       EigenSystem, MeanMatrix, Outcome, OutcomeClass,
                       classify_mean, closed_form_coeffs, eigensystem,
                       iterate_mean, mean_matrix, mean_trajectory)
from .montecarlo import (BLOCK_SIZE, EnsembleStats, PathResult, State,
                         simulate_ensemble, simulate_path, step)
from .params import (FiscalParams, LoanParams, MarketParams,
                     annual_to_quarterly)
from .phase import (GridSpec, PhaseCell, PhaseGrid, iso_time_contours,
                    locate_point, sweep)
from .presets import PRESETS, CountryPreset, load_preset
from .shocks import ShockTriple, draw_shocks, path_rng, path_shocks

__version__ = "0.1.0"

__all__ = [
    "annual_to_quarterly", "available_backends", "build_run_config",
    "build_track", "classify_mean", "closed_form_coeffs", "default_backend",
    "draw_shocks", "eigensystem", "estimate_p", "estimate_p_by_quarter",
    "estimate_s", "iso_time_contours", "iterate_mean", "load_preset",
    "locate_point", "mean_matrix", "mean_trajectory", "parse_config",
    "path_rng", "path_shocks", "simulate_ensemble", "simulate_path", "step",
    "sweep",
    "CalibrationPoint", "ClosedFormCoeffs", "ConfigError", "CountryPreset",
    "DailyCloseSeries", "DataError", "EigenSystem", "EngineError",
    "EnsembleStats", "FiscalParams", "GridRangeError", "GridSpec",
    "InsufficientDataError", "LoanParams", "MarketParams", "MeanMatrix",
    "NearSingularError", "Outcome", "OutcomeClass", "ParamError",
    "PathResult", "PEstimate", "PhaseCell", "PhaseGrid", "PRESETS",
    "QuarterDrift", "QuarterlyIndexSeries", "QuarterPEstimate", "RunConfig",
    "SEstimate", "ShockTriple", "State", "Track",
    "BLOCK_SIZE", "DEFAULT_HORIZON", "DEFAULTS", "SINGULARITY_TOL",
]
