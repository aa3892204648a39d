"""Simulation and geometry of self-similar processes.

Fractional Brownian motion and strictly stable Levy paths, their convex hull
processes, planar winding numbers, and Monte Carlo experiments that test
almost-sure hull and winding behavior at finite resolution.
"""
__version__ = "0.1.0"

from .config import ExperimentConfig, parse_config
from .errors import *  # noqa: F401,F403
from .experiments import ExperimentReport, run_experiment
from .fbm import FbmSpec, fbm_covariance, reversed_increment_path, sample_fbm, sample_fbm_batch
from .hull import (
    HullSnapshot2D,
    HullTimeline,
    contains_origin_interior,
    hull_2d,
    hull_functionals,
    incremental_hull_timeline,
    quadrant_hit_times,
    staircase_fraction,
)
from .lp import origin_test
from .process import (
    Path,
    StationaryPath,
    TimeGrid,
    autocovariance_estimate,
    geometric_grid,
    lamperti_forward,
    lamperti_inverse,
    rescale_self_similar,
    uniform_grid,
)
from .rng import derive_seed
from .stable import (
    SpectralMeasure,
    StableSpec,
    check_nondegenerate_stable,
    quadrant_mass,
    sample_lepage,
    stable_characteristic_function,
    truncation_tail_bound,
)
from .stats import ks_two_sample
from .winding import (
    WindingRecord,
    sweep_at_infinity,
    sweep_near_zero,
    unwrap_argument,
    winding_at_infinity,
    winding_between,
    winding_near_zero,
)
