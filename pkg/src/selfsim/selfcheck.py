"""Fast built-in checks with exactly known answers (run by ``selfsim selfcheck``)."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .fbm import FbmSpec, fbm_covariance, reversed_increment_path, sample_fbm
from .hull import (
    contains_origin_interior,
    hull_2d,
    hull_functionals,
    incremental_hull_timeline,
    staircase_fraction,
)
from .process import Path, TimeGrid, lamperti_forward, lamperti_inverse, uniform_grid
from .stable import SpectralMeasure, StableSpec, check_nondegenerate_stable, quadrant_mass, sample_lepage
from .stats import ks_two_sample
from .winding import sweep_near_zero, unwrap_argument


def _spiral(times):
    t = np.asarray(times, dtype=np.float64)
    return np.column_stack([t * np.cos(np.log(t)), t * np.sin(np.log(t))])


def _check_lamperti_roundtrip():
    g = TimeGrid([0.5, 1.0, 2.0, 4.0])
    p = Path(g, np.arange(8.0).reshape(4, 2) - 3.0)
    back = lamperti_inverse(lamperti_forward(p, 0.7))
    return np.allclose(back.points, p.points, rtol=1e-12, atol=0)


def _check_fbm_kernel():
    return fbm_covariance(1.0, 1.0, 0.5) == 1.0 and math.isclose(fbm_covariance(2.0, 1.0, 0.5), 1.0)


def _check_fbm_start():
    path = sample_fbm(FbmSpec(0.7, 2), uniform_grid(16), seed=1)
    return np.all(path.points[0] == 0.0)


def _check_reversal_twice():
    path = sample_fbm(FbmSpec(0.5, 2), uniform_grid(8), seed=2)
    twice = reversed_increment_path(reversed_increment_path(path))
    return np.allclose(twice.points, path.points, rtol=0, atol=1e-12)


def _check_lepage_single_jump():
    spec = StableSpec(0.5, SpectralMeasure.discrete([[1.0]]), truncation=1)
    x = sample_lepage(spec, TimeGrid([0.0, 0.5, 1.0]), seed=3).points[:, 0]
    return x[0] == 0.0 and np.all(np.diff(x) >= 0) and x[-1] > 0


def _check_spectral():
    axes = SpectralMeasure.symmetric_axes(2)
    line = SpectralMeasure.discrete([[1.0, 0.0], [-1.0, 0.0]])
    return (check_nondegenerate_stable(axes) and not check_nondegenerate_stable(line)
            and quadrant_mass(SpectralMeasure.uniform_sphere(2), (0, 1)) == 0.25)


def _check_square_hull():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)]
    snap = hull_2d(sq)
    f = hull_functionals(snap)
    return len(snap) == 4 and f.area == 1.0 and f.perimeter == 4.0


def _check_origin_tests():
    return (contains_origin_interior([(1, 0), (-1, 1), (-1, -1)], cross_check=True)
            and not contains_origin_interior([(0, 0), (1, 0), (0, 1), (1, 1)], cross_check=True)
            and not contains_origin_interior([(1, 0), (-1, 0)]))


def _check_circle_staircase():
    ang = np.linspace(0, 1.5 * math.pi, 257)
    path = Path(uniform_grid(256), np.column_stack([np.cos(ang), np.sin(ang)]))
    return staircase_fraction(incremental_hull_timeline(path)) == 1.0


def _check_spiral_winding():
    times = np.exp(np.linspace(-4, 0, 4 * 64 + 1))
    recs = sweep_near_zero(Path(TimeGrid(times), _spiral(times)), 1.0,
                           [math.exp(-k) for k in range(1, 5)])
    return all(abs(r.nu - (k + 1)) < 1e-9 for k, r in enumerate(recs))


def _check_circle_winding():
    ang = np.linspace(0, 2 * math.pi, 65)
    path = Path(uniform_grid(64), np.column_stack([np.cos(ang), np.sin(ang)]))
    th = unwrap_argument(path).theta
    return abs(th[-1] - th[0] - 2 * math.pi) < 1e-12


def _check_ks():
    return (ks_two_sample([1, 2, 3], [1, 2, 3]).statistic == 0.0
            and ks_two_sample([0.0], [1.0]).statistic == 1.0
            and ks_two_sample([1, 2, 3, 4], [1.5, 2.5]).statistic == 0.5)


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("lamperti round trip", _check_lamperti_roundtrip),
    ("fbm kernel values", _check_fbm_kernel),
    ("fbm starts at origin", _check_fbm_start),
    ("reversal is an involution", _check_reversal_twice),
    ("single-term LePage path", _check_lepage_single_jump),
    ("spectral measure span and mass", _check_spectral),
    ("unit square hull", _check_square_hull),
    ("origin interior tests", _check_origin_tests),
    ("circle staircase fraction", _check_circle_staircase),
    ("spiral winding", _check_spiral_winding),
    ("circle winding", _check_circle_winding),
    ("ks statistic", _check_ks),
]


def run_selfcheck() -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, msg = bool(fn()), ""
        except Exception as exc:  # a crash is a failed check
            ok, msg = False, f"{type(exc).__name__}: {exc}"
        out.append((name, ok, msg))
    return out
