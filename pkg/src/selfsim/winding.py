"""Winding of planar paths around the origin.

Between grid points the path is taken to be the straight chord, so each
step contributes the principal angle between consecutive points. That is
well defined as long as no step subtends an angle of pi or more and the
path stays away from the origin; both conditions are enforced.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import AmbiguousStep, OriginTooClose, TimeNotOnGrid
from .process import Path, TimeGrid, geometric_grid
from .tolerances import TOLERANCES


@dataclass(frozen=True, eq=False)
class AngularPath:
    grid: TimeGrid
    theta: np.ndarray    # continuously unwrapped argument, radians
    radius: np.ndarray

    def angle_at(self, t: float) -> float:
        i = self.grid.index_of(t)
        if i is None:
            raise TimeNotOnGrid(f"time {t} is not a grid time")
        return float(self.theta[i])


@dataclass(frozen=True)
class WindingRecord:
    """``nu = arg X(t) - arg X(s)`` in radians, plus sweep statistics.

    ``run_max`` / ``run_min`` are the running extremes of ``nu`` over the
    levels of a sweep up to and including this one; ``min_radius`` is the
    smallest ``|X|`` seen on ``[s, t]``.
    """

    nu: float
    s: float
    t: float
    level: int = 0
    run_max: float = math.nan
    run_min: float = math.nan
    min_radius: float = math.nan

    @property
    def turns(self) -> float:
        return self.nu / (2 * math.pi)


def min_radius(path: Path) -> float:
    return float(np.min(np.linalg.norm(path.points, axis=1)))


def angle_increments(points: np.ndarray) -> np.ndarray:
    """Principal angle from each point to the next, in (-pi, pi]."""
    a, b = points[:-1], points[1:]
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    return np.arctan2(cross, dot)


def unwrap_argument(path: Path, min_radius_guard: float | None = None) -> AngularPath:
    guard = TOLERANCES.min_radius_guard if min_radius_guard is None else min_radius_guard
    if path.dim != 2:
        raise ValueError("winding needs a planar path")
    x = path.points
    r = np.linalg.norm(x, axis=1)
    close = np.flatnonzero(r < guard)
    if close.size:
        i = int(close[0])
        raise OriginTooClose(f"|X| = {r[i]:.3g} < guard {guard:g} at t = {path.times[i]}",
                             index=i, time=float(path.times[i]))
    inc = angle_increments(x)
    amb = np.flatnonzero(np.abs(inc) >= math.pi)
    if amb.size:
        i = int(amb[0])
        raise AmbiguousStep(f"step {i} -> {i + 1} turns by pi; refine the grid",
                            index=i + 1, time=float(path.times[i + 1]))
    theta = np.empty(x.shape[0])
    theta[0] = math.atan2(x[0, 1], x[0, 0])
    np.cumsum(inc, out=theta[1:])
    theta[1:] += theta[0]
    theta.setflags(write=False)
    r.setflags(write=False)
    return AngularPath(path.grid, theta, r)


def winding_between(apath: AngularPath, s: float, t: float) -> WindingRecord:
    if not s < t:
        raise ValueError("need s < t")
    return WindingRecord(apath.angle_at(t) - apath.angle_at(s), float(s), float(t))


def sweep_near_zero(path: Path, t: float, levels: Sequence[float],
                    min_radius_guard: float | None = None) -> list:
    """``nu[s_k, t]`` for decreasing ``s_k``, with running extremes over levels."""
    levels = [float(s) for s in levels]
    if any(s <= 0 for s in levels) or any(b >= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be positive and strictly decreasing")
    if levels[0] >= t:
        raise ValueError("levels must lie below t")
    sub = path.restrict(levels[-1], t)
    try:
        ap = unwrap_argument(sub, min_radius_guard)
    except (OriginTooClose, AmbiguousStep) as err:
        err.level = next(k for k, s in enumerate(levels) if err.time >= s)
        raise
    th_t = ap.angle_at(t)
    out, hi, lo = [], -math.inf, math.inf
    for k, s in enumerate(levels):
        i = ap.grid.index_of(s)
        if i is None:
            raise TimeNotOnGrid(f"level {s} is not a grid time")
        nu = th_t - float(ap.theta[i])
        hi, lo = max(hi, nu), min(lo, nu)
        out.append(WindingRecord(nu, s, float(t), k, hi, lo, float(np.min(ap.radius[i:]))))
    return out


def sweep_at_infinity(path: Path, s: float, levels: Sequence[float],
                      min_radius_guard: float | None = None) -> list:
    """``nu[s, t_k]`` for increasing horizons ``t_k``, with running extremes."""
    levels = [float(t) for t in levels]
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    if levels[0] <= s:
        raise ValueError("levels must lie above s")
    sub = path.restrict(s, levels[-1])
    try:
        ap = unwrap_argument(sub, min_radius_guard)
    except (OriginTooClose, AmbiguousStep) as err:
        err.level = next(k for k, t in enumerate(levels) if err.time <= t)
        raise
    th_s = ap.angle_at(s)
    out, hi, lo = [], -math.inf, math.inf
    for k, t in enumerate(levels):
        i = ap.grid.index_of(t)
        if i is None:
            raise TimeNotOnGrid(f"level {t} is not a grid time")
        nu = float(ap.theta[i]) - th_s
        hi, lo = max(hi, nu), min(lo, nu)
        out.append(WindingRecord(nu, float(s), t, k, hi, lo, float(np.min(ap.radius[:i + 1]))))
    return out


PathSource = Callable[[TimeGrid], Path]


def winding_near_zero(source: PathSource, t: float, levels: Sequence[float],
                      per_unit_log: int = 256,
                      min_radius_guard: float | None = None) -> list:
    """Truncated estimates of ``limsup / liminf_{s -> 0} nu[s, t]``.

    ``source`` maps a grid of positive times to a path on exactly those
    times. The grid is log-uniform on ``[min(levels), t]`` with
    ``per_unit_log`` steps per e-fold, so the resolution is the same at every
    scale, as suits a self-similar process; the levels are grid times.
    """
    grid = geometric_grid(min(levels), t, per_unit_log, include=levels)
    return sweep_near_zero(source(grid), t, levels, min_radius_guard)


def winding_at_infinity(source: PathSource, s: float, levels: Sequence[float],
                        per_unit_log: int = 256,
                        min_radius_guard: float | None = None) -> list:
    """Truncated estimates of ``limsup / liminf_{t -> inf} nu[s, t]``."""
    grid = geometric_grid(s, max(levels), per_unit_log, include=levels)
    return sweep_at_infinity(source(grid), s, levels, min_radius_guard)
