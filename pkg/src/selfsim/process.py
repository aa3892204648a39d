"""Time grids, sampled paths and the Lamperti transform.

A self-similar process ``X`` of index ``H`` and the stationary process
``L(u) = exp(-H u) X(exp(u))`` determine each other; the functions here move
sampled paths between the two pictures and apply the scaling
``t -> c t, x -> c**H x`` that leaves the law of ``X`` invariant.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    GridMismatch,
    InsufficientSamples,
    InvalidGrid,
    InvalidIndex,
    InvalidScale,
    MalformedPath,
    NonPositiveTime,
)


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeGrid:
    """Strictly increasing, non-negative sample times."""

    times: np.ndarray

    def __post_init__(self):
        t = _frozen(np.atleast_1d(self.times))
        if t.ndim != 1 or t.size < 1:
            raise InvalidGrid("a time grid needs at least one time")
        if not np.all(np.isfinite(t)):
            raise InvalidGrid("grid times must be finite")
        if t[0] < 0:
            raise InvalidGrid("grid times must be >= 0")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise InvalidGrid("grid times must be strictly increasing")
        object.__setattr__(self, "times", t)

    def __len__(self) -> int:
        return self.times.size

    def __eq__(self, other) -> bool:
        return isinstance(other, TimeGrid) and np.array_equal(self.times, other.times)

    __hash__ = None

    def index_of(self, t: float) -> int | None:
        i = int(np.searchsorted(self.times, t))
        if i < self.times.size and self.times[i] == t:
            return i
        return None

    @property
    def positive(self) -> bool:
        return bool(self.times[0] > 0)


def uniform_grid(n: int, horizon: float = 1.0) -> TimeGrid:
    """Grid ``{k * horizon / n : k = 0..n}``: ``n`` steps, ``n + 1`` times.

    With ``n = 2**k`` successive resolutions are nested (dyadic refinement).
    """
    if n < 1:
        raise InvalidGrid("resolution must be >= 1")
    return TimeGrid(np.arange(n + 1, dtype=np.float64) * (horizon / n))


def geometric_grid(t_min: float, t_max: float, per_unit_log: int,
                   include: Sequence[float] = (), with_zero: bool = False) -> TimeGrid:
    """Log-uniform grid on ``[t_min, t_max]`` with ``per_unit_log`` steps per e-fold.

    Times listed in ``include`` are inserted exactly. Constant resolution per
    unit of ``log t`` is what the Lamperti picture calls a uniform grid.
    """
    if not 0 < t_min < t_max:
        raise InvalidGrid("need 0 < t_min < t_max")
    span = np.log(t_max) - np.log(t_min)
    steps = max(1, int(np.ceil(span * per_unit_log)))
    logs = np.linspace(np.log(t_min), np.log(t_max), steps + 1)
    t = np.exp(logs)
    t[0], t[-1] = t_min, t_max
    extra = []
    for x in include:
        if not t_min <= x <= t_max:
            continue
        # snap onto the nearest node when close, so inserted times never crowd it
        i = int(np.argmin(np.abs(logs - np.log(x))))
        if abs(logs[i] - np.log(x)) < 0.25 / per_unit_log and 0 < i < steps:
            t[i] = x
        else:
            extra.append(x)
    t = np.union1d(t, np.asarray(extra, dtype=np.float64))
    if with_zero:
        t = np.concatenate([[0.0], t])
    return TimeGrid(t)


@dataclass(frozen=True, eq=False)
class Path:
    """A trajectory sampled on a grid: ``points[i]`` is ``X(grid.times[i])``."""

    grid: TimeGrid
    points: np.ndarray

    def __post_init__(self):
        p = _frozen(self.points)
        if p.ndim == 1:
            p = _frozen(p.reshape(-1, 1))
        if p.ndim != 2 or p.shape[1] < 1:
            raise MalformedPath("points must be an (n, d) array")
        if p.shape[0] != len(self.grid):
            raise MalformedPath(
                f"{p.shape[0]} points for a grid of {len(self.grid)} times")
        if not np.all(np.isfinite(p)):
            raise MalformedPath("coordinates must be finite")
        object.__setattr__(self, "points", p)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def __len__(self) -> int:
        return self.points.shape[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Path) and self.grid == other.grid
                and np.array_equal(self.points, other.points))

    __hash__ = None

    def positive_part(self) -> "Path":
        """Suffix of the path at strictly positive times."""
        mask = self.times > 0
        return Path(TimeGrid(self.times[mask]), self.points[mask])

    def restrict(self, t_lo: float, t_hi: float) -> "Path":
        mask = (self.times >= t_lo) & (self.times <= t_hi)
        return Path(TimeGrid(self.times[mask]), self.points[mask])


@dataclass(frozen=True, eq=False)
class StationaryPath:
    """Sampled Lamperti process ``L(u)``; ``hindex`` is the ``H`` that produced it."""

    ugrid: np.ndarray
    points: np.ndarray
    hindex: float

    def __post_init__(self):
        u = _frozen(np.atleast_1d(self.ugrid))
        if u.ndim != 1 or u.size < 1:
            raise InvalidGrid("ugrid needs at least one entry")
        if not np.all(np.isfinite(u)):
            raise InvalidGrid("ugrid must be finite")
        if u.size > 1 and not np.all(np.diff(u) > 0):
            raise InvalidGrid("ugrid must be strictly increasing")
        p = _frozen(self.points)
        if p.ndim == 1:
            p = _frozen(p.reshape(-1, 1))
        if p.ndim != 2 or p.shape[0] != u.size:
            raise MalformedPath("one point per ugrid entry required")
        if not np.all(np.isfinite(p)):
            raise MalformedPath("coordinates must be finite")
        if not self.hindex > 0:
            raise InvalidIndex("H must be > 0")
        object.__setattr__(self, "ugrid", u)
        object.__setattr__(self, "points", p)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def _check_h(h: float) -> None:
    if not (np.isfinite(h) and h > 0):
        raise InvalidIndex(f"self-similarity index must be > 0, got {h}")


def lamperti_forward(path: Path, h: float) -> StationaryPath:
    """``L(log t_i) = t_i**(-h) X(t_i)``. Requires every grid time > 0."""
    _check_h(h)
    t = path.times
    if t[0] <= 0:
        raise NonPositiveTime("Lamperti transform needs strictly positive times; "
                              "use path.positive_part()")
    scale = t ** (-h)
    return StationaryPath(np.log(t), path.points * scale[:, None], h)


def lamperti_inverse(lpath: StationaryPath) -> Path:
    """``X(exp u_i) = exp(u_i)**H L(u_i)``."""
    t = np.exp(lpath.ugrid)
    return Path(TimeGrid(t), lpath.points * (t ** lpath.hindex)[:, None])


def rescale_self_similar(path: Path, c: float, h: float) -> Path:
    """Path ``t -> c**h X(t / c)`` sampled on ``c * grid``."""
    if not (np.isfinite(c) and c > 0):
        raise InvalidScale(f"scale must be > 0, got {c}")
    _check_h(h)
    return Path(TimeGrid(path.times * c), path.points * c**h)


def autocovariance_estimate(samples: Sequence[StationaryPath], coordinate: int,
                            lag: float, base: float | None = None) -> float:
    """Empirical ``E[L_j(u0 + lag) L_j(u0)]`` over independent samples.

    ``base`` is ``u0``; it defaults to the first ugrid entry. Both ``u0`` and
    ``u0 + lag`` must be ugrid entries (matched to 1e-12 absolute).
    """
    if len(samples) < 2:
        raise InsufficientSamples("need at least two samples")
    ugrid = samples[0].ugrid
    for s in samples[1:]:
        if not np.array_equal(s.ugrid, ugrid):
            raise GridMismatch("all samples must share one ugrid")
    u0 = ugrid[0] if base is None else base

    def locate(u):
        i = int(np.argmin(np.abs(ugrid - u)))
        if abs(ugrid[i] - u) > 1e-12 * max(1.0, abs(u)):
            raise GridMismatch(f"u = {u} is not on the ugrid")
        return i

    i0, i1 = locate(u0), locate(u0 + lag)
    vals = np.array([s.points[i1, coordinate] * s.points[i0, coordinate] for s in samples])
    return float(vals.mean())
