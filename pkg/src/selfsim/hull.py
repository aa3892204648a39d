"""Convex hull process of a sampled path.

``V(t)`` is the closed convex hull of the path up to time ``t``. In the plane
the hull is tracked exactly (monotone chain with exact orientation signs);
in any dimension the question "is the origin interior to V(t)?" is settled
by the separating-direction LPs in :mod:`selfsim.lp`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .lp import origin_test
from .predicates import _CCW_BOUND, dot_sign, orient, orient_many
from .process import Path, TimeGrid


@dataclass(frozen=True, eq=False)
class HullSnapshot2D:
    """Strict extreme points in counterclockwise order (no collinear vertices)."""

    vertices: np.ndarray

    @property
    def full_dimensional(self) -> bool:
        return self.vertices.shape[0] >= 3

    def __len__(self) -> int:
        return self.vertices.shape[0]

    def vertex_set(self) -> set:
        return {tuple(map(float, v)) for v in self.vertices}


def _chain(pts):
    out = []
    for p in pts:
        while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
            out.pop()
        out.append(p)
    return out


def hull_2d(points) -> HullSnapshot2D:
    """Andrew's monotone chain; collinear and duplicate points are dropped."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError("hull of an empty point set")
    if not np.all(np.isfinite(pts)):
        raise ValueError("coordinates must be finite")
    uniq = sorted(set(map(tuple, pts.tolist())))
    if len(uniq) <= 2:
        return HullSnapshot2D(np.array(uniq, dtype=np.float64))
    lower = _chain(uniq)
    upper = _chain(reversed(uniq))
    verts = lower[:-1] + upper[:-1]
    return HullSnapshot2D(np.array(verts, dtype=np.float64))


def _in_closed_hull(p, verts) -> bool:
    """Exact: ``p`` lies in the closed hull of the strict vertex list ``verts``."""
    h = len(verts)
    if h == 1:
        return p[0] == verts[0][0] and p[1] == verts[0][1]
    if h == 2:
        a, b = verts
        return (orient(a, b, p) == 0 and dot_sign(a, b, p) >= 0
                and dot_sign(b, a, p) >= 0)
    return all(orient(verts[i], verts[(i + 1) % h], p) >= 0 for i in range(h))


def origin_in_hull_interior_2d(snapshot: HullSnapshot2D) -> bool:
    """Exact: origin strictly left of every edge of a full-dimensional hull."""
    v = snapshot.vertices
    if v.shape[0] < 3:
        return False
    o = (0.0, 0.0)
    return all(orient(v[i], v[(i + 1) % len(v)], o) > 0 for i in range(len(v)))


def contains_origin_interior(points, cross_check: bool = False) -> bool:
    """True iff 0 lies in the topological interior of ``conv(points)``.

    Decided by separating-direction LPs (boundary counts as not interior).
    With ``cross_check`` and ``d == 2`` the exact hull verdict must agree.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    verdict = origin_test(pts).interior
    if cross_check and pts.shape[1] == 2:
        exact = origin_in_hull_interior_2d(hull_2d(pts))
        if exact != verdict:
            raise ArithmeticError("LP and exact hull disagree on the origin test")
    return verdict


def quadrant_bits(d: int):
    return list(itertools.product((0, 1), repeat=d))


def quadrant_hit_times(path: Path) -> dict:
    """First grid time at which the path is in each open quadrant ``D_theta``.

    ``theta`` bit 1 means the coordinate is > 0, bit 0 means < 0; quadrants
    never visited map to ``None``.
    """
    x = path.points
    pos, neg = x > 0, x < 0
    out = {}
    for theta in quadrant_bits(path.dim):
        mask = np.all(np.where(np.array(theta, dtype=bool), pos, neg), axis=1)
        hits = np.flatnonzero(mask)
        out[theta] = float(path.times[hits[0]]) if hits.size else None
    return out


def quadrant_witness_points(path: Path):
    """Points at the open-quadrant hit times, or None if some quadrant is missed."""
    hits = quadrant_hit_times(path)
    if any(v is None for v in hits.values()):
        return None
    idx = [path.grid.index_of(t) for t in hits.values()]
    return path.points[idx]


@dataclass(frozen=True)
class HullFunctionals:
    area: float
    perimeter: float
    diameter: float


def hull_functionals(snapshot: HullSnapshot2D) -> HullFunctionals:
    """Area, perimeter and diameter; a 2-vertex hull has perimeter ``2 * length``."""
    v = snapshot.vertices
    h = v.shape[0]
    if h == 1:
        return HullFunctionals(0.0, 0.0, 0.0)
    if h == 2:
        length = float(np.hypot(*(v[1] - v[0])))
        return HullFunctionals(0.0, 2.0 * length, length)
    x, y = v[:, 0], v[:, 1]
    area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    perim = float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))
    diff = v[:, None, :] - v[None, :, :]
    diam = float(np.sqrt(np.max(np.sum(diff * diff, axis=-1))))
    return HullFunctionals(area, perim, diam)


@dataclass(frozen=True, eq=False)
class HullTimeline:
    grid: TimeGrid
    change_flags: np.ndarray
    interior_flags: np.ndarray
    area: np.ndarray | None = None
    perimeter: np.ndarray | None = None
    diameter: np.ndarray | None = None
    final_hull: HullSnapshot2D | None = field(default=None)

    def __len__(self) -> int:
        return self.change_flags.size


def _strictly_inside_fast(chunk: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Points certified strictly inside the CCW polygon by a filtered float test."""
    a = verts
    b = np.roll(verts, -1, axis=0)
    ex = (b[:, 0] - a[:, 0])[None, :]
    ey = (b[:, 1] - a[:, 1])[None, :]
    px = chunk[:, 0:1] - a[None, :, 0]
    py = chunk[:, 1:2] - a[None, :, 1]
    left = ex * py
    right = ey * px
    det = left - right
    bound = _CCW_BOUND * (np.abs(left) + np.abs(right))
    return np.all(det > bound, axis=1)


def _insert_outside(verts: np.ndarray, p: np.ndarray):
    """Hull of a strict CCW polygon (>= 3 vertices) plus ``p``; None if ``p`` is in it.

    The edges that do not have ``p`` strictly on their left form one contiguous
    chain; its inner vertices are dropped and ``p`` is spliced in.
    """
    s = orient_many(verts, np.roll(verts, -1, axis=0), p)
    if np.all(s >= 0):
        return None
    h = s.size
    weak = s <= 0
    b = next(i for i in range(h) if weak[i - 1] and not weak[i])
    a = next(i for i in range(h) if not weak[i - 1] and weak[i])
    keep = [(b + j) % h for j in range((a - b) % h + 1)]
    return np.vstack([p[None, :], verts[keep]])


def _updated_functionals(hull: HullSnapshot2D, old: HullFunctionals, p) -> HullFunctionals:
    """Functionals after inserting ``p``; the diameter only needs pairs through ``p``."""
    v = hull.vertices
    if v.shape[0] < 3:
        return hull_functionals(hull)
    x, y = v[:, 0], v[:, 1]
    area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    perim = float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))
    reach = float(np.max(np.hypot(x - p[0], y - p[1])))
    return HullFunctionals(area, perim, max(old.diameter, reach))


def incremental_hull_timeline(path: Path, functionals: bool = True,
                              chunk: int = 256) -> HullTimeline:
    """Prefix hulls of a planar path.

    ``change_flags[i]`` is true iff ``X(t_i)`` lies strictly outside the hull of
    the earlier points; ``interior_flags[i]`` iff the origin is interior to the
    hull of ``X(t_0..t_i)``. Points certified inside by a vectorized filtered
    test are skipped in bulk; everything else goes through exact predicates.
    """
    if path.dim != 2:
        raise ValueError("incremental_hull_timeline is planar only")
    x = path.points
    n = x.shape[0]
    changed = np.zeros(n, dtype=bool)
    interior = np.zeros(n, dtype=bool)
    area = np.zeros(n) if functionals else None
    perim = np.zeros(n) if functionals else None
    diam = np.zeros(n) if functionals else None

    changed[0] = True
    hull = HullSnapshot2D(x[:1].copy())
    inside_now = False
    fv = HullFunctionals(0.0, 0.0, 0.0)

    i, step = 1, 8
    while i < n:
        if len(hull) >= 3:
            # screen ahead in windows that grow while nothing escapes the hull
            stop = min(n, i + step)
            ok = _strictly_inside_fast(x[i:stop], hull.vertices)
            bad = np.flatnonzero(~ok)
            j = i + (bad[0] if bad.size else stop - i)
            step = 8 if bad.size else min(2 * step, chunk)
            interior[i:j] = inside_now
            if functionals:
                area[i:j], perim[i:j], diam[i:j] = fv.area, fv.perimeter, fv.diameter
            i = j
            if i >= n:
                break
        p = x[i]
        if len(hull) >= 3:
            grown = _insert_outside(hull.vertices, p)
            new = None if grown is None else HullSnapshot2D(grown)
        else:
            verts = [tuple(v) for v in hull.vertices.tolist()]
            new = None if _in_closed_hull(tuple(p), verts) else hull_2d(np.vstack([hull.vertices, p]))
        if new is not None:
            changed[i] = True
            hull = new
            if not inside_now:
                inside_now = origin_in_hull_interior_2d(hull)
            if functionals:
                fv = _updated_functionals(hull, fv, p)
        interior[i] = inside_now
        if functionals:
            area[i], perim[i], diam[i] = fv.area, fv.perimeter, fv.diameter
        i += 1
    return HullTimeline(path.grid, changed, interior, area, perim, diam, hull)


def interior_flags_by_lp(path: Path) -> np.ndarray:
    """Prefix interior flags in any dimension, using monotonicity and bisection."""
    n = len(path)
    first = first_interior_index_by_lp(path)
    flags = np.zeros(n, dtype=bool)
    if first is not None:
        flags[first:] = True
    return flags


def first_interior_index_by_lp(path: Path) -> int | None:
    """Smallest ``i`` with the origin interior to ``conv(X(t_0..t_i))``.

    Prefix hulls are nested, so the flag is monotone and bisection finds the
    same index a linear scan would.
    """
    x = path.points
    n = x.shape[0]
    if not origin_test(x).interior:
        return None
    lo, hi = 0, n - 1  # flag(hi) true
    while lo < hi:
        mid = (lo + hi) // 2
        if origin_test(x[:mid + 1]).interior:
            hi = mid
        else:
            lo = mid + 1
    return lo


def first_interior_time(timeline: HullTimeline) -> float | None:
    hits = np.flatnonzero(timeline.interior_flags)
    return float(timeline.grid.times[hits[0]]) if hits.size else None


def staircase_fraction(timeline: HullTimeline, from_index: int = 0) -> float:
    """Fraction of indices ``>= from_index`` at which the hull changed."""
    n = len(timeline)
    if not 0 <= from_index < n:
        raise ValueError("from_index out of range")
    return float(np.mean(timeline.change_flags[from_index:]))
