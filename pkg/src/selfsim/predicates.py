"""Exact-sign planar orientation on raw doubles.

A floating evaluation is accepted when it clears Shewchuk's static error
bound; otherwise the determinant is recomputed exactly with ``Fraction``
(every double is a dyadic rational, so this is exact).
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

_EPS = np.finfo(np.float64).eps / 2
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient(a, b, c) -> int:
    """Sign of ``(b - a) x (c - a)``: +1 left turn, -1 right turn, 0 collinear."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    left = (bx - ax) * (cy - ay)
    right = (by - ay) * (cx - ax)
    det = left - right
    bound = _CCW_BOUND * (abs(left) + abs(right))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return _orient_exact(ax, ay, bx, by, cx, cy)


def orient_many(a, b, c) -> np.ndarray:
    """Vectorized :func:`orient`; arguments broadcast to a common shape ``(..., 2)``."""
    a, b, c = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float),
                                  np.asarray(c, float))
    left = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1])
    right = (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])
    det = left - right
    bound = _CCW_BOUND * (np.abs(left) + np.abs(right))
    out = np.where(det > bound, 1, np.where(-det > bound, -1, 0)).astype(np.int8)
    unsure = np.argwhere(np.abs(det) <= bound)
    for idx in map(tuple, unsure):
        out[idx] = _orient_exact(a[idx][0], a[idx][1], b[idx][0], b[idx][1],
                                 c[idx][0], c[idx][1])
    return out


def dot_sign(a, b, c) -> int:
    """Exact sign of ``(b - a) . (c - a)``."""
    ax, ay, bx, by, cx, cy = map(Fraction, (float(a[0]), float(a[1]), float(b[0]),
                                            float(b[1]), float(c[0]), float(c[1])))
    v = (bx - ax) * (cx - ax) + (by - ay) * (cy - ay)
    return (v > 0) - (v < 0)
