"""Independent reference computations used by the test-suite.

These are deliberately naive: brute force over all candidates, exact
rational arithmetic, or dense sampling. None of them calls the code under
test except the orientation predicate, which has its own exact tests.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from selfsim.predicates import orient_many


def orient_fraction(a, b, c) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(float(v)) for v in (*a, *b, *c))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def brute_hull_vertices(points, exact_floats: bool = False) -> set:
    """Strict hull vertices: ``p`` is one iff some other point ``a`` gives a line
    through ``p`` with every other point strictly left of ``p -> a`` or on the
    open ray from ``p`` towards ``a``.

    With ``exact_floats`` the coordinates are assumed to make plain float
    cross products exact (small dyadic lattices); otherwise the filtered
    orientation predicate decides each sign.
    """
    uniq = np.array(sorted(set(map(tuple, np.asarray(points, float).tolist()))))
    n = uniq.shape[0]
    if n <= 2:
        return set(map(tuple, uniq.tolist()))
    out = set()
    for i in range(n):
        p = uniq[i]
        others = np.delete(uniq, i, axis=0)
        rel = others - p
        if exact_floats:
            s = np.sign(np.outer(rel[:, 0], rel[:, 1]) - np.outer(rel[:, 1], rel[:, 0]))
        else:
            m = others.shape[0]
            aa = np.broadcast_to(others[:, None, :], (m, m, 2))
            ww = np.broadcast_to(others[None, :, :], (m, m, 2))
            s = orient_many(np.broadcast_to(p, (m, m, 2)), aa, ww)
        dots = rel @ rel.T
        ok = (s > 0) | ((s == 0) & (dots > 0))
        if np.any(np.all(ok, axis=1)):
            out.add(tuple(p.tolist()))
    return out


def closed_in_polygon_fraction(p, verts) -> bool:
    """Exact closed-polygon membership for a CCW strict polygon (>= 3 vertices)."""
    h = len(verts)
    return all(orient_fraction(verts[i], verts[(i + 1) % h], p) >= 0 for i in range(h))


def candidate_directions(unit: np.ndarray, n_random: int, rng) -> np.ndarray:
    """Directions on which a supporting hyperplane through 0 must lie if one exists."""
    d = unit.shape[1]
    cands = [np.eye(d), -np.eye(d)]
    if d == 2:
        perp = np.column_stack([-unit[:, 1], unit[:, 0]])
        cands += [perp, -perp]
    elif d == 3:
        cr = np.cross(unit[:, None, :], unit[None, :, :]).reshape(-1, 3)
        cands += [cr, -cr]
    g = rng.standard_normal((n_random, d))
    cands.append(g)
    u = np.vstack(cands)
    norms = np.linalg.norm(u, axis=1)
    u = u[norms > 1e-12]
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def sampled_interior_margin(points, n_random: int = 100_000, seed: int = 0) -> float:
    """``min_u max_i <x_i/|x_i|, u>`` over candidate and random unit directions.

    Positive: origin interior. Negative: strictly separated. Near zero:
    boundary band (the origin is on, or extremely near, the hull boundary).
    """
    x = np.asarray(points, float)
    x = x[np.linalg.norm(x, axis=1) > 0]
    if x.shape[0] == 0:
        return -1.0
    unit = x / np.linalg.norm(x, axis=1, keepdims=True)
    if np.linalg.matrix_rank(unit) < unit.shape[1]:
        return -1.0  # a proper subspace never has the origin in its interior
    rng = np.random.default_rng(seed)
    u = candidate_directions(unit, n_random, rng)
    best = math.inf
    for chunk in np.array_split(u, max(1, u.shape[0] // 20000)):
        best = min(best, float(np.min(np.max(chunk @ unit.T, axis=1))))
    return best


def brute_ks(a, b) -> float:
    """Sup of |F_a - F_b| evaluated at every sample point, by direct counting."""
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    best = 0.0
    for x in a + b:
        fa = sum(v <= x for v in a) / len(a)
        fb = sum(v <= x for v in b) / len(b)
        best = max(best, abs(fa - fb))
    return best


def lamperti_autocov_from_kernel(h: float, u0: float, lag: float) -> float:
    """``E L(u0 + lag) L(u0)`` straight from the fBm kernel."""
    t, s = math.exp(u0 + lag), math.exp(u0)
    k = 0.5 * (t ** (2 * h) + s ** (2 * h) - abs(t - s) ** (2 * h))
    return k * math.exp(-h * (2 * u0 + lag))


def quadrant_cover(d: int):
    return list(product((0, 1), repeat=d))
