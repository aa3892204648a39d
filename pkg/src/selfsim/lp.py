"""Separating-direction linear programs for the origin-interior test.

The origin is interior to ``conv(x_1..x_n)`` iff no ``u != 0`` satisfies
``<x_i, u> <= 0`` for every ``i``. For each signed unit vector ``c = +-e_j``
we solve

    max <c, u>  s.t.  <x_i, u> <= 0,  -1 <= u_j <= 1,

through its dual, ``min sum(p + q)`` s.t. ``sum_i lam_i x_i + p - q = c``
with ``lam, p, q >= 0``. The dual tableau has only ``d`` rows, so every
pivot costs ``O(n d)``. Some primal optimum is 1 exactly when a separating
direction exists, and every optimum is 0 when the origin is interior.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tolerances import TOLERANCES

_PIVOT_TOL = 1e-12


@dataclass
class LPSolution:
    value: float
    direction: np.ndarray        # optimal primal u
    multipliers: np.ndarray      # lam (one per input point)
    iterations: int


def _solve_dual(x: np.ndarray, c: np.ndarray, max_iter: int = 10_000) -> LPSolution:
    n, d = x.shape
    width = n + 2 * d
    # columns: lam_0..lam_{n-1}, p_0..p_{d-1}, q_0..q_{d-1}
    cost = np.concatenate([np.zeros(n), np.ones(2 * d)])
    basis = np.array([n + j if c[j] >= 0 else n + d + j for j in range(d)])
    sign = np.where(c >= 0, 1.0, -1.0)
    tab = np.empty((d, width))
    tab[:, :n] = x.T * sign[:, None]
    tab[:, n:n + d] = np.diag(sign)
    tab[:, n + d:] = -np.diag(sign)
    rhs = np.abs(c).astype(np.float64)

    degenerate_run = 0
    it = 0
    for it in range(1, max_iter + 1):
        reduced = cost - cost[basis] @ tab
        candidates = np.flatnonzero(reduced < -_PIVOT_TOL)
        if candidates.size == 0:
            break
        bland = degenerate_run > 20
        enter = candidates[0] if bland else candidates[np.argmin(reduced[candidates])]
        col = tab[:, enter]
        rows = np.flatnonzero(col > _PIVOT_TOL)
        if rows.size == 0:
            raise ArithmeticError("dual LP unbounded; primal infeasible (cannot happen)")
        ratios = rhs[rows] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + _PIVOT_TOL * max(1.0, best)]
        leave = ties[np.argmin(basis[ties])]
        degenerate_run = degenerate_run + 1 if best <= _PIVOT_TOL else 0
        piv = tab[leave, enter]
        tab[leave] /= piv
        rhs[leave] /= piv
        for r in range(d):
            if r != leave and tab[r, enter] != 0.0:
                f = tab[r, enter]
                tab[r] -= f * tab[leave]
                rhs[r] -= f * rhs[leave]
        rhs[rhs < 0] = 0.0
        basis[leave] = enter
    else:
        raise ArithmeticError("simplex iteration limit reached")

    # the p-block columns of B^{-1} M are B^{-1} itself
    binv = tab[:, n:n + d]
    direction = cost[basis] @ binv
    lam = np.zeros(n)
    for r, j in enumerate(basis):
        if j < n:
            lam[j] = rhs[r]
    return LPSolution(float(cost[basis] @ rhs), direction, lam, it)


@dataclass
class OriginTest:
    interior: bool
    direction: np.ndarray | None = None       # separating u when not interior
    combinations: list = field(default_factory=list)  # (c, lam) with sum lam x_hat = c
    unit_points: np.ndarray | None = None


def origin_test(points, tol: float | None = None) -> OriginTest:
    """Run the ``2 d`` LPs and return the verdict together with its certificate."""
    tol = TOLERANCES.lp if tol is None else tol
    x = np.atleast_2d(np.asarray(points, dtype=np.float64))
    d = x.shape[1]
    norms = np.linalg.norm(x, axis=1)
    x = x[norms > 0] / norms[norms > 0, None]
    if x.shape[0] == 0:
        return OriginTest(False, np.eye(d)[0], unit_points=x)
    combos = []
    for j in range(d):
        for s in (1.0, -1.0):
            c = np.zeros(d)
            c[j] = s
            sol = _solve_dual(x, c)
            if sol.value > tol:
                u = sol.direction
                return OriginTest(False, u / np.max(np.abs(u)), unit_points=x)
            combos.append((c, sol.multipliers))
    return OriginTest(True, None, combos, unit_points=x)
