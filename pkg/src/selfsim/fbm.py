"""Exact sampling of d-dimensional fractional Brownian motion.

Every linear functional ``<X(t), e>`` of the process is a scalar fBm scaled
by ``sqrt(<Q e, e>)``, so a sample is ``X = K Z A^T`` where ``K`` factors the
scalar covariance kernel on the positive grid times, ``Z`` holds ``d``
independent standard Gaussian columns and ``A A^T = Q``.

The kernel factor is the expensive part (O(n^3)); it is computed once per
``(H, grid)`` and cached read-only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import lapack

from . import rng
from .errors import AsymmetricGrid, FactorizationFailure, InvalidIndex, InvalidSpec
from .process import Path, TimeGrid
from .tolerances import TOLERANCES


def _check_hurst(h: float) -> None:
    if not (np.isfinite(h) and 0 < h < 1):
        raise InvalidIndex(f"Hurst index must lie in (0, 1), got {h}")


def fbm_covariance(t, s, h: float):
    """Scalar fBm kernel ``(t**2h + s**2h - |t - s|**2h) / 2``; broadcasts."""
    _check_hurst(h)
    t = np.asarray(t, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    if np.any(t < 0) or np.any(s < 0):
        raise ValueError("fbm_covariance is defined for t, s >= 0")
    out = 0.5 * (t ** (2 * h) + s ** (2 * h) - np.abs(t - s) ** (2 * h))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class FbmSpec:
    hindex: float
    dim: int = 2
    q: np.ndarray = field(default=None)

    def __post_init__(self):
        _check_hurst(self.hindex)
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidSpec("dim must be a positive integer")
        q = np.eye(self.dim) if self.q is None else np.array(self.q, dtype=np.float64)
        if q.shape != (self.dim, self.dim):
            raise InvalidSpec(f"q must be {self.dim}x{self.dim}")
        if not np.all(np.isfinite(q)):
            raise InvalidSpec("q must be finite")
        if np.max(np.abs(q - q.T)) > TOLERANCES.symmetry * max(1.0, np.max(np.abs(q))):
            raise InvalidSpec("q must be symmetric")
        if np.min(np.linalg.eigvalsh(q)) < -TOLERANCES.psd_eig:
            raise InvalidSpec("q must be positive semidefinite")
        q.setflags(write=False)
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "q", q)

    @classmethod
    def standard(cls, hindex: float, dim: int = 2) -> "FbmSpec":
        """``Q = I``, the convention used for "standard" fBm at every ``H``."""
        return cls(hindex, dim, np.eye(dim))


def check_nondegenerate_fbm(spec: FbmSpec) -> bool:
    sv = np.linalg.svd(spec.q, compute_uv=False)
    if sv[0] == 0:
        return False
    return int(np.sum(sv > TOLERANCES.rank_rel * sv[0])) == spec.dim


def _pivoted_factor(a: np.ndarray, tol: float) -> np.ndarray:
    """Pivoted Cholesky ``F`` with ``F F^T = a`` for PSD ``a`` (rank may be < n)."""
    n = a.shape[0]
    c, piv, rank, info = lapack.dpstrf(np.array(a, order="F"), lower=1, tol=-1.0)
    if info < 0:
        raise FactorizationFailure(f"dpstrf argument error {info}")
    low = np.tril(c)
    low[:, rank:] = 0.0
    f = np.zeros_like(low)
    f[piv - 1, :] = low
    resid = np.max(np.abs(f @ f.T - a)) if n <= 4096 else 0.0
    if resid > tol * max(1.0, np.max(np.abs(np.diag(a)))) * n:
        raise FactorizationFailure(
            "kernel matrix is indefinite beyond tolerance (duplicated grid times?)")
    return f


def mixing_matrix(q: np.ndarray) -> np.ndarray:
    """``A`` with ``A A^T = q``: symmetric square root if full rank, else pivoted Cholesky."""
    w, v = np.linalg.eigh(q)
    if w.min() > TOLERANCES.rank_rel * max(w.max(), 0.0) and w.min() > 0:
        return (v * np.sqrt(w)) @ v.T
    return _pivoted_factor(q, TOLERANCES.psd_eig)


def _kernel_matrix(times: np.ndarray, h: float) -> np.ndarray:
    n = times.size
    k = np.empty((n, n), order="F")
    p = times ** (2 * h)
    block = 1024
    for j0 in range(0, n, block):
        j1 = min(n, j0 + block)
        cols = times[j0:j1]
        d = np.abs(times[:, None] - cols[None, :])
        d **= 2 * h
        d *= -1.0
        d += p[:, None]
        d += p[None, j0:j1]
        d *= 0.5
        k[:, j0:j1] = d
    return k


@lru_cache(maxsize=4)
def _kernel_factor_cached(h: float, times_bytes: bytes) -> np.ndarray:
    times = np.frombuffer(times_bytes, dtype=np.float64)
    k = _kernel_matrix(times, h)
    c, info = lapack.dpotrf(k, lower=1, clean=1, overwrite_a=1)
    if info > 0:
        # near-singular grid: fall back to diagonal pivoting
        f = _pivoted_factor(_kernel_matrix(times, h), TOLERANCES.factor_jitter)
    elif info < 0:
        raise FactorizationFailure(f"dpotrf argument error {info}")
    else:
        f = c
    f.setflags(write=False)
    return f


def kernel_factor(times, h: float) -> np.ndarray:
    """Lower factor ``F`` with ``F F^T = [fbm_covariance(t_i, t_j)]`` (positive times)."""
    _check_hurst(h)
    times = np.ascontiguousarray(times, dtype=np.float64)
    if np.any(times <= 0):
        raise ValueError("kernel factor is built on strictly positive times")
    return _kernel_factor_cached(float(h), times.tobytes())


def clear_kernel_cache() -> None:
    _kernel_factor_cached.cache_clear()


def _standard_normals(seed: int, n: int, d: int) -> np.ndarray:
    bg = rng.bit_generator(seed)
    return rng.normals(bg, n * d).reshape(d, n).T


def sample_fbm_batch(spec: FbmSpec, grid: TimeGrid, seeds: Sequence[int]) -> np.ndarray:
    """Sample one path per seed; returns an array of shape ``(len(seeds), n, d)``.

    Each seed feeds its own Gaussian stream, so a path depends only on its
    seed. The kernel product is done as one matrix multiply over the batch.
    """
    times = grid.times
    if times[0] != 0:
        raise ValueError("fbm grids must start at t = 0")
    pos = times[1:]
    n, d, m = pos.size, spec.dim, len(seeds)
    out = np.zeros((m, n + 1, d))
    if n == 0 or m == 0:
        return out
    f = kernel_factor(pos, spec.hindex)
    z = np.empty((n, m * d))
    for r, seed in enumerate(seeds):
        z[:, r * d:(r + 1) * d] = _standard_normals(seed, n, d)
    y = f @ z
    a = mixing_matrix(spec.q)
    y = y.reshape(n, m, d).transpose(1, 0, 2) @ a.T
    out[:, 1:, :] = y
    return out


def sample_fbm(spec: FbmSpec, grid: TimeGrid, seed: int) -> Path:
    """One fBm path on ``grid`` (which must start at 0); deterministic in ``seed``."""
    return Path(grid, sample_fbm_batch(spec, grid, [seed])[0])


def reversed_increment_path(path: Path) -> Path:
    """``Y(t) = X(1) - X(1 - t)`` on a grid symmetric about 1/2 spanning [0, 1]."""
    t = path.times
    if t[0] != 0 or t[-1] != 1:
        raise AsymmetricGrid("grid must run from 0 to 1")
    if np.max(np.abs(t + t[::-1] - 1.0)) > 1e-12:
        raise AsymmetricGrid("grid is not symmetric under t -> 1 - t")
    x = path.points
    return Path(path.grid, x[-1] - x[::-1])


def fbm_path_source(spec: FbmSpec, seed: int):
    """Callable mapping a grid of positive times to an fBm path on that grid.

    The origin is prepended for sampling and dropped from the result, so the
    same seed gives consistent draws for repeated calls on one grid.
    """
    def source(grid: TimeGrid) -> Path:
        full = TimeGrid(np.concatenate([[0.0], grid.times]))
        return Path(grid, sample_fbm(spec, full, seed).points[1:])
    return source
