"""Strictly alpha-stable Levy paths from a truncated LePage series.

On [0, 1] the process is represented as

    S(t) = c * sum_k Gamma_k**(-1/alpha) * eps_k * 1{eta_k <= t}

with ``Gamma_k`` the arrival times of a unit Poisson process, ``eps_k`` drawn
from the spectral measure and ``eta_k`` uniform on [0, 1]. Only the first
``K`` terms are kept. The three input sequences use separate Philox
substreams, so the first ``K`` terms do not depend on ``K`` and paths with
different truncations of the same seed are coupled term by term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from . import rng
from .errors import AsymmetricMeasure, InvalidAlpha, InvalidSpec
from .process import Path, TimeGrid
from .tolerances import TOLERANCES

_GAMMA_STREAM, _EPS_STREAM, _ETA_STREAM = 0, 1, 2


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Law of the jump directions: finitely many atoms, or uniform on the sphere."""

    kind: str
    dim: int
    atoms: np.ndarray = field(default=None)     # (m, d) unit vectors
    weights: np.ndarray = field(default=None)   # (m,) summing to 1

    def __post_init__(self):
        if self.kind not in ("discrete", "uniform-sphere"):
            raise InvalidSpec(f"unknown spectral measure kind {self.kind!r}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidSpec("dim must be a positive integer")
        if self.kind == "uniform-sphere":
            return
        atoms = np.atleast_2d(np.array(self.atoms, dtype=np.float64))
        w = np.atleast_1d(np.array(self.weights, dtype=np.float64))
        if atoms.shape[1] != self.dim or atoms.shape[0] != w.size or w.size == 0:
            raise InvalidSpec("atoms must be (m, dim) with one weight each")
        if np.any(w <= 0):
            raise InvalidSpec("weights must be positive")
        if abs(w.sum() - 1.0) > TOLERANCES.unit_norm:
            raise InvalidSpec("weights must sum to 1")
        if np.max(np.abs(np.linalg.norm(atoms, axis=1) - 1.0)) > TOLERANCES.unit_norm:
            raise InvalidSpec("atoms must be unit vectors")
        atoms.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", w)

    @classmethod
    def discrete(cls, atoms, weights=None) -> "SpectralMeasure":
        atoms = np.atleast_2d(np.array(atoms, dtype=np.float64))
        if weights is None:
            weights = np.full(atoms.shape[0], 1.0 / atoms.shape[0])
        return cls("discrete", atoms.shape[1], atoms, weights)

    @classmethod
    def uniform_sphere(cls, dim: int) -> "SpectralMeasure":
        return cls("uniform-sphere", dim)

    @classmethod
    def symmetric_axes(cls, dim: int) -> "SpectralMeasure":
        """Equal mass on the ``2 d`` signed coordinate vectors."""
        eye = np.eye(dim)
        return cls.discrete(np.vstack([eye, -eye]))

    def is_symmetric(self) -> bool:
        if self.kind == "uniform-sphere":
            return True
        for v, w in zip(self.atoms, self.weights):
            match = np.all(np.abs(self.atoms + v) <= 1e-12, axis=1)
            if not np.any(match) or abs(self.weights[match].sum() - w) > 1e-12:
                return False
        return True

    def moment(self, theta: np.ndarray, m: int) -> float:
        """``E <eps, theta>**m`` under this measure."""
        theta = np.asarray(theta, dtype=np.float64)
        if self.kind == "discrete":
            return float(np.sum(self.weights * (self.atoms @ theta) ** m))
        if m % 2:
            return 0.0
        # E eps_1**m on S^{d-1}: (m-1)!! / prod_{j < m/2} (d + 2j)
        r = float(np.dot(theta, theta)) ** (m // 2)
        num = 1.0
        for j in range(m // 2):
            num *= (2 * j + 1) / (self.dim + 2 * j)
        return r * num

    def abs_moment(self, theta: np.ndarray, p: float) -> float:
        """``E |<eps, theta>|**p``."""
        theta = np.asarray(theta, dtype=np.float64)
        if self.kind == "discrete":
            return float(np.sum(self.weights * np.abs(self.atoms @ theta) ** p))
        d = self.dim
        log_e = (gammaln((p + 1) / 2) + gammaln(d / 2)
                 - 0.5 * math.log(math.pi) - gammaln((d + p) / 2))
        return float(np.linalg.norm(theta) ** p * math.exp(log_e))

    def signed_moment(self, theta: np.ndarray, p: float) -> float:
        """``E |<eps, theta>|**p sign(<eps, theta>)`` (zero for symmetric measures)."""
        if self.kind == "uniform-sphere":
            return 0.0
        x = self.atoms @ np.asarray(theta, dtype=np.float64)
        return float(np.sum(self.weights * np.abs(x) ** p * np.sign(x)))


@dataclass(frozen=True, eq=False)
class StableSpec:
    alpha: float
    sigma: SpectralMeasure
    scale: float = 1.0
    truncation: int = 10_000

    def __post_init__(self):
        a = self.alpha
        if not (np.isfinite(a) and (0 < a < 1 or 1 < a < 2)):
            raise InvalidAlpha(f"alpha must lie in (0, 1) or (1, 2), got {a}")
        if not self.scale > 0:
            raise InvalidSpec("scale must be > 0")
        if int(self.truncation) != self.truncation or self.truncation < 1:
            raise InvalidSpec("truncation must be a positive integer")
        if a > 1 and not self.sigma.is_symmetric():
            raise AsymmetricMeasure("alpha > 1 requires a symmetric spectral measure")
        object.__setattr__(self, "truncation", int(self.truncation))

    @property
    def dim(self) -> int:
        return self.sigma.dim

    @property
    def hindex(self) -> float:
        return 1.0 / self.alpha


@dataclass(frozen=True, eq=False)
class LePageEvents:
    """The ``K`` retained series terms: jump times, jump vectors and arrivals."""

    eta: np.ndarray      # (K,)
    jumps: np.ndarray    # (K, d), already scaled by c * Gamma_k**(-1/alpha)
    gammas: np.ndarray   # (K,)


def _alias_table(weights: np.ndarray):
    """Walker/Vose alias table."""
    m = weights.size
    prob = weights * m
    alias = np.zeros(m, dtype=np.int64)
    small = [i for i in range(m) if prob[i] < 1.0]
    large = [i for i in range(m) if prob[i] >= 1.0]
    prob = prob.copy()
    while small and large:
        s, l = small.pop(), large.pop()
        alias[s] = l
        prob[l] -= 1.0 - prob[s]
        (small if prob[l] < 1.0 else large).append(l)
    for i in small + large:
        prob[i] = 1.0
    return prob, alias


def _directions(sigma: SpectralMeasure, bg, k: int) -> np.ndarray:
    if sigma.kind == "uniform-sphere":
        g = rng.normals(bg, k * sigma.dim).reshape(k, sigma.dim)
        return g / np.linalg.norm(g, axis=1, keepdims=True)
    prob, alias = _alias_table(sigma.weights)
    m = prob.size
    x = rng.uniforms(bg, k) * m
    col = np.minimum(x.astype(np.int64), m - 1)
    idx = np.where(x - col < prob[col], col, alias[col])
    return sigma.atoms[idx]


def lepage_events(spec: StableSpec, seed: int) -> LePageEvents:
    k = spec.truncation
    gam = np.cumsum(rng.exponentials(rng.bit_generator(seed, _GAMMA_STREAM), k))
    eps = _directions(spec.sigma, rng.bit_generator(seed, _EPS_STREAM), k)
    eta = rng.uniforms(rng.bit_generator(seed, _ETA_STREAM), k)
    jumps = spec.scale * gam[:, None] ** (-1.0 / spec.alpha) * eps
    return LePageEvents(eta, jumps, gam)


def path_from_events(events: LePageEvents, grid: TimeGrid) -> Path:
    """Right-continuous step path: sum of jumps with ``eta_k <= t`` at each grid time."""
    order = np.argsort(events.eta, kind="stable")
    eta = events.eta[order]
    csum = np.vstack([np.zeros((1, events.jumps.shape[1])),
                      np.cumsum(events.jumps[order], axis=0)])
    counts = np.searchsorted(eta, grid.times, side="right")
    return Path(grid, csum[counts])


def sample_lepage(spec: StableSpec, grid: TimeGrid, seed: int) -> Path:
    """Truncated LePage path on ``grid`` (a subset of [0, 1] starting at 0)."""
    t = grid.times
    if t[0] != 0 or t[-1] > 1:
        raise ValueError("LePage grids must lie in [0, 1] and start at 0")
    return path_from_events(lepage_events(spec, seed), grid)


def sample_lepage_batch(spec: StableSpec, grid: TimeGrid, seeds: Sequence[int]) -> np.ndarray:
    return np.stack([sample_lepage(spec, grid, s).points for s in seeds])


def check_nondegenerate_stable(sigma: SpectralMeasure) -> bool:
    """True iff the support of ``sigma`` spans the whole space."""
    if sigma.kind == "uniform-sphere":
        return True
    sv = np.linalg.svd(sigma.atoms, compute_uv=False)
    return int(np.sum(sv > TOLERANCES.rank_rel * sv[0])) == sigma.dim


def quadrant_mass(sigma: SpectralMeasure, theta: Sequence[int]) -> float:
    """``sigma`` mass of the closed quadrant ``D_theta`` (bit 1: >= 0, bit 0: <= 0)."""
    theta = np.asarray(theta)
    if theta.size != sigma.dim or not np.all((theta == 0) | (theta == 1)):
        raise ValueError("theta must be a 0/1 sequence of length dim")
    if sigma.kind == "uniform-sphere":
        return 2.0 ** -sigma.dim
    signs = np.where(theta == 1, 1.0, -1.0)
    inside = np.all(sigma.atoms * signs >= 0, axis=1)
    return float(sigma.weights[inside].sum())


def _tail_moment_sum(k: int, beta: float) -> float:
    """``sum_{j > k} E Gamma_j**(-beta)`` for ``beta > 1``; inf if a term diverges.

    ``E Gamma_j**(-beta) = Gamma(j - beta) / Gamma(j)`` and the sum telescopes
    to ``Gamma(k + 1 - beta) / ((beta - 1) Gamma(k))``.
    """
    if k + 1 - beta <= 0:
        return math.inf
    return math.exp(gammaln(k + 1 - beta) - gammaln(k)) / (beta - 1.0)


def truncation_tail_bound(spec: StableSpec, confidence: float = 0.99) -> float:
    """Bound on ``sup_t |discarded tail|`` holding with probability >= ``confidence``.

    alpha < 1: the tail is dominated by ``c * sum_{k>K} Gamma_k**(-1/alpha)``;
    Markov's inequality on its exact mean gives the bound.
    alpha > 1 (symmetric measure): the tail is a martingale in ``t`` with
    ``E|T(1)|**2 = c**2 sum_{k>K} E Gamma_k**(-2/alpha)``; Doob's L2 maximal
    inequality gives the bound.
    """
    if not 0 < confidence < 1:
        raise ValueError("confidence must lie in (0, 1)")
    k, a, c = spec.truncation, spec.alpha, spec.scale
    if a < 1:
        return c * _tail_moment_sum(k, 1.0 / a) / (1.0 - confidence)
    return c * math.sqrt(_tail_moment_sum(k, 2.0 / a) / (1.0 - confidence))


def _c_alpha(alpha: float) -> float:
    return (1.0 - alpha) / (math.gamma(2.0 - alpha) * math.cos(math.pi * alpha / 2.0))


def stable_characteristic_function(spec: StableSpec, theta) -> complex:
    """Characteristic function of the infinite series ``S(1)`` at ``theta``.

    ``log phi = -(c**alpha / C_alpha) E[|<eps,theta>|**alpha (1 - i sign tan(pi alpha/2))]``
    with ``C_alpha = (1 - alpha) / (Gamma(2 - alpha) cos(pi alpha / 2))``.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    a = spec.alpha
    lam = spec.scale ** a / _c_alpha(a)
    mag = spec.sigma.abs_moment(theta, a)
    skew = spec.sigma.signed_moment(theta, a)
    return complex(np.exp(-lam * (mag - 1j * skew * math.tan(math.pi * a / 2))))


def tail_characteristic_factor(spec: StableSpec, theta, gamma_last) -> np.ndarray:
    """``E[exp(i <theta, T>) | Gamma_K]`` for the discarded tail ``T``.

    Given ``Gamma_K = g`` the later arrivals form a unit Poisson process on
    ``(g, inf)``, so ``log E = int_g^inf E[exp(i a r**(-1/alpha)) - 1] dr``
    with ``a = c <eps, theta>``. Expanding the exponential termwise,

        log E = sum_{m >= 1} i**m E[a**m] g**(1 - m/alpha) / (m! (m/alpha - 1)),

    (odd terms vanish for symmetric measures, which alpha > 1 requires).
    Multiplying ``exp(i <theta, S_K>)`` by this factor gives an unbiased
    estimate of the untruncated characteristic function.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    g = np.asarray(gamma_last, dtype=np.float64)
    a = spec.alpha
    total = np.zeros(g.shape, dtype=np.complex128)
    for m in range(1, 41):
        if m / a <= 1:
            continue  # only m = 1 with alpha > 1, where the moment is zero
        mom = spec.sigma.moment(theta, m) * spec.scale ** m
        if mom == 0.0:
            continue
        coef = (1j ** m) * mom / (math.factorial(m) * (m / a - 1.0))
        term = coef * g ** (1.0 - m / a)
        total += term
        if np.all(np.abs(term) < 1e-18 * np.maximum(1.0, np.abs(total))):
            break
    return np.exp(total)
