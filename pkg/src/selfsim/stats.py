"""Two-sample Kolmogorov-Smirnov test and small Monte Carlo summaries."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kolmogorov

from .errors import EmptySample


@dataclass(frozen=True)
class KSResult:
    statistic: float
    p_value: float


def ks_two_sample(a, b) -> KSResult:
    """Exact sup-distance between the empirical CDFs; asymptotic p-value.

    The p-value is ``Q_KS(sqrt(n m / (n + m)) * D)`` with ``Q_KS`` the
    Kolmogorov survival function.
    """
    a = np.sort(np.asarray(a, dtype=np.float64).ravel())
    b = np.sort(np.asarray(b, dtype=np.float64).ravel())
    n, m = a.size, b.size
    if n == 0 or m == 0:
        raise EmptySample("both samples must be non-empty")
    pooled = np.concatenate([a, b])
    fa = np.searchsorted(a, pooled, side="right") / n
    fb = np.searchsorted(b, pooled, side="right") / m
    d = float(np.max(np.abs(fa - fb)))
    en = math.sqrt(n * m / (n + m))
    return KSResult(d, float(kolmogorov(en * d)))


def binomial_se(p: float, n: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / n) if n else math.nan


def mean_se(x) -> tuple:
    x = np.asarray(x, dtype=np.float64)
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else math.nan


def sample_skewness(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    c = x - x.mean()
    return float(np.mean(c**3) / np.mean(c**2) ** 1.5)


def sample_excess_kurtosis(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    c = x - x.mean()
    return float(np.mean(c**4) / np.mean(c**2) ** 2 - 3.0)
