"""Counter-based random streams and seed derivation.

All randomness flows through Philox-4x64 keyed by an integer seed. A seed is
any integer in ``[0, 2**128)``; plain 64-bit seeds are a subset. Replicate
seeds are derived injectively by packing ``(master_seed, experiment_id,
replicate)`` into the 128-bit key::

    key = master_seed | experiment_id << 64 | replicate << 96

so distinct triples always select distinct Philox keys, and hence
independent streams, whatever order or thread the replicate runs on.

Uniform variates are built from raw 64-bit words as
``((word >> 11) + 0.5) * 2**-53``, which lies strictly inside (0, 1).
Standard Gaussians are obtained from those uniforms by the inverse normal
CDF (``scipy.special.ndtri``), so a stream of Gaussians is a pure function
of the key on every platform.
"""
from __future__ import annotations

import numpy as np
from scipy.special import ndtri

_MASK64 = (1 << 64) - 1
_MASK32 = (1 << 32) - 1


def derive_seed(master_seed: int, experiment_id: int, replicate: int) -> int:
    if not 0 <= master_seed <= _MASK64:
        raise ValueError("master_seed must be a 64-bit unsigned integer")
    if not 0 <= experiment_id <= _MASK32:
        raise ValueError("experiment_id must fit in 32 bits")
    if not 0 <= replicate <= _MASK32:
        raise ValueError("replicate index must fit in 32 bits")
    return master_seed | (experiment_id << 64) | (replicate << 96)


def bit_generator(seed: int, substream: int = 0) -> np.random.Philox:
    """Philox generator for ``seed``; ``substream`` jumps by 2**128 draws each."""
    seed = int(seed)
    if not 0 <= seed < (1 << 128):
        raise ValueError("seed must lie in [0, 2**128)")
    bg = np.random.Philox(key=seed)
    if substream:
        bg = bg.jumped(substream)
    return bg


def uniforms(bg: np.random.BitGenerator, size) -> np.ndarray:
    raw = bg.random_raw(size)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def normals(bg: np.random.BitGenerator, size) -> np.ndarray:
    return ndtri(uniforms(bg, size))


def exponentials(bg: np.random.BitGenerator, size) -> np.ndarray:
    return -np.log(uniforms(bg, size))
