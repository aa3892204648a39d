"""Central numerical tolerances.

Every floating comparison in the package reads its threshold from
``TOLERANCES`` so that a single record documents the numerical policy.
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    identity_rel: float = 1e-12      # exact algebraic identities (round trips)
    symmetry: float = 1e-12          # |q - q^T|
    psd_eig: float = 1e-10           # eigenvalues above -psd_eig count as >= 0
    rank_rel: float = 1e-10          # singular values above rank_rel * max count
    unit_norm: float = 1e-12         # spectral atoms and weights
    lp: float = 1e-10                # LP feasibility / boundary band
    min_radius_guard: float = 1e-9   # winding refused below this radius
    factor_jitter: float = 1e-10     # tolerated negative pivot in kernel factorization


TOLERANCES = Tolerances()
