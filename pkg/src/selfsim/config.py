"""Experiment configuration and its flat ``key = value`` file format.

One experiment per file. Blank lines and ``#`` comments are ignored; lists
are comma separated and matrices use ``;`` between rows::

    experiment = interior_prob
    generator = fbm
    hindex = 0.5
    dim = 2
    resolution = 4096
    coarse_resolution = 64
    replicates = 2000
    master_seed = 20261015
    threshold = 0.99
"""
from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, fields

import numpy as np

from .errors import ConfigError
from .fbm import FbmSpec
from .stable import SpectralMeasure, StableSpec

EXPERIMENTS = (
    "interior_prob",
    "endpoint_interior",
    "staircase",
    "winding_growth",
    "self_similarity_ks",
    "reversibility_ks",
    "stationarity_ks",
    "stable_cf",
)
GENERATORS = ("fbm", "stable", "circle", "spiral", "ray")
SIGMA_KINDS = ("uniform-sphere", "axes", "one-sided", "atoms")


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    generator: str = "fbm"
    # generator parameters
    hindex: float = 0.5
    dim: int = 2
    q: tuple | None = None              # row-major d*d entries; None means identity
    alpha: float = 1.5
    sigma: str = "uniform-sphere"
    sigma_atoms: tuple | None = None    # row-major m*d entries when sigma = atoms
    sigma_weights: tuple | None = None
    scale: float = 1.0
    truncation: int = 10_000
    # grid
    resolution: int = 1024              # steps on [0, horizon]
    coarse_resolution: int = 64
    horizon: float = 1.0
    # Monte Carlo
    replicates: int = 100
    master_seed: int = 0
    block_size: int = 64
    workers: int = 1
    # verdict thresholds
    threshold: float | None = None      # interior 0.99, endpoint 0.95 when unset
    growth_threshold: float = 0.9       # winding growth fraction
    ks_level: float = 0.01
    se_multiplier: float = 4.0
    spitzer_band: tuple = (0.5, 1.5)
    spitzer_check: bool = False
    cross_check: bool = True            # exact 2D hull check of the LP verdict
    # experiment parameters
    c_values: tuple = (0.5, 2.0)
    t0: float = 0.5
    levels: int = 8
    per_unit_log: int = 256
    u_values: tuple = (0.5, 1.0, 2.0)
    stationarity_times: tuple = (0.25, 1.0)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.generator not in GENERATORS:
            raise ConfigError(f"unknown generator {self.generator!r}")
        if self.sigma not in SIGMA_KINDS:
            raise ConfigError(f"unknown spectral measure {self.sigma!r}")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if self.resolution < 2 or self.coarse_resolution < 1:
            raise ConfigError("resolution must be >= 2")
        if self.block_size < 1 or self.workers < 1:
            raise ConfigError("block_size and workers must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        if self.levels < 1 or self.per_unit_log < 1:
            raise ConfigError("levels and per_unit_log must be >= 1")
        if self.generator == "stable" and self.horizon != 1.0:
            raise ConfigError("LePage paths live on [0, 1]; horizon must be 1")
        needs_planar = ("staircase", "winding_growth")
        if self.experiment in needs_planar and self.dim != 2:
            raise ConfigError(f"{self.experiment} needs dim = 2")
        if self.experiment == "winding_growth" and self.generator == "stable":
            raise ConfigError("winding needs continuous paths; use an fbm generator")
        if self.experiment == "stable_cf" and self.generator != "stable":
            raise ConfigError("stable_cf needs the stable generator")
        if self.experiment == "endpoint_interior" and self.horizon != 1.0:
            raise ConfigError("endpoint_interior runs on [0, 1]")
        if self.threshold is None:
            default = 0.95 if self.experiment == "endpoint_interior" else 0.99
            object.__setattr__(self, "threshold", default)
        if self.generator in ("fbm", "stable"):
            try:
                self.build_spec()
            except ConfigError:
                raise
            except Exception as exc:  # invalid parameters surface as config errors
                raise ConfigError(str(exc)) from None

    @property
    def experiment_id(self) -> int:
        return EXPERIMENTS.index(self.experiment)

    def build_spec(self):
        if self.generator == "fbm":
            q = None
            if self.q is not None:
                q = np.asarray(self.q, dtype=np.float64).reshape(self.dim, self.dim)
            return FbmSpec(self.hindex, self.dim, q)
        if self.generator == "stable":
            return StableSpec(self.alpha, self.spectral_measure(), self.scale, self.truncation)
        return None

    def spectral_measure(self) -> SpectralMeasure:
        d = self.dim
        if self.sigma == "uniform-sphere":
            return SpectralMeasure.uniform_sphere(d)
        if self.sigma == "axes":
            return SpectralMeasure.symmetric_axes(d)
        if self.sigma == "one-sided":
            return SpectralMeasure.discrete(np.eye(d)[:1])
        if self.sigma_atoms is None:
            raise ConfigError("sigma = atoms needs sigma_atoms")
        atoms = np.asarray(self.sigma_atoms, dtype=np.float64).reshape(-1, d)
        return SpectralMeasure.discrete(atoms, self.sigma_weights)

    @property
    def self_similarity_index(self) -> float:
        return 1.0 / self.alpha if self.generator == "stable" else self.hindex

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


_FLOAT_KEYS = ("threshold",)


def _parse_value(raw: str, default):
    raw = raw.strip()
    if isinstance(default, bool):
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    if isinstance(default, int):
        return int(raw, 0)
    if isinstance(default, float):
        return float(raw)
    if isinstance(default, tuple) or default is None:
        if raw.lower() in ("", "none"):
            return None
        return tuple(float(x) for x in raw.replace(";", ",").split(",") if x.strip())
    return raw


def parse_config(text: str, **overrides) -> ExperimentConfig:
    """Parse the flat key-value format; ``overrides`` win over file values."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",),
                                       comment_prefixes=("#",), interpolation=None)
    try:
        parser.read_string("[experiment]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    section = parser["experiment"]
    known = {f.name: f for f in fields(ExperimentConfig)}
    values = {}
    for key, raw in section.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        f = known[key]
        default = f.default if f.default is not dataclasses.MISSING else ""
        if key in _FLOAT_KEYS:
            default = 0.0
        try:
            values[key] = _parse_value(raw, default)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}") from None
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    if "experiment" not in values:
        raise ConfigError("config must name an experiment")
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
