"""Reproducible Monte Carlo experiments on hulls, windings and path laws.

Replicates are grouped into fixed blocks of ``block_size`` consecutive
indices. A block is the unit of work handed to the thread pool, and the
only unit over which arithmetic is batched, so per-replicate results do
not depend on how many workers run. Each replicate draws from its own
Philox stream keyed by ``derive_seed(master_seed, experiment_id, index)``.

A replicate that raises is quarantined: its record carries
``status = "failed"`` and the reason, and the run continues.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from .config import ExperimentConfig
from .errors import AmbiguousStep, ConfigError, OriginTooClose
from .fbm import (
    FbmSpec,
    check_nondegenerate_fbm,
    kernel_factor,
    reversed_increment_path,
    sample_fbm_batch,
)
from .hull import (
    contains_origin_interior,
    first_interior_index_by_lp,
    hull_2d,
    incremental_hull_timeline,
    origin_in_hull_interior_2d,
    quadrant_witness_points,
    staircase_fraction,
)
from .process import Path, StationaryPath, TimeGrid, autocovariance_estimate, geometric_grid, uniform_grid
from .rng import derive_seed
from .stable import (
    StableSpec,
    check_nondegenerate_stable,
    lepage_events,
    sample_lepage,
    stable_characteristic_function,
    tail_characteristic_factor,
)
from .stats import binomial_se, ks_two_sample, mean_se
from .winding import sweep_at_infinity, sweep_near_zero

TWO_PI = 2.0 * math.pi


@dataclass
class ExperimentReport:
    config: dict
    replicates: list
    aggregates: dict
    verdicts: dict
    seeds: dict
    version: str = __version__
    wall_clock_seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def failed_count(self) -> int:
        return sum(1 for r in self.replicates if r.get("status") != "ok")

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "replicates": self.replicates,
            "aggregates": self.aggregates,
            "verdicts": self.verdicts,
            "seeds": self.seeds,
            "version": self.version,
            "wall_clock_seconds": self.wall_clock_seconds,
            "notes": self.notes,
        }

    def to_json(self, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True, allow_nan=True)

    def replicates_json(self) -> str:
        """Canonical serialization of the per-replicate records."""
        return json.dumps(self.replicates, sort_keys=True, separators=(",", ":"))

    def aggregates_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for key, val in _flatten(self.aggregates):
            w.writerow([key, val])
        for key, val in sorted(self.verdicts.items()):
            w.writerow([f"verdict.{key}", val])
        return buf.getvalue()


def _flatten(d, prefix=""):
    for key in sorted(d):
        val = d[key]
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            yield from _flatten(val, name + ".")
        elif isinstance(val, (list, tuple)):
            yield name, ";".join(repr(v) for v in val)
        else:
            yield name, repr(val) if isinstance(val, float) else val


# ---------------------------------------------------------------------------
# path generation

def _stub_points(kind: str, times: np.ndarray) -> np.ndarray:
    if kind == "circle":
        ang = 1.5 * math.pi * times / times[-1]
        return np.column_stack([np.cos(ang), np.sin(ang)])
    if kind == "spiral":
        out = np.zeros((times.size, 2))
        pos = times > 0
        t = times[pos]
        out[pos] = np.column_stack([t * np.cos(np.log(t)), t * np.sin(np.log(t))])
        return out
    if kind == "ray":
        return np.column_stack([times, np.zeros_like(times)])
    raise ConfigError(f"unknown stub generator {kind!r}")


def generate_paths(cfg: ExperimentConfig, grid: TimeGrid, seeds) -> np.ndarray:
    """Paths for ``seeds`` on ``grid`` as an array ``(len(seeds), n, d)``."""
    if cfg.generator == "fbm":
        return sample_fbm_batch(cfg.build_spec(), grid, seeds)
    if cfg.generator == "stable":
        spec = cfg.build_spec()
        return np.stack([sample_lepage(spec, grid, s).points for s in seeds])
    if cfg.dim != 2:
        raise ConfigError("stub generators are planar")
    pts = _stub_points(cfg.generator, grid.times)
    return np.broadcast_to(pts, (len(seeds),) + pts.shape).copy()


def _prewarm(cfg: ExperimentConfig, *grids: TimeGrid) -> None:
    # build shared kernel factors once, before worker threads start
    if cfg.generator == "fbm":
        for g in grids:
            pos = g.times[g.times > 0]
            if pos.size:
                kernel_factor(pos, cfg.hindex)


def _nondegenerate(cfg: ExperimentConfig) -> bool:
    spec = cfg.build_spec()
    if isinstance(spec, FbmSpec):
        return check_nondegenerate_fbm(spec)
    if isinstance(spec, StableSpec):
        return check_nondegenerate_stable(spec.sigma)
    return True


# ---------------------------------------------------------------------------
# replicate scheduling

BlockFn = Callable[[list, list], list]


def _quarantine(index: int, seed: int, exc: Exception) -> dict:
    rec = {"replicate": index, "seed": hex(seed), "status": "failed",
           "error": type(exc).__name__, "reason": str(exc)}
    level = getattr(exc, "level", None)
    if level is not None:
        rec["level"] = level
    return rec


def run_replicates(cfg: ExperimentConfig, per_block: Callable, per_replicate: Callable) -> list:
    """Run all replicates and return their records sorted by index.

    ``per_block(seeds)`` produces shared inputs for a block (typically the
    sampled paths); ``per_replicate(block_data, j)`` analyzes member ``j``.
    """
    n, size = cfg.replicates, cfg.block_size
    blocks = [list(range(b, min(n, b + size))) for b in range(0, n, size)]

    def task(indices):
        seeds = [derive_seed(cfg.master_seed, cfg.experiment_id, i) for i in indices]
        try:
            data = per_block(seeds)
        except Exception as exc:
            return [_quarantine(i, s, exc) for i, s in zip(indices, seeds)]
        out = []
        for j, (i, s) in enumerate(zip(indices, seeds)):
            try:
                rec = per_replicate(data, j)
            except Exception as exc:
                out.append(_quarantine(i, s, exc))
                continue
            rec = {"replicate": i, "seed": hex(s), "status": "ok", **rec}
            out.append(rec)
        return out

    if cfg.workers == 1:
        results = [task(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(task, blocks))
    records = [r for block in results for r in block]
    records.sort(key=lambda r: r["replicate"])
    return records


def _seed_audit(cfg: ExperimentConfig) -> dict:
    n = cfg.replicates
    return {
        "master_seed": cfg.master_seed,
        "experiment_id": cfg.experiment_id,
        "derivation": "philox key = master_seed | experiment_id << 64 | replicate << 96",
        "first": hex(derive_seed(cfg.master_seed, cfg.experiment_id, 0)),
        "last": hex(derive_seed(cfg.master_seed, cfg.experiment_id, n - 1)),
    }


def _ok(records):
    return [r for r in records if r["status"] == "ok"]


def _report(cfg, records, aggregates, verdicts, started, notes=()):
    aggregates = {"replicates_ok": len(_ok(records)),
                  "replicates_failed": len(records) - len(_ok(records)), **aggregates}
    verdicts = {k: bool(v) for k, v in verdicts.items()}
    return ExperimentReport(cfg.to_dict(), records, aggregates, verdicts, _seed_audit(cfg),
                            __version__, time.perf_counter() - started, list(notes))


# ---------------------------------------------------------------------------
# origin interior (hull contains 0) and the refinement comparison

def _interior_record(points: np.ndarray, grid: TimeGrid, cross_check: bool) -> dict:
    path = Path(grid, points)
    first = first_interior_index_by_lp(path)
    rec = {
        "interior": first is not None,
        "first_interior_time": float(grid.times[first]) if first is not None else None,
    }
    w = quadrant_witness_points(path)
    rec["witness"] = w is not None
    rec["witness_interior"] = bool(contains_origin_interior(w)) if w is not None else None
    if cross_check and path.dim == 2:
        rec["hull_agrees"] = origin_in_hull_interior_2d(hull_2d(points)) == rec["interior"]
    return rec


def run_interior_probability(cfg: ExperimentConfig) -> ExperimentReport:
    started = time.perf_counter()
    fine = uniform_grid(cfg.resolution, cfg.horizon)
    coarse = uniform_grid(cfg.coarse_resolution, cfg.horizon)
    _prewarm(cfg, fine, coarse)
    notes = [] if _nondegenerate(cfg) else ["generator is degenerate"]

    def per_block(seeds):
        return generate_paths(cfg, fine, seeds), generate_paths(cfg, coarse, seeds)

    def per_rep(data, j):
        f = _interior_record(data[0][j], fine, cfg.cross_check)
        c = _interior_record(data[1][j], coarse, cfg.cross_check)
        return {"fine": f, "coarse": c}

    records = run_replicates(cfg, per_block, per_rep)
    ok = _ok(records)
    n = len(ok)
    agg, verdicts = {}, {}
    for res in ("fine", "coarse"):
        rs = [r[res] for r in ok]
        p = float(np.mean([r["interior"] for r in rs])) if rs else math.nan
        times = [r["first_interior_time"] for r in rs if r["first_interior_time"] is not None]
        wit = [r for r in rs if r["witness"]]
        agg[res] = {
            "p_hat": p,
            "se": binomial_se(p, n),
            "median_first_interior_time": float(np.median(times)) if times else None,
            "witness_rate": len(wit) / n if n else math.nan,
            "witness_violations": sum(1 for r in wit if not r["witness_interior"]),
            "witness_agreement": (sum(1 for r in wit if r["witness_interior"] == r["interior"])
                                  / len(wit)) if wit else None,
            "hull_disagreements": sum(1 for r in rs if r.get("hull_agrees") is False),
        }
    verdicts["interior_probability"] = agg["fine"]["p_hat"] >= cfg.threshold
    verdicts["refinement_increase"] = agg["fine"]["p_hat"] > agg["coarse"]["p_hat"]
    verdicts["witness_soundness"] = (agg["fine"]["witness_violations"] == 0
                                     and agg["coarse"]["witness_violations"] == 0)
    verdicts["lp_matches_hull"] = (agg["fine"]["hull_disagreements"] == 0
                                   and agg["coarse"]["hull_disagreements"] == 0)
    return _report(cfg, records, agg, verdicts, started, notes)


# ---------------------------------------------------------------------------
# endpoint interior

def run_endpoint_interior(cfg: ExperimentConfig) -> ExperimentReport:
    started = time.perf_counter()
    grid = uniform_grid(cfg.resolution, 1.0)
    _prewarm(cfg, grid)

    def per_block(seeds):
        return generate_paths(cfg, grid, seeds)

    def per_rep(paths, j):
        x = paths[j]
        endpoint = bool(contains_origin_interior(x - x[-1]))
        rev = reversed_increment_path(Path(grid, x))
        origin_rev = bool(contains_origin_interior(rev.points))
        return {"endpoint_interior": endpoint, "reversed_origin_interior": origin_rev,
                "identity": endpoint == origin_rev}

    records = run_replicates(cfg, per_block, per_rep)
    ok = _ok(records)
    p = float(np.mean([r["endpoint_interior"] for r in ok])) if ok else math.nan
    agg = {"p_hat": p, "se": binomial_se(p, len(ok)),
           "identity_violations": sum(1 for r in ok if not r["identity"])}
    verdicts = {"endpoint_probability": p >= cfg.threshold,
                "reversal_identity": agg["identity_violations"] == 0}
    return _report(cfg, records, agg, verdicts, started)


# ---------------------------------------------------------------------------
# staircase

def _monotone_violations(tl) -> int:
    bad = 0
    for arr in (tl.area, tl.perimeter, tl.diameter):
        bad += int(np.sum(np.diff(arr) < 0))
    bad += int(np.sum(np.diff(tl.interior_flags.astype(np.int8)) < 0))
    return bad


def run_staircase(cfg: ExperimentConfig) -> ExperimentReport:
    started = time.perf_counter()
    fine = uniform_grid(cfg.resolution, cfg.horizon)
    coarse = uniform_grid(cfg.coarse_resolution, cfg.horizon)
    _prewarm(cfg, fine, coarse)

    def per_block(seeds):
        return generate_paths(cfg, fine, seeds), generate_paths(cfg, coarse, seeds)

    def per_rep(data, j):
        out = {}
        for name, grid, paths in (("fine", fine, data[0]), ("coarse", coarse, data[1])):
            tl = incremental_hull_timeline(Path(grid, paths[j]))
            out[name] = {
                "fraction": staircase_fraction(tl, len(grid) // 2),
                "changes": int(tl.change_flags.sum()),
                "monotone_violations": _monotone_violations(tl),
                "final_area": float(tl.area[-1]),
            }
        return out

    records = run_replicates(cfg, per_block, per_rep)
    ok = _ok(records)
    agg = {}
    for res in ("fine", "coarse"):
        m, se = mean_se([r[res]["fraction"] for r in ok])
        agg[res] = {"mean_fraction": m, "se": se,
                    "monotone_violations": sum(r[res]["monotone_violations"] for r in ok)}
    verdicts = {
        "staircase_decrease": agg["fine"]["mean_fraction"] < agg["coarse"]["mean_fraction"],
        "functional_monotonicity": (agg["fine"]["monotone_violations"] == 0
                                    and agg["coarse"]["monotone_violations"] == 0),
    }
    return _report(cfg, records, agg, verdicts, started)


# ---------------------------------------------------------------------------
# winding growth

def winding_grid(levels: int, per_unit_log: int) -> TimeGrid:
    marks = [math.exp(k) for k in range(-levels, levels + 1)]
    return geometric_grid(marks[0], marks[-1], per_unit_log, include=marks, with_zero=True)


def _sweeps(path: Path, levels: int):
    zero = sweep_near_zero(path, 1.0, [math.exp(-k) for k in range(1, levels + 1)])
    inf = sweep_at_infinity(path, 1.0, [math.exp(k) for k in range(1, levels + 1)])
    return zero, inf


def _sweep_dict(recs) -> dict:
    return {"nu": [r.nu for r in recs], "run_max": [r.run_max for r in recs],
            "run_min": [r.run_min for r in recs], "min_radius": [r.min_radius for r in recs]}


def run_winding_growth(cfg: ExperimentConfig) -> ExperimentReport:
    started = time.perf_counter()
    grid = winding_grid(cfg.levels, cfg.per_unit_log)
    _prewarm(cfg, grid)
    notes = []
    if cfg.generator == "fbm" and not 0.5 <= cfg.hindex < 1:
        notes.append("H outside [1/2, 1): windings may be undefined (path hits 0)")

    def per_block(seeds):
        return generate_paths(cfg, grid, seeds)

    def per_rep(paths, j):
        path = Path(grid, paths[j]).positive_part()
        zero, inf = _sweeps(path, cfg.levels)
        refl = Path(path.grid, path.points * np.array([1.0, -1.0]))
        rz, ri = _sweeps(refl, cfg.levels)
        exact = all(a.nu == -b.nu and a.run_max == -b.run_min and a.run_min == -b.run_max
                    for a, b in zip(zero + inf, rz + ri))
        return {"zero": _sweep_dict(zero), "infinity": _sweep_dict(inf),
                "reflection_exact": exact}

    records = run_replicates(cfg, per_block, per_rep)
    ok = _ok(records)
    agg, verdicts = {}, {}
    ks = np.arange(1, cfg.levels + 1)
    for sweep in ("zero", "infinity"):
        if not ok:
            break
        nu = np.array([r[sweep]["nu"] for r in ok])
        hi = np.array([r[sweep]["run_max"] for r in ok])
        lo = np.array([r[sweep]["run_min"] for r in ok])
        pos_exceed = (hi > TWO_PI).mean(axis=0)
        neg_exceed = (lo < -TWO_PI).mean(axis=0)
        agg[sweep] = {
            "median_run_max": np.median(hi, axis=0).tolist(),
            "median_run_min": np.median(lo, axis=0).tolist(),
            "median_abs_nu": np.median(np.abs(nu), axis=0).tolist(),
            "spitzer_ratio": (np.median(np.abs(nu), axis=0) / (ks / 2.0)).tolist(),
            "exceed_2pi_max": pos_exceed.tolist(),
            "exceed_2pi_min": neg_exceed.tolist(),
            "growth_max": float(np.mean(hi[:, -1] > hi[:, 0])),
            "growth_min": float(np.mean(lo[:, -1] < lo[:, 0])),
        }
        a = agg[sweep]
        verdicts[f"{sweep}_running_max_growth"] = a["growth_max"] >= cfg.growth_threshold
        verdicts[f"{sweep}_running_min_growth"] = a["growth_min"] >= cfg.growth_threshold
        verdicts[f"{sweep}_exceedance_grows"] = bool(
            np.all(np.diff(pos_exceed) >= 0) and pos_exceed[-1] > pos_exceed[0]
            and np.all(np.diff(neg_exceed) >= 0) and neg_exceed[-1] > neg_exceed[0])
        if cfg.spitzer_check:
            lo_b, hi_b = cfg.spitzer_band
            verdicts[f"{sweep}_spitzer_ratio"] = lo_b <= a["spitzer_ratio"][-1] <= hi_b
    verdicts["reflection_exact"] = bool(ok) and all(r["reflection_exact"] for r in ok)
    failed = len(records) - len(ok)
    verdicts["quarantine_rare"] = failed <= 0.01 * len(records)
    return _report(cfg, records, agg, verdicts, started, notes)


# ---------------------------------------------------------------------------
# distribution checks

def _grid_index(grid: TimeGrid, t: float) -> int:
    i = grid.index_of(t)
    if i is None:
        raise ConfigError(f"time {t} is not on the grid; adjust resolution")
    return i


def _split(ok, key):
    a = [r[key] for r in ok if r["replicate"] % 2 == 0]
    b = [r[key] for r in ok if r["replicate"] % 2 == 1]
    return np.asarray(a), np.asarray(b)


def _ks_entry(a, b) -> dict:
    res = ks_two_sample(a, b)
    return {"statistic": res.statistic, "p_value": res.p_value, "n_a": len(a), "n_b": len(b)}


def lamperti_fbm_autocovariance(h: float, lag: float) -> float:
    """``E L(u + lag) L(u)`` for scalar standard fBm pushed through Lamperti."""
    return math.cosh(h * lag) - 0.5 * math.exp(-h * lag) * math.expm1(lag) ** (2 * h)


def run_distribution_checks(cfg: ExperimentConfig) -> ExperimentReport:
    """KS law checks (self-similarity, reversibility, Lamperti stationarity) and the stable CF.

    KS comparisons pair even-indexed replicates against odd-indexed ones, so
    the two samples are independent.
    """
    started = time.perf_counter()
    h = cfg.self_similarity_index
    agg, verdicts = {}, {}

    if cfg.experiment == "stable_cf":
        return _run_stable_cf(cfg, started)

    grid = uniform_grid(cfg.resolution, cfg.horizon)
    _prewarm(cfg, grid)

    def per_block(seeds):
        return generate_paths(cfg, grid, seeds)

    if cfg.experiment == "self_similarity_ks":
        i0 = _grid_index(grid, cfg.t0)
        ic = {c: _grid_index(grid, c * cfg.t0) for c in cfg.c_values}

        def per_rep(paths, j):
            x = paths[j]
            rec = {"norm_t0": float(np.linalg.norm(x[i0]))}
            for c, i in ic.items():
                rec[f"norm_ct0_{c:g}"] = float(np.linalg.norm(x[i]))
            return rec

        records = run_replicates(cfg, per_block, per_rep)
        ok = _ok(records)
        for c in cfg.c_values:
            a, _ = _split(ok, f"norm_ct0_{c:g}")
            _, b = _split(ok, "norm_t0")
            entry = _ks_entry(a, c**h * b)
            agg[f"c={c:g}"] = entry
            verdicts[f"self_similarity_c{c:g}"] = entry["p_value"] >= cfg.ks_level
        return _report(cfg, records, agg, verdicts, started)

    if cfg.experiment == "reversibility_ks":
        if cfg.horizon != 1.0:
            raise ConfigError("reversibility runs on [0, 1]")
        i0 = _grid_index(grid, cfg.t0)

        def per_rep(paths, j):
            x = paths[j]
            y = reversed_increment_path(Path(grid, x)).points
            return {"y_t0": y[i0].tolist(), "x_t0": x[i0].tolist()}

        records = run_replicates(cfg, per_block, per_rep)
        ok = _ok(records)
        ya, _ = _split(ok, "y_t0")
        _, xb = _split(ok, "x_t0")
        for k in range(cfg.dim):
            entry = _ks_entry(ya[:, k], xb[:, k])
            agg[f"coord{k + 1}"] = entry
            verdicts[f"reversibility_coord{k + 1}"] = entry["p_value"] >= cfg.ks_level
        return _report(cfg, records, agg, verdicts, started)

    if cfg.experiment == "stationarity_ks":
        t1, t2 = cfg.stationarity_times
        i1, i2 = _grid_index(grid, t1), _grid_index(grid, t2)
        if t1 <= 0:
            raise ConfigError("stationarity times must be > 0")
        u1, u2 = math.log(t1), math.log(t2)

        def per_rep(paths, j):
            x = paths[j]
            return {"l_u1": (x[i1] * t1 ** (-h)).tolist(), "l_u2": (x[i2] * t2 ** (-h)).tolist()}

        records = run_replicates(cfg, per_block, per_rep)
        ok = _ok(records)
        la, _ = _split(ok, "l_u1")
        _, lb = _split(ok, "l_u2")
        for k in range(cfg.dim):
            entry = _ks_entry(la[:, k], lb[:, k])
            agg[f"coord{k + 1}"] = entry
            verdicts[f"stationarity_coord{k + 1}"] = entry["p_value"] >= cfg.ks_level
        samples = [StationaryPath([u1, u2], [r["l_u1"], r["l_u2"]], h) for r in ok]
        est = autocovariance_estimate(samples, 0, u2 - u1, base=u1)
        prods = np.array([r["l_u1"][0] * r["l_u2"][0] for r in ok])
        se = float(prods.std(ddof=1) / math.sqrt(prods.size))
        entry = {"lag": u2 - u1, "estimate": est, "se": se}
        if cfg.generator == "fbm":
            q00 = cfg.build_spec().q[0, 0]
            entry["analytic"] = float(q00) * lamperti_fbm_autocovariance(cfg.hindex, u2 - u1)
            verdicts["autocovariance"] = abs(est - entry["analytic"]) <= cfg.se_multiplier * se
        agg["autocovariance"] = entry
        return _report(cfg, records, agg, verdicts, started)

    raise ConfigError(f"{cfg.experiment} is not a distribution check")


def _run_stable_cf(cfg: ExperimentConfig, started: float) -> ExperimentReport:
    spec = cfg.build_spec()

    def per_block(seeds):
        return [lepage_events(spec, s) for s in seeds]

    def per_rep(events, j):
        ev = events[j]
        return {"s1": ev.jumps.sum(axis=0).tolist(), "gamma_last": float(ev.gammas[-1])}

    records = run_replicates(cfg, per_block, per_rep)
    ok = _ok(records)
    s1 = np.array([r["s1"] for r in ok])
    g = np.array([r["gamma_last"] for r in ok])
    n = s1.shape[0]
    agg, verdicts = {}, {}
    m = cfg.se_multiplier
    for u in cfg.u_values:
        theta = np.zeros(cfg.dim)
        theta[0] = u
        target = stable_characteristic_function(spec, theta)
        raw = np.exp(1j * (s1 @ theta))
        corr = raw * tail_characteristic_factor(spec, theta, g)
        entry = {"closed_form_re": target.real, "closed_form_im": target.imag}
        for name, vals in (("raw", raw), ("tail_corrected", corr)):
            re, im = vals.real, vals.imag
            se_re = float(re.std(ddof=1) / math.sqrt(n))
            se_im = float(im.std(ddof=1) / math.sqrt(n))
            entry[name] = {
                "re": float(re.mean()), "im": float(im.mean()), "se_re": se_re, "se_im": se_im,
                "z_re": (float(re.mean()) - target.real) / se_re if se_re > 0 else math.inf,
                "z_im": (float(im.mean()) - target.imag) / se_im if se_im > 0 else 0.0,
            }
        c = entry["tail_corrected"]
        agg[f"u={u:g}"] = entry
        verdicts[f"cf_u{u:g}"] = abs(c["z_re"]) <= m and abs(c["z_im"]) <= m
    return _report(cfg, records, agg, verdicts, started)


RUNNERS = {
    "interior_prob": run_interior_probability,
    "endpoint_interior": run_endpoint_interior,
    "staircase": run_staircase,
    "winding_growth": run_winding_growth,
    "self_similarity_ks": run_distribution_checks,
    "reversibility_ks": run_distribution_checks,
    "stationarity_ks": run_distribution_checks,
    "stable_cf": run_distribution_checks,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    return RUNNERS[cfg.experiment](cfg)
