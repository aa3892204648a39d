"""CSV formats: paths, LePage event lists, hull timelines and winding sweeps."""
from __future__ import annotations

import csv
import io as _io
from typing import Iterable

import numpy as np

from .errors import MalformedPath
from .process import Path, TimeGrid


def _open_text(target, mode):
    if hasattr(target, "write") or hasattr(target, "read"):
        return target, False
    return open(target, mode, encoding="utf-8", newline=""), True


def write_path_csv(path: Path, target) -> None:
    fh, own = _open_text(target, "w")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [f"x{j + 1}" for j in range(path.dim)])
        for t, p in zip(path.times, path.points):
            w.writerow([repr(float(t))] + [repr(float(v)) for v in p])
    finally:
        if own:
            fh.close()


def read_path_csv(source) -> Path:
    fh, own = _open_text(source, "r")
    try:
        rows = list(csv.reader(fh))
    finally:
        if own:
            fh.close()
    if not rows:
        raise MalformedPath("empty path file")
    header = [h.strip() for h in rows[0]]
    d = len(header) - 1
    if d < 1 or header[0] != "t" or header[1:] != [f"x{j + 1}" for j in range(d)]:
        raise MalformedPath("header must be t,x1,...,xd")
    body = [r for r in rows[1:] if r]
    if any(len(r) != d + 1 for r in body):
        raise MalformedPath("every row needs d + 1 fields")
    try:
        data = np.array([[float(v) for v in r] for r in body], dtype=np.float64)
    except ValueError as exc:
        raise MalformedPath(str(exc)) from None
    if data.size == 0:
        raise MalformedPath("path file has no rows")
    return Path(TimeGrid(data[:, 0]), data[:, 1:])


def path_to_csv_text(path: Path) -> str:
    buf = _io.StringIO()
    write_path_csv(path, buf)
    return buf.getvalue()


def write_rows(target, header: list, rows: Iterable) -> None:
    fh, own = _open_text(target, "w")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                        for v in r])
    finally:
        if own:
            fh.close()


def write_events_csv(events, target) -> None:
    d = events.jumps.shape[1]
    rows = ([k + 1, float(e)] + [float(v) for v in j]
            for k, (e, j) in enumerate(zip(events.eta, events.jumps)))
    write_rows(target, ["k", "eta"] + [f"jump_x{j + 1}" for j in range(d)], rows)


def write_timeline_csv(timeline, target) -> None:
    n = len(timeline)
    z = np.full(n, np.nan)
    area = timeline.area if timeline.area is not None else z
    perim = timeline.perimeter if timeline.perimeter is not None else z
    diam = timeline.diameter if timeline.diameter is not None else z
    rows = ([i, float(t), int(c), int(f), float(a), float(p), float(dm)]
            for i, (t, c, f, a, p, dm) in enumerate(zip(
                timeline.grid.times, timeline.change_flags, timeline.interior_flags,
                area, perim, diam)))
    write_rows(target, ["i", "t", "changed", "interior", "area", "perimeter", "diameter"], rows)


def write_sweep_csv(records, target) -> None:
    rows = ([r.level, r.s, r.t, r.nu, r.run_max, r.run_min, r.min_radius] for r in records)
    write_rows(target, ["level", "s", "t", "nu", "run_max", "run_min", "min_radius"], rows)
