"""Serialisation of engine results and parsing of input data files.

Documented formats (UTF-8, header row required):

- trajectory CSV: ``t,mean_equity,mean_mortgage``
- phase grid CSV: ``p,s,outcome,t_star`` (row-major, empty t_star for
  remortgage cells)
- contour CSV: ``level,segment_id,p,s`` (one row per polyline point)
- track CSV: ``year,quarter,p_hat,s_hat,n_days,n_positive``
- ensemble JSON: params, n_paths, outcome_counts, mean/se curves, mean_t_star
- daily input CSV: ``date`` (ISO yyyy-mm-dd), ``close``
- quarterly input CSV: ``year``, ``quarter`` (1-4), ``index``

Floats are written with shortest round-trip repr, so write-then-read is the
identity on every format.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from pathlib import Path
from typing import Any

import numpy as np

from .calibration import (CalibrationPoint, DailyCloseSeries, PEstimate,
                          QuarterDrift, QuarterlyIndexSeries,
                          QuarterPEstimate, Track)
from .errors import DataError
from .meanpath import OutcomeClass
from .montecarlo import EnsembleStats
from .phase import GridSpec, PhaseGrid

_TOKEN_TO_CLASS = {k.token: k for k in OutcomeClass}
_CODE_BY_TOKEN = {"strong_success": 0, "weak_success": 1, "default": 2,
                  "remortgage": 3}


def _fmt(x: float) -> str:
    return repr(float(x))


def _open_write(path: str | Path):
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc


# -- trajectories -----------------------------------------------------------

def write_trajectory_csv(path: str | Path, traj: np.ndarray) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["t", "mean_equity", "mean_mortgage"])
        for t, (e, m) in enumerate(traj):
            w.writerow([t, _fmt(e), _fmt(m)])


def read_trajectory_csv(path: str | Path) -> np.ndarray:
    rows = list(csv.DictReader(_read_text(path).splitlines()))
    out = np.empty((len(rows), 2))
    for i, row in enumerate(rows):
        if int(row["t"]) != i:
            raise DataError(f"{path}: trajectory rows out of order at {i}")
        out[i] = (float(row["mean_equity"]), float(row["mean_mortgage"]))
    return out


# -- phase grids and contours ------------------------------------------------

def write_grid_csv(path: str | Path, grid: PhaseGrid) -> None:
    p_vals = grid.spec.p_values()
    s_vals = grid.spec.s_values()
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["p", "s", "outcome", "t_star"])
        for i in range(grid.spec.n_p):
            for j in range(grid.spec.n_s):
                flat = i * grid.spec.n_s + j
                code = int(grid.codes[flat])
                t = grid.tstars[flat]
                token = _token_for_code(code)
                w.writerow([_fmt(p_vals[i]), _fmt(s_vals[j]), token,
                            "" if t < 0 else int(t)])


def _token_for_code(code: int) -> str:
    for token, c in _CODE_BY_TOKEN.items():
        if c == code:
            return token
    raise DataError(f"unknown outcome code {code}")


def read_grid_csv(path: str | Path) -> PhaseGrid:
    rows = list(csv.DictReader(_read_text(path).splitlines()))
    if not rows:
        raise DataError(f"{path}: empty grid file")
    s_all = [float(row["s"]) for row in rows]
    # row-major layout: the s column repeats its first value at each new p row
    n_s = next((i for i in range(1, len(rows)) if s_all[i] == s_all[0]),
               len(rows))
    if len(rows) % n_s:
        raise DataError(f"{path}: {len(rows)} rows do not tile s blocks of {n_s}")
    n_p = len(rows) // n_s
    codes = np.empty(len(rows), dtype=np.int8)
    tstars = np.empty(len(rows), dtype=np.int64)
    for flat, row in enumerate(rows):
        try:
            codes[flat] = _CODE_BY_TOKEN[row["outcome"]]
        except KeyError:
            raise DataError(f"{path}: unknown outcome {row['outcome']!r}") from None
        tstars[flat] = int(row["t_star"]) if row["t_star"] else -1
    spec = GridSpec(p_min=float(rows[0]["p"]), p_max=float(rows[-1]["p"]),
                    s_min=s_all[0], s_max=s_all[n_s - 1], n_p=n_p, n_s=n_s)
    return PhaseGrid(spec, codes, tstars)


def write_contours_csv(path: str | Path,
                       contours: dict[float, list[list[tuple[float, float]]]]
                       ) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["level", "segment_id", "p", "s"])
        for level in contours:
            for seg_id, seg in enumerate(contours[level]):
                for p, s in seg:
                    w.writerow([_fmt(level), seg_id, _fmt(p), _fmt(s)])


def read_contours_csv(path: str | Path
                      ) -> dict[float, list[list[tuple[float, float]]]]:
    out: dict[float, list[list[tuple[float, float]]]] = {}
    for row in csv.DictReader(_read_text(path).splitlines()):
        level = float(row["level"])
        seg_id = int(row["segment_id"])
        segs = out.setdefault(level, [])
        while len(segs) <= seg_id:
            segs.append([])
        segs[seg_id].append((float(row["p"]), float(row["s"])))
    return out


# -- ensembles ---------------------------------------------------------------

def write_ensemble_json(path: str | Path, stats: EnsembleStats,
                        params: dict[str, Any] | None = None) -> None:
    doc = {
        "params": params or {},
        "n_paths": stats.n_paths,
        "outcome_counts": {k.token: v for k, v in stats.outcome_counts.items()},
        "mean_equity": [float(x) for x in stats.mean_equity],
        "mean_mortgage": [float(x) for x in stats.mean_mortgage],
        "se_equity": [float(x) for x in stats.se_equity],
        "se_mortgage": [float(x) for x in stats.se_mortgage],
        "mean_t_star": {k.token: v for k, v in stats.mean_t_star.items()},
    }
    with _open_write(path) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def read_ensemble_json(path: str | Path) -> tuple[EnsembleStats, dict[str, Any]]:
    doc = json.loads(_read_text(path))
    stats = EnsembleStats(
        n_paths=int(doc["n_paths"]),
        outcome_counts={_TOKEN_TO_CLASS[t]: int(c)
                        for t, c in doc["outcome_counts"].items()},
        mean_equity=np.asarray(doc["mean_equity"]),
        mean_mortgage=np.asarray(doc["mean_mortgage"]),
        se_equity=np.asarray(doc["se_equity"]),
        se_mortgage=np.asarray(doc["se_mortgage"]),
        mean_t_star={_TOKEN_TO_CLASS[t]: v
                     for t, v in doc["mean_t_star"].items()},
    )
    return stats, doc["params"]


# -- calibration -------------------------------------------------------------

def read_daily_csv(path: str | Path) -> DailyCloseSeries:
    dates = []
    closes = []
    for row in csv.DictReader(_read_text(path).splitlines()):
        _require(row, ("date", "close"), path)
        try:
            dates.append(dt.date.fromisoformat(row["date"]))
        except ValueError:
            raise DataError(f"{path}: bad ISO date {row['date']!r}") from None
        closes.append(_num(row["close"], "close", path))
    return DailyCloseSeries(dates=tuple(dates), closes=tuple(closes))


def read_quarterly_csv(path: str | Path) -> QuarterlyIndexSeries:
    quarters = []
    levels = []
    for row in csv.DictReader(_read_text(path).splitlines()):
        _require(row, ("year", "quarter", "index"), path)
        quarters.append((int(_num(row["year"], "year", path)),
                         int(_num(row["quarter"], "quarter", path))))
        levels.append(_num(row["index"], "index", path))
    return QuarterlyIndexSeries(quarters=tuple(quarters), levels=tuple(levels))


def _require(row: dict, cols: tuple[str, ...], path) -> None:
    for col in cols:
        if row.get(col) is None:
            raise DataError(f"{path}: missing column {col!r}")


def _num(text: str, col: str, path) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise DataError(f"{path}: column {col!r} has non-numeric {text!r}") from None


def write_p_overall_csv(path: str | Path, est: PEstimate) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["p_hat", "n_days", "n_positive"])
        w.writerow([_fmt(est.p_hat), est.n_days, est.n_positive])


def write_p_quarters_csv(path: str | Path,
                         points: list[QuarterPEstimate]) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["year", "quarter", "p_hat", "n_days", "n_positive", "partial"])
        for pt in points:
            w.writerow([pt.year, pt.quarter, _fmt(pt.p_hat), pt.n_days,
                        pt.n_positive, int(pt.partial)])


def read_p_quarters_csv(path: str | Path) -> list[QuarterPEstimate]:
    out = []
    for row in csv.DictReader(_read_text(path).splitlines()):
        _require(row, ("year", "quarter", "p_hat", "n_days", "n_positive"), path)
        out.append(QuarterPEstimate(
            year=int(row["year"]), quarter=int(row["quarter"]),
            p_hat=float(row["p_hat"]), n_days=int(row["n_days"]),
            n_positive=int(row["n_positive"]),
            partial=bool(int(row.get("partial") or 0))))
    return out


def write_s_drifts_csv(path: str | Path, drifts: tuple[QuarterDrift, ...]) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["year", "quarter", "s_hat"])
        for d in drifts:
            w.writerow([d.year, d.quarter, _fmt(d.s_hat)])


def read_s_drifts_csv(path: str | Path) -> list[QuarterDrift]:
    out = []
    for row in csv.DictReader(_read_text(path).splitlines()):
        _require(row, ("year", "quarter", "s_hat"), path)
        out.append(QuarterDrift(year=int(row["year"]), quarter=int(row["quarter"]),
                                s_hat=float(row["s_hat"])))
    return out


def write_track_csv(path: str | Path, track: Track) -> None:
    with _open_write(path) as fh:
        w = csv.writer(fh)
        w.writerow(["year", "quarter", "p_hat", "s_hat", "n_days", "n_positive"])
        for pt in track.points:
            w.writerow([pt.year, pt.quarter, _fmt(pt.p_hat), _fmt(pt.s_hat),
                        pt.n_days, pt.n_positive])


def read_track_csv(path: str | Path) -> list[CalibrationPoint]:
    out = []
    for row in csv.DictReader(_read_text(path).splitlines()):
        _require(row, ("year", "quarter", "p_hat", "s_hat", "n_days",
                       "n_positive"), path)
        out.append(CalibrationPoint(
            year=int(row["year"]), quarter=int(row["quarter"]),
            p_hat=float(row["p_hat"]), s_hat=float(row["s_hat"]),
            n_days=int(row["n_days"]), n_positive=int(row["n_positive"])))
    return out


# -- unified emit ------------------------------------------------------------

def emit(results: Any, format: str, path: str | Path) -> None:
    """Write `results` to `path` in the named format.

    Dispatches on the result type: trajectories and grids go to csv,
    EnsembleStats to json, contour sets and tracks to csv.
    """
    if isinstance(results, PhaseGrid):
        _expect(format, "csv", results)
        write_grid_csv(path, results)
    elif isinstance(results, EnsembleStats):
        _expect(format, "json", results)
        write_ensemble_json(path, results)
    elif isinstance(results, Track):
        _expect(format, "csv", results)
        write_track_csv(path, results)
    elif isinstance(results, np.ndarray):
        _expect(format, "csv", results)
        write_trajectory_csv(path, results)
    elif isinstance(results, dict):
        _expect(format, "csv", results)
        write_contours_csv(path, results)
    else:
        raise DataError(f"no emitter for {type(results).__name__}")


def _expect(format: str, expected: str, results: Any) -> None:
    if format != expected:
        raise DataError(
            f"{type(results).__name__} emits only {expected!r}, got {format!r}")
