"""Empirical estimation of (p, s) from market data series.

p is the fraction of trading days with a strictly positive daily return
(zero returns count as non-positive); s is the quarter-on-quarter percentage
change of a housing index. Both estimators are scale invariant and, by
construction, order dependent.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .errors import DataError, InsufficientDataError


def _quarter_of(date: dt.date) -> tuple[int, int]:
    return date.year, (date.month - 1) // 3 + 1


def _next_quarter(year: int, quarter: int) -> tuple[int, int]:
    return (year + 1, 1) if quarter == 4 else (year, quarter + 1)


@dataclass(frozen=True)
class DailyCloseSeries:
    """Ordered (date, close) observations of an equity index."""

    dates: tuple[dt.date, ...]
    closes: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.dates) != len(self.closes):
            raise DataError("dates and closes differ in length")
        if len(self.dates) < 2:
            raise InsufficientDataError(
                f"need at least 2 daily closes, got {len(self.dates)}")
        for a, b in zip(self.dates, self.dates[1:]):
            if not a < b:
                raise DataError(f"dates must be strictly increasing ({a} !< {b})")
        for d, c in zip(self.dates, self.closes):
            if not c > 0.0:
                raise DataError(f"non-positive close {c} on {d}")

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class QuarterlyIndexSeries:
    """Consecutive (year, quarter, level) observations of a housing index."""

    quarters: tuple[tuple[int, int], ...]
    levels: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.quarters) != len(self.levels):
            raise DataError("quarters and levels differ in length")
        if len(self.quarters) < 2:
            raise InsufficientDataError(
                f"need at least 2 quarterly levels, got {len(self.quarters)}")
        for (y, q), lvl in zip(self.quarters, self.levels):
            if q not in (1, 2, 3, 4):
                raise DataError(f"quarter must be 1..4, got {q} in year {y}")
            if not lvl > 0.0:
                raise DataError(f"non-positive index level {lvl} at {y}Q{q}")
        for cur, nxt in zip(self.quarters, self.quarters[1:]):
            if _next_quarter(*cur) != nxt:
                raise DataError(
                    f"quarters must be consecutive, gap between "
                    f"{cur[0]}Q{cur[1]} and {nxt[0]}Q{nxt[1]}")

    def __len__(self) -> int:
        return len(self.quarters)


def _check_p_counts(p_hat: float, n_days: int, n_positive: int) -> None:
    if not 0 <= n_positive <= n_days:
        raise DataError(f"need 0 <= n_positive <= n_days, "
                        f"got {n_positive}/{n_days}")
    if abs(p_hat - n_positive / n_days) > 1e-9:
        raise DataError(f"p_hat {p_hat} inconsistent with counts "
                        f"{n_positive}/{n_days}")


@dataclass(frozen=True)
class PEstimate:
    p_hat: float
    n_days: int
    n_positive: int

    def __post_init__(self) -> None:
        _check_p_counts(self.p_hat, self.n_days, self.n_positive)


@dataclass(frozen=True)
class QuarterPEstimate:
    year: int
    quarter: int
    p_hat: float
    n_days: int
    n_positive: int
    #: True for the first/last calendar quarter of the series, whose day
    #: coverage cannot be verified without a trading calendar
    partial: bool = False

    def __post_init__(self) -> None:
        _check_p_counts(self.p_hat, self.n_days, self.n_positive)


@dataclass(frozen=True)
class QuarterDrift:
    year: int
    quarter: int
    s_hat: float


@dataclass(frozen=True)
class SEstimate:
    drifts: tuple[QuarterDrift, ...]
    mean_drift: float


@dataclass(frozen=True)
class CalibrationPoint:
    """Joined (p, s) calibration for one quarter."""

    year: int
    quarter: int
    p_hat: float
    s_hat: float
    n_days: int
    n_positive: int

    def __post_init__(self) -> None:
        _check_p_counts(self.p_hat, self.n_days, self.n_positive)


@dataclass(frozen=True)
class Track:
    """Chronological calibration track plus the quarters dropped by the join.

    missing_p lists quarters that had an s drift but no p estimate;
    missing_s the converse.
    """

    points: tuple[CalibrationPoint, ...]
    missing_p: tuple[tuple[int, int], ...]
    missing_s: tuple[tuple[int, int], ...]


def _daily_returns(series: DailyCloseSeries):
    for prev, cur in zip(series.closes, series.closes[1:]):
        yield cur / prev - 1.0


def estimate_p(series: DailyCloseSeries) -> PEstimate:
    """Whole-series success-probability estimate.

    p_hat = N+ / N where N is the number of daily returns and N+ counts the
    strictly positive ones.
    """
    n_days = len(series) - 1
    n_positive = sum(1 for r in _daily_returns(series) if r > 0.0)
    return PEstimate(p_hat=n_positive / n_days, n_days=n_days,
                     n_positive=n_positive)


def estimate_p_by_quarter(series: DailyCloseSeries) -> list[QuarterPEstimate]:
    """Per-calendar-quarter estimates; a return belongs to its own day's quarter.

    The first and last quarters present are flagged partial: the series
    edges may not cover their full trading calendar.
    """
    buckets: dict[tuple[int, int], list[float]] = {}
    order: list[tuple[int, int]] = []
    for date, r in zip(series.dates[1:], _daily_returns(series)):
        key = _quarter_of(date)
        if key not in buckets:
            buckets[key] = []
            order.append(key)
        buckets[key].append(r)
    out = []
    for key in order:
        rets = buckets[key]
        n_pos = sum(1 for r in rets if r > 0.0)
        out.append(QuarterPEstimate(
            year=key[0], quarter=key[1],
            p_hat=n_pos / len(rets), n_days=len(rets), n_positive=n_pos,
            partial=key in (order[0], order[-1]),
        ))
    return out


def estimate_s(series: QuarterlyIndexSeries) -> SEstimate:
    """Quarter-on-quarter drifts s_q = level_q / level_{q-1} - 1."""
    drifts = []
    for i in range(1, len(series)):
        year, quarter = series.quarters[i]
        drifts.append(QuarterDrift(
            year=year, quarter=quarter,
            s_hat=series.levels[i] / series.levels[i - 1] - 1.0))
    mean = sum(d.s_hat for d in drifts) / len(drifts)
    return SEstimate(drifts=tuple(drifts), mean_drift=mean)


def build_track(p_points: list[QuarterPEstimate],
                s_points: list[QuarterDrift]) -> Track:
    """Inner-join per-quarter p and s estimates, ordered chronologically."""
    p_map = {(pt.year, pt.quarter): pt for pt in p_points}
    s_map = {(d.year, d.quarter): d for d in s_points}
    if len(p_map) != len(p_points):
        raise DataError("duplicate (year, quarter) among p estimates")
    if len(s_map) != len(s_points):
        raise DataError("duplicate (year, quarter) among s drifts")
    common = sorted(p_map.keys() & s_map.keys())
    if not common:
        raise InsufficientDataError(
            "no (year, quarter) overlap between the p and s inputs")
    points = tuple(
        CalibrationPoint(
            year=y, quarter=q,
            p_hat=p_map[y, q].p_hat, s_hat=s_map[y, q].s_hat,
            n_days=p_map[y, q].n_days, n_positive=p_map[y, q].n_positive)
        for y, q in common)
    return Track(
        points=points,
        missing_p=tuple(sorted(s_map.keys() - p_map.keys())),
        missing_s=tuple(sorted(p_map.keys() - s_map.keys())),
    )
