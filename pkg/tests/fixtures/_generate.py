"""Regenerate the bundled calibration fixtures.

Synthetic series engineered so the estimators reproduce the documented
counts: 37 positive of 61 daily returns (sp500_q2_2025), 32 of 59
(stoxx600_q2_2025), a two-point index with a 1.41% step, and a 2010-2025
quarterly (p, s) history for the track commands.
"""

import csv
import datetime as dt
from pathlib import Path

import numpy as np

HERE = Path(__file__).parent


def trading_days(start, end, holidays):
    d = start
    out = []
    while d <= end:
        if d.weekday() < 5 and d not in holidays:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def write_daily(path, dates, n_pos, seed):
    """Prices whose returns have exactly n_pos positive signs of len-1."""
    n_ret = len(dates) - 1
    rng = np.random.default_rng(seed)
    signs = np.array([1.0] * n_pos + [-1.0] * (n_ret - n_pos))
    rng.shuffle(signs)
    mags = rng.uniform(0.001, 0.012, n_ret)
    prices = [5600.0]
    for sgn, mag in zip(signs, mags):
        prices.append(prices[-1] * (1.0 + sgn * mag))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["date", "close"])
        for d, p in zip(dates, prices):
            w.writerow([d.isoformat(), f"{p:.4f}"])
    # verify
    rets = [b / a - 1.0 for a, b in zip(prices, prices[1:])]
    assert sum(1 for r in rets if r > 0) == n_pos, path
    assert len(rets) == n_ret


# S&P 500, Q2 2025: 62 NYSE sessions (Good Friday 4/18, Memorial Day 5/26,
# Juneteenth 6/19 closed) -> 61 within-quarter returns, 37 positive
nyse_holidays = {dt.date(2025, 4, 18), dt.date(2025, 5, 26), dt.date(2025, 6, 19)}
sp_days = trading_days(dt.date(2025, 4, 1), dt.date(2025, 6, 30), nyse_holidays)
assert len(sp_days) == 62, len(sp_days)
write_daily(HERE / "sp500_q2_2025.csv", sp_days, 37, seed=20250401)

# STOXX Europe 600, Q2 2025: 60 sessions -> 59 returns, 32 positive
stoxx_days = trading_days(dt.date(2025, 4, 7), dt.date(2025, 6, 27), set())
assert len(stoxx_days) == 60, len(stoxx_days)
write_daily(HERE / "stoxx600_q2_2025.csv", stoxx_days, 32, seed=20250407)

# two-point housing index: 1.41% quarterly step
with open(HERE / "index_au_two_point.csv", "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["year", "quarter", "index"])
    w.writerow([2025, 1, "100"])
    w.writerow([2025, 2, "101.41"])

# 2010Q1..2025Q2 quarterly history for the track fixtures
rng = np.random.default_rng(201001)
quarters = []
y, q = 2010, 1
while (y, q) <= (2025, 2):
    quarters.append((y, q))
    q += 1
    if q == 5:
        y, q = y + 1, 1

with open(HERE / "p_quarters.csv", "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["year", "quarter", "p_hat", "n_days", "n_positive", "partial"])
    for i, (yy, qq) in enumerate(quarters):
        n_days = int(rng.integers(58, 64))
        n_pos = int(rng.binomial(n_days, 0.55))
        edge = int(i == 0 or i == len(quarters) - 1)
        w.writerow([yy, qq, repr(n_pos / n_days), n_days, n_pos, edge])

with open(HERE / "index_quarters.csv", "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(["year", "quarter", "index"])
    level = 100.0
    # one extra leading quarter so every track quarter gets a drift
    w.writerow([2009, 4, f"{level:.6f}"])
    for yy, qq in quarters:
        level *= 1.0 + rng.normal(0.008, 0.01)
        w.writerow([yy, qq, f"{level:.6f}"])

print("fixtures written to", HERE)
