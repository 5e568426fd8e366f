"""Shock generation for the stochastic dynamics.

Reproducibility contract: path i of an ensemble draws from its own PCG64
generator seeded with SeedSequence((master_seed, path_index)). For a given
path the stream is consumed in a fixed documented order: one uniform block
for the investment outcomes, one for the housing returns, one for the
payment skips. This derivation is part of the public contract and must stay
stable across releases.

Housing returns use the exact inverse-transform method: r = s + phi *
ndtri(u). Uniforms are nudged away from 0 so the transform stays finite;
returns are not truncated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .errors import ParamError
from .params import LoanParams, MarketParams

#: floor applied to uniforms before the inverse normal CDF; rng.random() can
#: return exactly 0.0, which ndtri maps to -inf
_U_FLOOR = 1e-300


@dataclass(frozen=True)
class ShockTriple:
    """One quarter's random inputs.

    sigma  investment outcome, +1 success / -1 failure
    r      housing return for the quarter
    pi     realised payment, either 0 (skipped) or pi_star
    """

    sigma: float
    r: float
    pi: float


def path_rng(master_seed: int, path_index: int) -> np.random.Generator:
    """Independent generator for one path of an ensemble."""
    return np.random.default_rng(np.random.SeedSequence((master_seed, path_index)))


def draw_shocks(rng: np.random.Generator, loan: LoanParams,
                market: MarketParams) -> ShockTriple:
    """Draw one mutually independent (sigma, r, pi) triple."""
    sigma = 1.0 if rng.random() < market.p else -1.0
    u = max(rng.random(), _U_FLOOR)
    r = market.s + market.phi * float(ndtri(u))
    pi = 0.0 if rng.random() < loan.q_skip else loan.pi_star
    return ShockTriple(sigma=sigma, r=r, pi=pi)


def path_shocks(master_seed: int, path_index: int, horizon: int,
                loan: LoanParams, market: MarketParams
                ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All shocks for one path, as (sigma, r, pi) arrays of length horizon."""
    if horizon < 1:
        raise ParamError(f"horizon must be >= 1, got {horizon}")
    rng = path_rng(master_seed, path_index)
    u_sigma = rng.random(horizon)
    u_ret = rng.random(horizon)
    u_pay = rng.random(horizon)
    sigma = np.where(u_sigma < market.p, 1.0, -1.0)
    ret = market.s + market.phi * ndtri(np.maximum(u_ret, _U_FLOOR))
    pay = np.where(u_pay < loan.q_skip, 0.0, loan.pi_star)
    return sigma, ret, pay


def block_shocks(master_seed: int, start: int, count: int, horizon: int,
                 loan: LoanParams, market: MarketParams
                 ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Shocks for paths start..start+count-1, stacked as (count, horizon)."""
    sigma = np.empty((count, horizon))
    ret = np.empty((count, horizon))
    pay = np.empty((count, horizon))
    for j in range(count):
        sigma[j], ret[j], pay[j] = path_shocks(
            master_seed, start + j, horizon, loan, market)
    return sigma, ret, pay
