"""Monte Carlo engine: exact stochastic stepping, paths and ensembles.

Paths are embarrassingly parallel. Ensembles are processed in fixed-size
blocks of paths; per-block partial sums are merged in block order, so the
aggregate is bit-identical no matter how many workers ran the blocks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._kernels.codes import N_CODES
from .errors import ParamError
from .meanpath import Outcome, OutcomeClass, outcome_code
from .params import FiscalParams, LoanParams, MarketParams
from .shocks import ShockTriple, block_shocks, path_shocks

#: paths per scheduling block; fixed so that summation order, and therefore
#: every aggregate statistic, is independent of the worker count
BLOCK_SIZE = 4096


@dataclass(frozen=True)
class State:
    """Point-in-time state of one path."""

    equity: float
    mortgage: float
    quarter: int = 0

    @property
    def house_value(self) -> float:
        return self.equity + self.mortgage

    def usable_equity(self, loan: LoanParams) -> float:
        return loan.ell * self.equity


@dataclass(frozen=True)
class PathResult:
    """Outcome of one simulated path, optionally with its trajectory.

    The trajectory, when retained, runs from quarter 0 up to and including
    the absorbing quarter (or the horizon for remortgage paths).
    """

    outcome: Outcome
    trajectory: np.ndarray | None = None


@dataclass
class EnsembleStats:
    """Aggregate statistics over an ensemble of paths.

    Mean and standard-error curves cover quarters 0..horizon. With the
    default absorbing mode, paths are frozen at their terminal values from
    t_star onward, so the curves keep averaging over all n_paths.
    """

    n_paths: int
    outcome_counts: dict[OutcomeClass, int]
    mean_equity: np.ndarray
    mean_mortgage: np.ndarray
    se_equity: np.ndarray
    se_mortgage: np.ndarray
    mean_t_star: dict[OutcomeClass, float | None] = field(default_factory=dict)


def step(state: State, shocks: ShockTriple, loan: LoanParams,
         fiscal: FiscalParams) -> State:
    """One exact quarter of the extended dynamics.

    The investment return applies the previous quarter's usable equity,
    mortgage interest accrues on the opening balance, the equity-loan cost
    is charged after tax, and the mortgage deduction flows back into equity.
    Negative outputs are legal; absorption is the caller's concern.
    """
    inv = (shocks.sigma * (loan.mu * loan.ell)) * state.equity
    e_new = (state.equity + shocks.pi + inv
             + (state.equity + state.mortgage) * shocks.r
             - (loan.ell * (1.0 - fiscal.tau_b) * fiscal.r_b) * state.equity
             + (fiscal.tau_m * fiscal.r_m) * state.mortgage)
    m_new = (1.0 + fiscal.r_m) * state.mortgage - shocks.pi - inv
    return State(equity=e_new, mortgage=m_new, quarter=state.quarter + 1)


def simulate_path(loan: LoanParams, fiscal: FiscalParams, market: MarketParams,
                  horizon: int, seed: int,
                  record_trajectory: bool = True) -> PathResult:
    """Simulate one path; deterministic for a fixed seed.

    Stops at the first quarter with equity <= 0 (Default) or mortgage <= 0
    (Success, strong when earlier than the m0/pi_star benchmark), otherwise
    reports PermanentRemortgage at the horizon. The path consumes the same
    shock stream as path 0 of simulate_ensemble(master_seed=seed).
    """
    if horizon < 1:
        raise ParamError(f"horizon must be >= 1, got {horizon}")
    sigma, ret, pay = path_shocks(seed, 0, horizon, loan, market)
    benchmark = loan.repayment_benchmark
    state = State(loan.e0, loan.m0)
    traj = [(state.equity, state.mortgage)] if record_trajectory else None
    outcome = None
    for t in range(1, horizon + 1):
        state = step(state, ShockTriple(sigma[t - 1], ret[t - 1], pay[t - 1]),
                     loan, fiscal)
        if traj is not None:
            traj.append((state.equity, state.mortgage))
        if state.equity <= 0.0:
            outcome = Outcome(OutcomeClass.DEFAULT, t)
            break
        if state.mortgage <= 0.0:
            kind = (OutcomeClass.STRONG_SUCCESS if t < benchmark
                    else OutcomeClass.WEAK_SUCCESS)
            outcome = Outcome(kind, t)
            break
    if outcome is None:
        outcome = Outcome(OutcomeClass.PERMANENT_REMORTGAGE, None)
    return PathResult(outcome=outcome,
                      trajectory=None if traj is None else np.asarray(traj))


def _run_block(kern, loan, fiscal, market, horizon, master_seed, start, count,
               benchmark, absorb):
    sigma, ret, pay = block_shocks(master_seed, start, count, horizon, loan, market)
    return kern.mc_block(
        loan.e0, loan.m0, sigma, ret, pay,
        loan.mu * loan.ell,
        loan.ell * (1.0 - fiscal.tau_b) * fiscal.r_b,
        fiscal.tau_m * fiscal.r_m,
        1.0 + fiscal.r_m,
        benchmark, absorb,
    )


def simulate_ensemble(loan: LoanParams, fiscal: FiscalParams,
                      market: MarketParams, horizon: int, n_paths: int,
                      master_seed: int, workers: int = 1, absorb: bool = True,
                      backend: str | None = None) -> EnsembleStats:
    """Aggregate n_paths independent paths into EnsembleStats.

    Per-path seeds derive from (master_seed, path_index); the result is
    independent of the worker count and of scheduling. absorb=False keeps
    stepping paths past their first boundary crossing (outcomes are still
    recorded at the crossing): that is the mode whose mean curves estimate
    the unstopped average process of the closed form.
    """
    if horizon < 1:
        raise ParamError(f"horizon must be >= 1, got {horizon}")
    if n_paths < 1:
        raise ParamError(f"n_paths must be >= 1, got {n_paths}")
    kern = _kernels.resolve(backend)
    benchmark = loan.repayment_benchmark

    starts = list(range(0, n_paths, BLOCK_SIZE))
    blocks = [(s, min(BLOCK_SIZE, n_paths - s)) for s in starts]

    def run(args):
        start, count = args
        return _run_block(kern, loan, fiscal, market, horizon, master_seed,
                          start, count, benchmark, absorb)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, blocks))
    else:
        partials = [run(b) for b in blocks]

    sum_e = np.zeros(horizon + 1)
    sum_m = np.zeros(horizon + 1)
    sumsq_e = np.zeros(horizon + 1)
    sumsq_m = np.zeros(horizon + 1)
    counts = np.zeros(N_CODES, dtype=np.int64)
    t_sums = np.zeros(N_CODES, dtype=np.int64)
    # merge in block order: bit-identical results for any worker count
    for se, sm, sqe, sqm, codes, tstars in partials:
        sum_e += se
        sum_m += sm
        sumsq_e += sqe
        sumsq_m += sqm
        counts += np.bincount(codes, minlength=N_CODES)
        for c in range(N_CODES):
            sel = codes == c
            if sel.any():
                t_sums[c] += int(tstars[sel].sum())

    n = float(n_paths)
    mean_e = sum_e / n
    mean_m = sum_m / n
    if n_paths > 1:
        var_e = np.maximum(sumsq_e - sum_e * sum_e / n, 0.0) / (n - 1.0)
        var_m = np.maximum(sumsq_m - sum_m * sum_m / n, 0.0) / (n - 1.0)
        se_e = np.sqrt(var_e / n)
        se_m = np.sqrt(var_m / n)
    else:
        se_e = np.zeros(horizon + 1)
        se_m = np.zeros(horizon + 1)

    outcome_counts: dict[OutcomeClass, int] = {}
    mean_t: dict[OutcomeClass, float | None] = {}
    for kind in OutcomeClass:
        code = outcome_code(kind)
        outcome_counts[kind] = int(counts[code])
        if kind is OutcomeClass.PERMANENT_REMORTGAGE:
            continue
        mean_t[kind] = (t_sums[code] / counts[code]) if counts[code] else None

    return EnsembleStats(
        n_paths=n_paths,
        outcome_counts=outcome_counts,
        mean_equity=mean_e,
        mean_mortgage=mean_m,
        se_equity=se_e,
        se_mortgage=se_m,
        mean_t_star=mean_t,
    )
