"""Model parameter containers and rate conversion.

All rates inside the engine are per-quarter fractions; annual figures are
converted once at the boundary with :func:`annual_to_quarterly`. Amounts are
unit-agnostic decimals (the dynamics are scale invariant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParamError


def annual_to_quarterly(r_annual: float) -> float:
    """Convert an annual compound rate to its quarterly equivalent.

    Uses the compounding map (1 + r)^(1/4) - 1, which is strictly increasing
    and maps 0 to 0.
    """
    if not r_annual > -1.0:
        raise ParamError(f"annual rate must exceed -1, got {r_annual}")
    return math.expm1(0.25 * math.log1p(r_annual))


def _check(cond: bool, name: str, constraint: str, value) -> None:
    if not cond:
        raise ParamError(f"{name}: expected {constraint}, got {value}")


@dataclass(frozen=True)
class LoanParams:
    """Structural loan parameters: leverage, exposure and payment schedule.

    ell       loan-to-value ratio limiting equity-backed borrowing
    mu        fraction of usable equity put at risk each quarter
    e0, m0    initial equity and mortgage balance
    pi_star   scheduled quarterly payment
    q_skip    probability that a scheduled payment is skipped
    """

    ell: float = 0.5
    mu: float = 0.5
    e0: float = 30_000.0
    m0: float = 300_000.0
    pi_star: float = 3_000.0
    q_skip: float = 0.01

    def __post_init__(self) -> None:
        _check(0.0 <= self.ell <= 1.0, "ell", "0 <= ell <= 1", self.ell)
        _check(0.0 <= self.mu <= 1.0, "mu", "0 <= mu <= 1", self.mu)
        _check(self.e0 > 0.0, "e0", "e0 > 0", self.e0)
        _check(self.m0 > 0.0, "m0", "m0 > 0", self.m0)
        _check(self.pi_star >= 0.0, "pi_star", "pi_star >= 0", self.pi_star)
        _check(0.0 <= self.q_skip < 1.0, "q_skip", "0 <= q_skip < 1", self.q_skip)

    @property
    def pi_avg(self) -> float:
        """Average realised payment (1 - q_skip) * pi_star."""
        return (1.0 - self.q_skip) * self.pi_star

    @property
    def repayment_benchmark(self) -> float:
        """Quarters a payment-only schedule would need: m0 / pi_star."""
        if self.pi_star == 0.0:
            return math.inf
        return self.m0 / self.pi_star


@dataclass(frozen=True)
class FiscalParams:
    """Quarterly interest rates and the marginal tax rates shielding them.

    r_m, r_b    quarterly mortgage and borrowing rates
    tau_m       marginal tax rate on mortgage-interest deductions
    tau_b       marginal tax rate on investment-interest deductions
    """

    r_m: float = 0.0
    r_b: float = 0.0
    tau_m: float = 0.0
    tau_b: float = 0.0

    def __post_init__(self) -> None:
        _check(self.r_m >= 0.0, "r_m", "r_m >= 0", self.r_m)
        _check(self.r_b >= 0.0, "r_b", "r_b >= 0", self.r_b)
        _check(0.0 <= self.tau_m <= 1.0, "tau_m", "0 <= tau_m <= 1", self.tau_m)
        _check(0.0 <= self.tau_b <= 1.0, "tau_b", "0 <= tau_b <= 1", self.tau_b)

    @classmethod
    def from_annual(cls, r_m_annual: float, r_b_annual: float,
                    tau_m: float, tau_b: float) -> "FiscalParams":
        return cls(r_m=annual_to_quarterly(r_m_annual),
                   r_b=annual_to_quarterly(r_b_annual),
                   tau_m=tau_m, tau_b=tau_b)


@dataclass(frozen=True)
class MarketParams:
    """Market environment: investment success probability and housing drift.

    p     per-quarter probability of a successful investment outcome
    s     mean quarterly housing drift
    phi   standard deviation of the quarterly housing shock
    """

    p: float = 0.5
    s: float = 0.0
    phi: float = 0.01

    def __post_init__(self) -> None:
        _check(0.0 <= self.p <= 1.0, "p", "0 <= p <= 1", self.p)
        _check(self.phi >= 0.0, "phi", "phi >= 0", self.phi)
        _check(math.isfinite(self.s), "s", "finite drift", self.s)
