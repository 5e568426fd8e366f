"""Deterministic mean-process machinery.

The average state (mean equity, mean mortgage) follows the affine recursion

    x_t = A x_{t-1} + (pi_avg, -pi_avg)

with the 2x2 mean transition matrix A built from the loan, fiscal and market
parameters. Trajectories come either from the closed form

    E_t / E0 = cA lam1^t + cB lam2^t + cC
    M_t / M0 = cD lam1^t + cE lam2^t + cF

or, when the eigensystem is complex, degenerate, or an eigenvalue sits on the
unit point, from exact iteration of the recursion. The closed-form
coefficients are obtained from the spectral projectors of A together with its
affine fixed point, which keeps both routes in agreement to near machine
precision. In the zero-rate special case the payment vector is itself an
eigenvector and the coefficients collapse to expressions in the eigenvalues
and the initial-condition ratios alone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels.codes import DEFAULT, REMORTGAGE, STRONG, WEAK
from .errors import NearSingularError, ParamError
from .params import FiscalParams, LoanParams, MarketParams

#: eigenvalues closer than this to 1, or to each other, trigger the
#: recursion fallback (the coefficient formulas divide by both gaps)
SINGULARITY_TOL = 1e-9

DEFAULT_HORIZON = 400


class OutcomeClass(enum.Enum):
    """Terminal classification of a trajectory."""

    STRONG_SUCCESS = "strong_success"
    WEAK_SUCCESS = "weak_success"
    DEFAULT = "default"
    PERMANENT_REMORTGAGE = "remortgage"

    @property
    def token(self) -> str:
        return self.value

    @property
    def is_success(self) -> bool:
        return self in (OutcomeClass.STRONG_SUCCESS, OutcomeClass.WEAK_SUCCESS)


_CODE_TO_CLASS = {
    STRONG: OutcomeClass.STRONG_SUCCESS,
    WEAK: OutcomeClass.WEAK_SUCCESS,
    DEFAULT: OutcomeClass.DEFAULT,
    REMORTGAGE: OutcomeClass.PERMANENT_REMORTGAGE,
}
_CLASS_TO_CODE = {v: k for k, v in _CODE_TO_CLASS.items()}


@dataclass(frozen=True)
class Outcome:
    """Outcome class plus the hitting time in quarters (None if never hit)."""

    kind: OutcomeClass
    t_star: int | None

    def __post_init__(self) -> None:
        has_t = self.t_star is not None
        if has_t == (self.kind is OutcomeClass.PERMANENT_REMORTGAGE):
            raise ParamError(
                f"t_star={self.t_star} inconsistent with outcome {self.kind}"
            )


def outcome_from_code(code: int, t_star: int) -> Outcome:
    kind = _CODE_TO_CLASS[int(code)]
    return Outcome(kind, None if t_star < 0 else int(t_star))


def outcome_code(kind: OutcomeClass) -> int:
    return _CLASS_TO_CODE[kind]


@dataclass(frozen=True)
class MeanMatrix:
    """Entries of the 2x2 average evolution matrix."""

    a11: float
    a12: float
    a21: float
    a22: float

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def discriminant(self) -> float:
        # (a11 - a22)^2 + 4 a12 a21 equals trace^2 - 4 det but avoids the
        # cancellation of two O(4) terms, which matters for near-degenerate
        # eigenvalues.
        return (self.a11 - self.a22) ** 2 + 4.0 * (self.a12 * self.a21)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])


def mean_matrix(loan: LoanParams, fiscal: FiscalParams,
                market: MarketParams) -> MeanMatrix:
    """Average evolution matrix of the extended equity/mortgage dynamics."""
    k = loan.ell * loan.mu * (2.0 * market.p - 1.0)
    return MeanMatrix(
        a11=1.0 + market.s + k - loan.ell * (1.0 - fiscal.tau_b) * fiscal.r_b,
        a12=market.s + fiscal.tau_m * fiscal.r_m,
        a21=-k,
        a22=1.0 + fiscal.r_m,
    )


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues of the mean matrix with the invariants they came from.

    lambda1 carries the '+' branch of the quadratic formula. When the
    discriminant is negative the pair is complex-conjugate and is_complex is
    set; trajectory evaluation then falls back to the recursion.
    """

    lambda1: complex
    lambda2: complex
    trace: float
    det: float
    discriminant: float
    is_complex: bool


def eigensystem(m: MeanMatrix) -> EigenSystem:
    """Eigenvalues via the quadratic formula on trace and determinant.

    Real roots use the numerically stable variant: the large-magnitude root
    from the formula, the other from Vieta (det / lam). A complex pair is a
    flagged result, not an error.
    """
    tr = m.trace
    det = m.det
    disc = m.discriminant
    if disc < 0.0:
        half = 0.5 * math.sqrt(-disc)
        lam1 = complex(0.5 * tr, half)
        lam2 = complex(0.5 * tr, -half)
        return EigenSystem(lam1, lam2, tr, det, disc, True)
    sq = math.sqrt(disc)
    qroot = 0.5 * (tr + math.copysign(sq, tr))
    other = det / qroot if qroot != 0.0 else 0.5 * (tr - math.copysign(sq, tr))
    if tr >= 0.0:
        lam1, lam2 = qroot, other
    else:
        lam1, lam2 = other, qroot
    return EigenSystem(lam1, lam2, tr, det, disc, False)


@dataclass(frozen=True)
class ClosedFormCoeffs:
    """Constants of the closed-form mean trajectories.

    cA..cC multiply (lam1^t, lam2^t, 1) in E_t / E0; cD..cF likewise for
    M_t / M0. c1..c4 are the initial-condition ratios M0/E0, pi_avg/E0,
    E0/M0 and pi_avg/M0. Both triplets sum to one: at t = 0 the closed form
    must return the initial condition.
    """

    cA: float
    cB: float
    cC: float
    cD: float
    cE: float
    cF: float
    c1: float
    c2: float
    c3: float
    c4: float


def closed_form_coeffs(m: MeanMatrix, eig: EigenSystem,
                       loan: LoanParams) -> ClosedFormCoeffs:
    """Exact closed-form constants for the mean recursion.

    Decomposes the initial deviation from the affine fixed point
    w = (I - A)^-1 (pi_avg, -pi_avg) along the spectral projectors of A:

        x_t = w + lam1^t P1 (x0 - w) + lam2^t P2 (x0 - w),
        P1 = (A - lam2 I) / (lam1 - lam2),   P2 = I - P1.

    Raises NearSingularError when an eigenvalue is within SINGULARITY_TOL of
    1, the pair is degenerate, or the pair is complex; callers must then use
    the recursion fallback, which is exact everywhere.
    """
    if eig.is_complex:
        raise NearSingularError("complex eigenvalue pair; use the recursion fallback")
    lam1 = float(eig.lambda1.real)
    lam2 = float(eig.lambda2.real)
    if abs(lam1 - lam2) <= SINGULARITY_TOL:
        raise NearSingularError(f"degenerate eigenvalues lam1={lam1!r} lam2={lam2!r}")
    if abs(lam2 - 1.0) <= SINGULARITY_TOL or abs(lam1 - 1.0) <= SINGULARITY_TOL:
        raise NearSingularError(f"eigenvalue at unit point: lam1={lam1!r} lam2={lam2!r}")

    pi_avg = loan.pi_avg
    delta = (1.0 - lam1) * (1.0 - lam2)
    w_e = pi_avg * (1.0 - m.a22 - m.a12) / delta
    w_m = pi_avg * (m.a21 - 1.0 + m.a11) / delta
    y0e = loan.e0 - w_e
    y0m = loan.m0 - w_m
    gap = lam1 - lam2
    u_e = ((m.a11 - lam2) * y0e + m.a12 * y0m) / gap
    u_m = (m.a21 * y0e + (m.a22 - lam2) * y0m) / gap

    c1 = loan.m0 / loan.e0
    return ClosedFormCoeffs(
        cA=u_e / loan.e0,
        cB=(y0e - u_e) / loan.e0,
        cC=w_e / loan.e0,
        cD=u_m / loan.m0,
        cE=(y0m - u_m) / loan.m0,
        cF=w_m / loan.m0,
        c1=c1,
        c2=pi_avg / loan.e0,
        c3=1.0 / c1,
        c4=pi_avg / loan.m0,
    )


def iterate_mean(loan: LoanParams, fiscal: FiscalParams, market: MarketParams,
                 horizon: int) -> np.ndarray:
    """Exact iteration of the affine mean map.

    Returns an array of shape (horizon + 1, 2) with row t holding
    (mean_equity_t, mean_mortgage_t). Serves as the oracle for the closed
    form and as its fallback near singular configurations.
    """
    _check_horizon(horizon)
    m = mean_matrix(loan, fiscal, market)
    pi_avg = loan.pi_avg
    out = np.empty((horizon + 1, 2))
    e, mo = loan.e0, loan.m0
    out[0] = (e, mo)
    for t in range(1, horizon + 1):
        e, mo = (m.a11 * e + m.a12 * mo + pi_avg,
                 m.a21 * e + m.a22 * mo - pi_avg)
        out[t] = (e, mo)
    return out


def mean_trajectory(loan: LoanParams, fiscal: FiscalParams,
                    market: MarketParams, horizon: int) -> np.ndarray:
    """Closed-form mean trajectory, falling back to iterate_mean when needed.

    Same output shape as iterate_mean; both agree to relative ~1e-13 wherever
    the closed form is defined.
    """
    _check_horizon(horizon)
    m = mean_matrix(loan, fiscal, market)
    eig = eigensystem(m)
    try:
        cf = closed_form_coeffs(m, eig, loan)
    except NearSingularError:
        return iterate_mean(loan, fiscal, market, horizon)
    t = np.arange(horizon + 1, dtype=np.float64)
    l1t = np.power(eig.lambda1, t)
    l2t = np.power(eig.lambda2, t)
    out = np.empty((horizon + 1, 2))
    out[:, 0] = loan.e0 * (cf.cA * l1t + cf.cB * l2t + cf.cC)
    out[:, 1] = loan.m0 * (cf.cD * l1t + cf.cE * l2t + cf.cF)
    out[0] = (loan.e0, loan.m0)  # entry 0 is the initial condition, exactly
    return out


def classify_mean(loan: LoanParams, fiscal: FiscalParams, market: MarketParams,
                  horizon: int = DEFAULT_HORIZON,
                  backend: str | None = None) -> Outcome:
    """Classify the deterministic mean path.

    Scans quarters 1..horizon of the mean trajectory for the first boundary
    crossing: equity <= 0 gives Default, mortgage <= 0 gives Success (strong
    when the hit precedes the m0/pi_star payment-only benchmark, weak
    otherwise, equality weak). A tie in the same quarter resolves to Default;
    no crossing by the horizon is PermanentRemortgage.

    Delegates to the same cell kernel the phase sweep uses, so a sweep cell
    and a standalone call agree exactly.
    """
    _check_horizon(horizon)
    kern = _kernels.resolve(backend)
    codes, tstars = kern.phase_classify(
        np.array([market.p]), np.array([market.s]),
        loan.ell, loan.mu,
        loan.ell * (1.0 - fiscal.tau_b) * fiscal.r_b,
        fiscal.tau_m * fiscal.r_m,
        fiscal.r_m,
        loan.e0, loan.m0, loan.pi_avg, loan.repayment_benchmark,
        horizon, SINGULARITY_TOL,
    )
    return outcome_from_code(codes[0], tstars[0])


def _check_horizon(horizon: int) -> None:
    if horizon < 1:
        raise ParamError(f"horizon must be >= 1, got {horizon}")
