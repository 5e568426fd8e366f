import pathlib

import numpy as np
import pytest

import debtcycle as dc

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

OWNER_PRESETS = ("australia_owner", "germany_owner", "switzerland_owner")
RENTAL_PRESETS = ("australia_rental", "germany_rental", "switzerland_rental")
ALL_PRESETS = OWNER_PRESETS + RENTAL_PRESETS


@pytest.fixture(scope="session")
def base_loan():
    return dc.LoanParams()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels once so timed tests exclude JIT cost."""
    loan = dc.LoanParams()
    fiscal = dc.FiscalParams()
    market = dc.MarketParams(p=0.6, s=0.01)
    for backend in dc.available_backends():
        dc.simulate_ensemble(loan, fiscal, market, 4, 8, 0, backend=backend)
        dc.classify_mean(loan, fiscal, market, horizon=8, backend=backend)


def random_params(rng: np.random.Generator, zero_rates: bool = False):
    """One random-but-sane parameter draw for property checks."""
    loan = dc.LoanParams(
        ell=rng.uniform(0.05, 1.0),
        mu=rng.uniform(0.05, 1.0),
        e0=rng.uniform(5_000.0, 100_000.0),
        m0=rng.uniform(50_000.0, 900_000.0),
        pi_star=rng.uniform(0.0, 10_000.0),
        q_skip=rng.uniform(0.0, 0.2),
    )
    if zero_rates:
        fiscal = dc.FiscalParams()
    else:
        fiscal = dc.FiscalParams(
            r_m=rng.uniform(0.0, 0.03),
            r_b=rng.uniform(0.0, 0.03),
            tau_m=rng.uniform(0.0, 1.0),
            tau_b=rng.uniform(0.0, 1.0),
        )
    market = dc.MarketParams(p=rng.uniform(0.0, 1.0),
                             s=rng.uniform(-0.06, 0.06),
                             phi=rng.uniform(0.0, 0.03))
    return loan, fiscal, market


def nondegenerate_draw(rng: np.random.Generator):
    """Random draw whose eigensystem is real and clear of the guards."""
    while True:
        loan, fiscal, market = random_params(rng)
        eig = dc.eigensystem(dc.mean_matrix(loan, fiscal, market))
        if eig.is_complex:
            continue
        l1, l2 = eig.lambda1, eig.lambda2
        if (abs(l1 - l2) > 1e-6 and abs(l1 - 1.0) > 1e-6
                and abs(l2 - 1.0) > 1e-6):
            return loan, fiscal, market
