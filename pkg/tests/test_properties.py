"""Property-based checks of the model invariants."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import debtcycle as dc
from conftest import nondegenerate_draw, random_params

probs = st.floats(min_value=0.0, max_value=1.0)
drifts = st.floats(min_value=-0.06, max_value=0.06)
fracs = st.floats(min_value=0.05, max_value=1.0)
qrates = st.floats(min_value=0.0, max_value=0.03)
taxes = st.floats(min_value=0.0, max_value=1.0)


def run_unstopped(loan, fiscal, shocks, horizon):
    """Raw dynamics without absorption, via the public step op."""
    state = dc.State(loan.e0, loan.m0)
    out = [state]
    for t in range(horizon):
        state = dc.step(state, shocks[t], loan, fiscal)
        out.append(state)
    return out


def shared_shocks(seed, horizon, loan, market):
    sig, ret, pay = dc.path_shocks(seed, 0, horizon, loan, market)
    return [dc.ShockTriple(sig[t], ret[t], pay[t]) for t in range(horizon)]


class TestShieldNeutrality:
    @given(st.integers(0, 2**32 - 1), qrates, qrates)
    @settings(max_examples=30, deadline=None)
    def test_full_borrowing_shield_makes_r_b_irrelevant(self, seed, rb1, rb2):
        loan = dc.LoanParams()
        market = dc.MarketParams(p=0.6, s=0.01, phi=0.01)
        shocks = shared_shocks(seed, 40, loan, market)
        a = run_unstopped(loan, dc.FiscalParams(r_b=rb1, tau_b=1.0), shocks, 40)
        b = run_unstopped(loan, dc.FiscalParams(r_b=rb2, tau_b=1.0), shocks, 40)
        assert a == b  # bitwise: the cost coefficient is exactly zero

    @given(st.integers(0, 2**32 - 1), taxes, taxes)
    @settings(max_examples=30, deadline=None)
    def test_zero_mortgage_rate_makes_tau_m_irrelevant(self, seed, tm1, tm2):
        loan = dc.LoanParams()
        market = dc.MarketParams(p=0.5, s=0.0, phi=0.02)
        shocks = shared_shocks(seed, 40, loan, market)
        a = run_unstopped(loan, dc.FiscalParams(r_m=0.0, tau_m=tm1), shocks, 40)
        b = run_unstopped(loan, dc.FiscalParams(r_m=0.0, tau_m=tm2), shocks, 40)
        assert a == b


class TestMonotonicityUnderCommonRandomNumbers:
    @given(st.integers(0, 2**32 - 1), qrates,
           st.floats(min_value=1e-4, max_value=0.02))
    @settings(max_examples=30, deadline=None)
    def test_higher_borrowing_cost_never_helps_equity(self, seed, rb, bump):
        loan = dc.LoanParams()
        market = dc.MarketParams(p=0.6, s=0.01, phi=0.01)
        shocks = shared_shocks(seed, 60, loan, market)
        cheap = run_unstopped(loan, dc.FiscalParams(r_b=rb, tau_b=0.3),
                              shocks, 60)
        dear = run_unstopped(loan, dc.FiscalParams(r_b=rb + bump, tau_b=0.3),
                             shocks, 60)
        for lo, hi in zip(dear, cheap):
            if lo.equity <= 0.0 or hi.equity <= 0.0:
                break  # compare only while both paths are live
            assert lo.equity <= hi.equity + 1e-9

    @given(st.integers(0, 2**32 - 1),
           st.floats(min_value=0.0, max_value=0.9),
           st.floats(min_value=1e-3, max_value=0.1))
    @settings(max_examples=30, deadline=None)
    def test_bigger_mortgage_shield_never_hurts_equity(self, seed, tm, bump):
        loan = dc.LoanParams()
        fiscal_lo = dc.FiscalParams(r_m=0.01, tau_m=tm)
        fiscal_hi = dc.FiscalParams(r_m=0.01, tau_m=tm + bump)
        market = dc.MarketParams(p=0.5, s=0.0, phi=0.01)
        shocks = shared_shocks(seed, 60, loan, market)
        lo = run_unstopped(loan, fiscal_lo, shocks, 60)
        hi = run_unstopped(loan, fiscal_hi, shocks, 60)
        for a, b in zip(lo, hi):
            if a.mortgage <= 0.0 or b.mortgage <= 0.0 or a.equity <= 0.0 \
                    or b.equity <= 0.0:
                break  # the shield argument needs a live, positive balance
            assert b.equity >= a.equity - 1e-9


class TestBaseModelConservation:
    @given(st.integers(0, 2**32 - 1), probs, drifts, fracs, fracs)
    @settings(max_examples=40, deadline=None)
    def test_house_value_growth_identity(self, seed, p, s, ell, mu):
        loan = dc.LoanParams(ell=ell, mu=mu)
        market = dc.MarketParams(p=p, s=s, phi=0.02)
        shocks = shared_shocks(seed, 30, loan, market)
        states = run_unstopped(loan, dc.FiscalParams(), shocks, 30)
        for t in range(1, 31):
            expected = states[t - 1].house_value * (1.0 + shocks[t - 1].r)
            # roundoff scales with the components, which can dwarf their sum
            # when equity and mortgage diverge to opposite signs
            scale = max(abs(states[t].equity), abs(states[t].mortgage),
                        abs(expected))
            assert abs(states[t].house_value - expected) <= 1e-12 * scale


class TestEigenProperties:
    @given(fracs, fracs, probs, drifts)
    @settings(max_examples=80, deadline=None)
    def test_zero_rate_reduction(self, ell, mu, p, s):
        from hypothesis import assume

        loan = dc.LoanParams(ell=ell, mu=mu)
        eig = dc.eigensystem(dc.mean_matrix(loan, dc.FiscalParams(),
                                            dc.MarketParams(p=p, s=s)))
        k = ell * mu * (2.0 * p - 1.0)
        gap = abs(k - s)
        assume(not eig.is_complex)  # only at fp-degenerate k == s corners
        # near k == s the matrix approaches a Jordan block and the pair is
        # ill-conditioned in the entries' own rounding: allow eps/gap there
        tol = 1e-12 + 5e-17 / max(gap, 1e-15)
        got = sorted((eig.lambda1, eig.lambda2))
        want = sorted((1.0 + s, 1.0 + k))
        assert got[0] == pytest.approx(want[0], abs=tol)
        assert got[1] == pytest.approx(want[1], abs=tol)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_characteristic_residual(self, seed):
        rng = np.random.default_rng(seed)
        loan, fiscal, market = random_params(rng)
        eig = dc.eigensystem(dc.mean_matrix(loan, fiscal, market))
        for lam in (eig.lambda1, eig.lambda2):
            assert abs(lam * lam - eig.trace * lam + eig.det) < 1e-10


class TestClosedFormProperties:
    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_matches_recursion_and_sums(self, seed):
        rng = np.random.default_rng(seed)
        loan, fiscal, market = nondegenerate_draw(rng)
        m = dc.mean_matrix(loan, fiscal, market)
        cf = dc.closed_form_coeffs(m, dc.eigensystem(m), loan)
        assert cf.cA + cf.cB + cf.cC == pytest.approx(1.0, abs=1e-9)
        assert cf.cD + cf.cE + cf.cF == pytest.approx(1.0, abs=1e-9)
        a = dc.mean_trajectory(loan, fiscal, market, 120)
        b = dc.iterate_mean(loan, fiscal, market, 120)
        scale = max(np.abs(a).max(), np.abs(b).max())
        assert np.abs(a - b).max() / scale < 1e-9


class TestEstimatorScaleInvariance:
    @given(st.lists(st.floats(min_value=-0.05, max_value=0.05)
                    .filter(lambda r: abs(r) > 1e-4),
                    min_size=3, max_size=40),
           st.floats(min_value=1e-4, max_value=1e6))
    @settings(max_examples=50, deadline=None)
    def test_p_hat(self, returns, c):
        import datetime as dt
        prices = [1000.0]
        for r in returns:
            prices.append(prices[-1] * (1.0 + r))
        dates = [dt.date(2020, 1, 1) + dt.timedelta(days=i)
                 for i in range(len(prices))]
        base = dc.DailyCloseSeries(tuple(dates), tuple(prices))
        scaled = dc.DailyCloseSeries(tuple(dates),
                                     tuple(c * x for x in prices))
        assert dc.estimate_p(base) == dc.estimate_p(scaled)
        assert 0.0 <= dc.estimate_p(base).p_hat <= 1.0

    @given(st.lists(st.floats(min_value=-0.2, max_value=0.2)
                    .filter(lambda r: abs(r) > 1e-4),
                    min_size=2, max_size=30),
           st.floats(min_value=1e-3, max_value=1e4))
    @settings(max_examples=50, deadline=None)
    def test_s_hat(self, moves, c):
        levels = [100.0]
        for r in moves:
            levels.append(levels[-1] * (1.0 + r))
        quarters = []
        y, q = 2000, 1
        for _ in levels:
            quarters.append((y, q))
            q += 1
            if q == 5:
                y, q = y + 1, 1
        base = dc.QuarterlyIndexSeries(tuple(quarters), tuple(levels))
        scaled = dc.QuarterlyIndexSeries(tuple(quarters),
                                         tuple(c * x for x in levels))
        got = dc.estimate_s(scaled)
        want = dc.estimate_s(base)
        for a, b in zip(got.drifts, want.drifts):
            assert a.s_hat == pytest.approx(b.s_hat, rel=1e-9)
            assert a.s_hat > -1.0
