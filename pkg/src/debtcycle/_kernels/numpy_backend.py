"""Pure-numpy kernels: lockstep path stepping and grid classification.

Semantics must stay aligned with the numba backend: same update expressions,
same eigenvalue formulas, same guard logic. Summations here use numpy's
reductions, which are deterministic for a fixed block partition.
"""

from __future__ import annotations

import numpy as np

from .codes import DEFAULT, REMORTGAGE, STRONG, WEAK

name = "numpy"


def mc_block(e0, m0, sigma, ret, pay, k_i, k_b, k_m, g_m, benchmark, absorb):
    """Advance one block of paths through `sigma.shape[1]` quarters.

    sigma, ret, pay: (n_paths, horizon) shock arrays.
    Returns per-quarter sums/sum-of-squares (length horizon+1, quarter 0
    included) plus per-path outcome codes and hitting times (-1 if none).
    With absorb=True a path freezes at its first boundary crossing; the
    frozen terminal values keep contributing to the per-quarter sums.
    """
    n, horizon = sigma.shape
    e = np.full(n, e0)
    m = np.full(n, m0)
    codes = np.full(n, REMORTGAGE, dtype=np.int8)
    tstars = np.full(n, -1, dtype=np.int64)
    open_ = np.ones(n, dtype=bool)

    sum_e = np.empty(horizon + 1)
    sum_m = np.empty(horizon + 1)
    sumsq_e = np.empty(horizon + 1)
    sumsq_m = np.empty(horizon + 1)
    sum_e[0] = e.sum()
    sum_m[0] = m.sum()
    sumsq_e[0] = (e * e).sum()
    sumsq_m[0] = (m * m).sum()

    for t in range(1, horizon + 1):
        sig = sigma[:, t - 1]
        r = ret[:, t - 1]
        pi = pay[:, t - 1]
        inv = (sig * k_i) * e
        e_new = e + pi + inv + (e + m) * r - k_b * e + k_m * m
        m_new = g_m * m - pi - inv
        if absorb:
            e = np.where(open_, e_new, e)
            m = np.where(open_, m_new, m)
        else:
            e = e_new
            m = m_new
        hit_e = open_ & (e <= 0.0)
        hit_m = open_ & ~hit_e & (m <= 0.0)
        codes[hit_e] = DEFAULT
        codes[hit_m] = STRONG if t < benchmark else WEAK
        tstars[hit_e | hit_m] = t
        open_ &= ~(hit_e | hit_m)
        sum_e[t] = e.sum()
        sum_m[t] = m.sum()
        sumsq_e[t] = (e * e).sum()
        sumsq_m[t] = (m * m).sum()

    return sum_e, sum_m, sumsq_e, sumsq_m, codes, tstars


def _eig_pair(tr, det, disc):
    """Stable real roots of x^2 - tr x + det, with lam1 the '+' root.

    The smaller-magnitude root comes from Vieta to avoid cancellation.
    Only valid where disc >= 0.
    """
    sq = np.sqrt(np.maximum(disc, 0.0))
    qroot = 0.5 * (tr + np.copysign(sq, tr))
    with np.errstate(divide="ignore", invalid="ignore"):
        other = np.where(qroot != 0.0, det / qroot, 0.5 * (tr - np.copysign(sq, tr)))
    lam1 = np.where(tr >= 0.0, qroot, other)
    lam2 = np.where(tr >= 0.0, other, qroot)
    return lam1, lam2


def phase_classify(p_cells, s_cells, ell, mu, k_b, k_m, r_m, e0, m0, pi_avg,
                   benchmark, horizon, guard_tol):
    """Classify the deterministic mean path for each (p, s) cell.

    Uses the closed-form trajectory where the eigensystem is real and clear
    of the singularity guard, and the exact affine recursion elsewhere.
    Returns (codes, tstars) with tstar = -1 for remortgage cells.
    """
    n = p_cells.size
    k = (ell * mu) * (2.0 * p_cells - 1.0)
    a11 = 1.0 + s_cells + k - k_b
    a12 = s_cells + k_m
    a21 = -k
    a22 = np.full(n, 1.0 + r_m)
    tr = a11 + a22
    det = a11 * a22 - a12 * a21
    disc = (a11 - a22) ** 2 + 4.0 * (a12 * a21)

    lam1, lam2 = _eig_pair(tr, det, disc)
    closed = (
        (disc > 0.0)
        & (np.abs(lam1 - lam2) > guard_tol)
        & (np.abs(lam1 - 1.0) > guard_tol)
        & (np.abs(lam2 - 1.0) > guard_tol)
    )

    codes = np.full(n, REMORTGAGE, dtype=np.int8)
    tstars = np.full(n, -1, dtype=np.int64)

    idx_cf = np.flatnonzero(closed)
    if idx_cf.size:
        _classify_closed(idx_cf, a11, a12, a21, a22, lam1, lam2, e0, m0,
                         pi_avg, benchmark, horizon, codes, tstars)
    idx_it = np.flatnonzero(~closed)
    if idx_it.size:
        _classify_iterated(idx_it, a11, a12, a21, a22, e0, m0, pi_avg,
                           benchmark, horizon, codes, tstars)
    return codes, tstars


def _record_hits(t, e, m, open_, sub, benchmark, codes, tstars):
    hit_e = open_ & (e <= 0.0)
    hit_m = open_ & ~hit_e & (m <= 0.0)
    if hit_e.any():
        codes[sub[hit_e]] = DEFAULT
        tstars[sub[hit_e]] = t
    if hit_m.any():
        codes[sub[hit_m]] = STRONG if t < benchmark else WEAK
        tstars[sub[hit_m]] = t
    open_ &= ~(hit_e | hit_m)


def _classify_closed(sub, a11, a12, a21, a22, lam1, lam2, e0, m0, pi_avg,
                     benchmark, horizon, codes, tstars):
    a11 = a11[sub]
    a12 = a12[sub]
    a21 = a21[sub]
    a22 = a22[sub]
    l1 = lam1[sub]
    l2 = lam2[sub]

    # fixed point of the affine map, then spectral split of the deviation
    delta = (1.0 - l1) * (1.0 - l2)
    w_e = pi_avg * (1.0 - a22 - a12) / delta
    w_m = pi_avg * (a21 - 1.0 + a11) / delta
    y0e = e0 - w_e
    y0m = m0 - w_m
    gap = l1 - l2
    u_e = ((a11 - l2) * y0e + a12 * y0m) / gap
    v_e = y0e - u_e
    u_m = (a21 * y0e + (a22 - l2) * y0m) / gap
    v_m = y0m - u_m

    n = sub.size
    l1t = np.ones(n)
    l2t = np.ones(n)
    open_ = np.ones(n, dtype=bool)
    for t in range(1, horizon + 1):
        if not open_.any():
            break
        l1t = l1t * l1
        l2t = l2t * l2
        e = u_e * l1t + v_e * l2t + w_e
        m = u_m * l1t + v_m * l2t + w_m
        _record_hits(t, e, m, open_, sub, benchmark, codes, tstars)


def _classify_iterated(sub, a11, a12, a21, a22, e0, m0, pi_avg, benchmark,
                       horizon, codes, tstars):
    a11 = a11[sub]
    a12 = a12[sub]
    a21 = a21[sub]
    a22 = a22[sub]
    n = sub.size
    e = np.full(n, e0)
    m = np.full(n, m0)
    open_ = np.ones(n, dtype=bool)
    for t in range(1, horizon + 1):
        if not open_.any():
            break
        e, m = a11 * e + a12 * m + pi_avg, a21 * e + a22 * m - pi_avg
        _record_hits(t, e, m, open_, sub, benchmark, codes, tstars)
