"""Numba-jitted kernels. Mirrors numpy_backend semantics exactly.

All jitted functions run with nogil so the block scheduler can use threads;
fastmath stays off to keep IEEE semantics aligned with the numpy backend.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .codes import DEFAULT, REMORTGAGE, STRONG, WEAK

name = "numba"


@njit(cache=True, nogil=True)
def mc_block(e0, m0, sigma, ret, pay, k_i, k_b, k_m, g_m, benchmark, absorb):
    n, horizon = sigma.shape
    sum_e = np.zeros(horizon + 1)
    sum_m = np.zeros(horizon + 1)
    sumsq_e = np.zeros(horizon + 1)
    sumsq_m = np.zeros(horizon + 1)
    codes = np.full(n, REMORTGAGE, dtype=np.int8)
    tstars = np.full(n, -1, dtype=np.int64)

    for j in range(n):
        e = e0
        m = m0
        sum_e[0] += e
        sum_m[0] += m
        sumsq_e[0] += e * e
        sumsq_m[0] += m * m
        open_ = True
        for t in range(1, horizon + 1):
            if open_ or not absorb:
                inv = (sigma[j, t - 1] * k_i) * e
                pi = pay[j, t - 1]
                e_new = e + pi + inv + (e + m) * ret[j, t - 1] - k_b * e + k_m * m
                m_new = g_m * m - pi - inv
                e = e_new
                m = m_new
                if open_:
                    if e <= 0.0:
                        codes[j] = DEFAULT
                        tstars[j] = t
                        open_ = False
                    elif m <= 0.0:
                        codes[j] = STRONG if t < benchmark else WEAK
                        tstars[j] = t
                        open_ = False
            sum_e[t] += e
            sum_m[t] += m
            sumsq_e[t] += e * e
            sumsq_m[t] += m * m

    return sum_e, sum_m, sumsq_e, sumsq_m, codes, tstars


@njit(cache=True, nogil=True, inline="always")
def _eig_pair_scalar(tr, det, disc):
    sq = np.sqrt(max(disc, 0.0))
    if tr >= 0.0:
        qroot = 0.5 * (tr + sq)
        other = det / qroot if qroot != 0.0 else 0.5 * (tr - sq)
        return qroot, other
    qroot = 0.5 * (tr - sq)
    other = det / qroot if qroot != 0.0 else 0.5 * (tr + sq)
    return other, qroot


@njit(cache=True, nogil=True)
def phase_classify(p_cells, s_cells, ell, mu, k_b, k_m, r_m, e0, m0, pi_avg,
                   benchmark, horizon, guard_tol):
    n = p_cells.size
    codes = np.full(n, REMORTGAGE, dtype=np.int8)
    tstars = np.full(n, -1, dtype=np.int64)

    for i in range(n):
        k = (ell * mu) * (2.0 * p_cells[i] - 1.0)
        a11 = 1.0 + s_cells[i] + k - k_b
        a12 = s_cells[i] + k_m
        a21 = -k
        a22 = 1.0 + r_m
        tr = a11 + a22
        det = a11 * a22 - a12 * a21
        disc = (a11 - a22) ** 2 + 4.0 * (a12 * a21)
        lam1, lam2 = _eig_pair_scalar(tr, det, disc)
        closed = (
            disc > 0.0
            and abs(lam1 - lam2) > guard_tol
            and abs(lam1 - 1.0) > guard_tol
            and abs(lam2 - 1.0) > guard_tol
        )

        if closed:
            delta = (1.0 - lam1) * (1.0 - lam2)
            w_e = pi_avg * (1.0 - a22 - a12) / delta
            w_m = pi_avg * (a21 - 1.0 + a11) / delta
            y0e = e0 - w_e
            y0m = m0 - w_m
            gap = lam1 - lam2
            u_e = ((a11 - lam2) * y0e + a12 * y0m) / gap
            v_e = y0e - u_e
            u_m = (a21 * y0e + (a22 - lam2) * y0m) / gap
            v_m = y0m - u_m
            l1t = 1.0
            l2t = 1.0
            for t in range(1, horizon + 1):
                l1t = l1t * lam1
                l2t = l2t * lam2
                e = u_e * l1t + v_e * l2t + w_e
                m = u_m * l1t + v_m * l2t + w_m
                if e <= 0.0:
                    codes[i] = DEFAULT
                    tstars[i] = t
                    break
                if m <= 0.0:
                    codes[i] = STRONG if t < benchmark else WEAK
                    tstars[i] = t
                    break
        else:
            e = e0
            m = m0
            for t in range(1, horizon + 1):
                e, m = a11 * e + a12 * m + pi_avg, a21 * e + a22 * m - pi_avg
                if e <= 0.0:
                    codes[i] = DEFAULT
                    tstars[i] = t
                    break
                if m <= 0.0:
                    codes[i] = STRONG if t < benchmark else WEAK
                    tstars[i] = t
                    break

    return codes, tstars
