"""Phase diagrams over the (p, s) plane.

A sweep classifies the deterministic mean path at every grid cell. Cells are
independent; chunks may be scheduled across workers arbitrarily and the
output stays row-major and bit-identical. Iso-hitting-time contours come
from marching squares on the t_star field.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels.codes import REMORTGAGE
from .errors import GridRangeError, ParamError
from .meanpath import (DEFAULT_HORIZON, SINGULARITY_TOL, Outcome,
                       OutcomeClass, outcome_code, outcome_from_code)
from .montecarlo import simulate_ensemble
from .params import FiscalParams, LoanParams, MarketParams

#: grid cells per worker task; fixed chunking keeps scheduling irrelevant
CHUNK_CELLS = 8192


@dataclass(frozen=True)
class GridSpec:
    """Affine (p, s) grid; cell centres include both range endpoints."""

    p_min: float
    p_max: float
    s_min: float
    s_max: float
    n_p: int = 201
    n_s: int = 201

    def __post_init__(self) -> None:
        if not (0.0 <= self.p_min < self.p_max <= 1.0):
            raise ParamError(
                f"need 0 <= p_min < p_max <= 1, got [{self.p_min}, {self.p_max}]")
        if not self.s_min < self.s_max:
            raise ParamError(
                f"need s_min < s_max, got [{self.s_min}, {self.s_max}]")
        if self.n_p < 2 or self.n_s < 2:
            raise ParamError(f"need n_p, n_s >= 2, got {self.n_p}x{self.n_s}")

    def p_values(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    def s_values(self) -> np.ndarray:
        return np.linspace(self.s_min, self.s_max, self.n_s)


@dataclass(frozen=True)
class PhaseCell:
    """One grid cell: centre coordinates and the outcome there."""

    p: float
    s: float
    outcome: Outcome


class PhaseGrid:
    """Sweep result: outcome codes and hitting times, row-major over (p, s).

    Row index runs over p, column index over s. `codes` and `tstars` are the
    flat kernel outputs; `cells` materialises the PhaseCell view.
    """

    def __init__(self, spec: GridSpec, codes: np.ndarray, tstars: np.ndarray):
        if codes.shape != (spec.n_p * spec.n_s,) or tstars.shape != codes.shape:
            raise ParamError("codes/tstars length must equal n_p * n_s")
        self.spec = spec
        self.codes = np.asarray(codes, dtype=np.int8)
        self.tstars = np.asarray(tstars, dtype=np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseGrid):
            return NotImplemented
        return (self.spec == other.spec
                and np.array_equal(self.codes, other.codes)
                and np.array_equal(self.tstars, other.tstars))

    def cell_at(self, i: int, j: int) -> PhaseCell:
        flat = i * self.spec.n_s + j
        return PhaseCell(
            p=float(self.spec.p_values()[i]),
            s=float(self.spec.s_values()[j]),
            outcome=outcome_from_code(self.codes[flat], self.tstars[flat]),
        )

    @property
    def cells(self) -> list[PhaseCell]:
        p_vals = self.spec.p_values()
        s_vals = self.spec.s_values()
        out = []
        for i in range(self.spec.n_p):
            for j in range(self.spec.n_s):
                flat = i * self.spec.n_s + j
                out.append(PhaseCell(
                    p=float(p_vals[i]), s=float(s_vals[j]),
                    outcome=outcome_from_code(self.codes[flat], self.tstars[flat])))
        return out

    def tstar_field(self) -> np.ndarray:
        """(n_p, n_s) float field of hitting times, +inf where none."""
        field = self.tstars.astype(np.float64).reshape(self.spec.n_p, self.spec.n_s)
        field[self.codes.reshape(field.shape) == REMORTGAGE] = np.inf
        return field

    def success_count(self) -> int:
        return int(np.count_nonzero(self.codes <= 1))


def sweep(spec: GridSpec, loan: LoanParams, fiscal: FiscalParams,
          phi: float = 0.01, horizon: int = DEFAULT_HORIZON,
          workers: int = 1, backend: str | None = None,
          mc_paths: int | None = None, master_seed: int = 0) -> PhaseGrid:
    """Classify every cell of the grid.

    The default mode classifies the deterministic mean path (closed form
    with recursion fallback) and does not depend on phi. mc_paths switches
    on the Monte Carlo validation mode: each cell takes the majority outcome
    over that many paths at volatility phi, far slower and only meant for
    cross-checking the analytic diagram.
    """
    if mc_paths is not None:
        return _sweep_mc(spec, loan, fiscal, phi, horizon, mc_paths,
                         master_seed, backend)
    kern = _kernels.resolve(backend)
    p_cells = np.repeat(spec.p_values(), spec.n_s)
    s_cells = np.tile(spec.s_values(), spec.n_p)
    n = p_cells.size
    codes = np.empty(n, dtype=np.int8)
    tstars = np.empty(n, dtype=np.int64)
    args = (loan.ell, loan.mu,
            loan.ell * (1.0 - fiscal.tau_b) * fiscal.r_b,
            fiscal.tau_m * fiscal.r_m,
            fiscal.r_m,
            loan.e0, loan.m0, loan.pi_avg, loan.repayment_benchmark,
            horizon, SINGULARITY_TOL)

    spans = [(lo, min(lo + CHUNK_CELLS, n)) for lo in range(0, n, CHUNK_CELLS)]

    def run(span):
        lo, hi = span
        c, t = kern.phase_classify(p_cells[lo:hi], s_cells[lo:hi], *args)
        codes[lo:hi] = c
        tstars[lo:hi] = t

    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, spans))
    else:
        for span in spans:
            run(span)
    return PhaseGrid(spec, codes, tstars)


def _sweep_mc(spec, loan, fiscal, phi, horizon, mc_paths, master_seed, backend):
    p_vals = spec.p_values()
    s_vals = spec.s_values()
    codes = np.empty(spec.n_p * spec.n_s, dtype=np.int8)
    tstars = np.full(spec.n_p * spec.n_s, -1, dtype=np.int64)
    for i, p in enumerate(p_vals):
        for j, s in enumerate(s_vals):
            flat = i * spec.n_s + j
            stats = simulate_ensemble(
                loan, fiscal, MarketParams(p=float(p), s=float(s), phi=phi),
                horizon, mc_paths, master_seed + flat, backend=backend)
            kind = max(OutcomeClass, key=lambda k: (stats.outcome_counts[k],
                                                    -outcome_code(k)))
            codes[flat] = outcome_code(kind)
            if kind is not OutcomeClass.PERMANENT_REMORTGAGE:
                tstars[flat] = int(round(stats.mean_t_star[kind]))
    return PhaseGrid(spec, codes, tstars)


def locate_point(grid: PhaseGrid, p: float, s: float) -> PhaseCell:
    """Cell whose centre is nearest to (p, s); raises outside grid bounds."""
    spec = grid.spec
    if not (spec.p_min <= p <= spec.p_max and spec.s_min <= s <= spec.s_max):
        raise GridRangeError(
            f"point (p={p}, s={s}) outside grid "
            f"[{spec.p_min}, {spec.p_max}] x [{spec.s_min}, {spec.s_max}]")
    i = int(round((p - spec.p_min) / (spec.p_max - spec.p_min) * (spec.n_p - 1)))
    j = int(round((s - spec.s_min) / (spec.s_max - spec.s_min) * (spec.n_s - 1)))
    return grid.cell_at(i, j)


# marching-squares segment table: case index bit k set means corner k is
# "inside" (t_star < level); corners 0..3 = (i,j), (i+1,j), (i+1,j+1), (i,j+1);
# edges 0..3 = bottom (0-1), right (1-2), top (2-3), left (3-0)
_SEGMENTS: dict[int, tuple[tuple[int, int], ...]] = {
    0: (), 15: (),
    1: ((3, 0),), 14: ((3, 0),),
    2: ((0, 1),), 13: ((0, 1),),
    4: ((1, 2),), 11: ((1, 2),),
    8: ((2, 3),), 7: ((2, 3),),
    3: ((3, 1),), 12: ((3, 1),),
    6: ((0, 2),), 9: ((0, 2),),
    # saddles resolved by the centre value: handled in code
    5: ((3, 0), (1, 2)),
    10: ((0, 1), (2, 3)),
}


def iso_time_contours(grid: PhaseGrid, levels: list[float]
                      ) -> dict[float, list[list[tuple[float, float]]]]:
    """Iso-hitting-time polylines for each requested level.

    Marching squares over the t_star field at the cell centres. Cells with
    no hitting time count as above any level; edges touching them place the
    crossing at the edge midpoint since no interpolation is possible. Output
    maps level -> list of 2-point polylines in (p, s) coordinates.
    """
    out: dict[float, list[list[tuple[float, float]]]] = {}
    if not levels:
        return out
    field = grid.tstar_field()
    p_vals = grid.spec.p_values()
    s_vals = grid.spec.s_values()
    for level in levels:
        if level <= 0:
            raise ParamError(f"contour levels must be positive, got {level}")
        out[level] = _march(field, p_vals, s_vals, float(level))
    return out


def _interp(c0, c1, v0, v1, level):
    """Crossing point on the edge c0-c1; midpoint when a corner is missing."""
    if np.isinf(v0) or np.isinf(v1):
        frac = 0.5
    else:
        frac = (level - v0) / (v1 - v0)
    return (c0[0] + frac * (c1[0] - c0[0]), c0[1] + frac * (c1[1] - c0[1]))


def _march(field, p_vals, s_vals, level):
    segments: list[list[tuple[float, float]]] = []
    n_p, n_s = field.shape
    for i in range(n_p - 1):
        for j in range(n_s - 1):
            vals = (field[i, j], field[i + 1, j],
                    field[i + 1, j + 1], field[i, j + 1])
            corners = ((p_vals[i], s_vals[j]), (p_vals[i + 1], s_vals[j]),
                       (p_vals[i + 1], s_vals[j + 1]), (p_vals[i], s_vals[j + 1]))
            case = 0
            for bit, v in enumerate(vals):
                if v < level:
                    case |= 1 << bit
            if case in (0, 15):
                continue
            pairs = _SEGMENTS[case]
            if case in (5, 10):
                # saddle: centre average decides connectivity; inf propagates,
                # so any missing corner forces the disconnected resolution
                centre_inside = np.mean(vals) < level
                if case == 5:
                    pairs = ((0, 1), (2, 3)) if centre_inside else ((3, 0), (1, 2))
                else:
                    pairs = ((3, 0), (1, 2)) if centre_inside else ((0, 1), (2, 3))
            edge_nodes = ((0, 1), (1, 2), (2, 3), (3, 0))
            for e_a, e_b in pairs:
                pts = []
                for edge in (e_a, e_b):
                    a, b = edge_nodes[edge]
                    pts.append(_interp(corners[a], corners[b],
                                       vals[a], vals[b], level))
                segments.append(pts)
    return segments
