"""Run configuration: flat key-value files, presets, defaults.

Config files are UTF-8 text, one ``key = value`` per line, ``#`` starts a
comment, blank lines ignored. Keys are dotted for grouping; the full set:

    loan.e0  loan.m0  loan.pi_star  loan.ell  loan.mu  loan.q_skip
    fiscal.r_m_annual  fiscal.r_b_annual  fiscal.tau_m  fiscal.tau_b
    market.p  market.s  market.phi
    sim.horizon  sim.n_paths  sim.seed
    grid.n_p  grid.n_s  grid.p_min  grid.p_max  grid.s_min  grid.s_max

Precedence, lowest to highest: engine defaults, preset fiscal values, config
file keys, explicit CLI flags. Rates are written in annual form and converted
at load time.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, ParamError
from .params import FiscalParams, LoanParams, MarketParams, annual_to_quarterly
from .phase import GridSpec
from .presets import CountryPreset

DEFAULTS: dict[str, float | int] = {
    "loan.e0": 30_000.0,
    "loan.m0": 300_000.0,
    "loan.pi_star": 3_000.0,
    "loan.ell": 0.5,
    "loan.mu": 0.5,
    "loan.q_skip": 0.01,
    "fiscal.r_m_annual": 0.0,
    "fiscal.r_b_annual": 0.0,
    "fiscal.tau_m": 0.0,
    "fiscal.tau_b": 0.0,
    "market.p": 0.5,
    "market.s": 0.0,
    "market.phi": 0.01,
    "sim.horizon": 400,
    "sim.n_paths": 100_000,
    "sim.seed": 0,
    "grid.n_p": 201,
    "grid.n_s": 201,
    "grid.p_min": 0.0,
    "grid.p_max": 1.0,
    "grid.s_min": -0.02,
    "grid.s_max": 0.02,
}

_INT_KEYS = {"sim.horizon", "sim.n_paths", "sim.seed", "grid.n_p", "grid.n_s"}
_GRID_KEYS = {k for k in DEFAULTS if k.startswith("grid.")}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters.

    fiscal holds quarterly rates; fiscal_annual keeps the annual figures they
    came from so emitters can record both forms. grid is present only when
    grid keys were configured.
    """

    loan: LoanParams
    fiscal: FiscalParams
    market: MarketParams
    horizon: int
    n_paths: int
    master_seed: int
    grid: GridSpec | None = None
    fiscal_annual: tuple[float, float] | None = None  # (r_m_annual, r_b_annual)

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ConfigError(f"sim.horizon: expected >= 1, got {self.horizon}")
        if self.n_paths < 1:
            raise ConfigError(f"sim.n_paths: expected >= 1, got {self.n_paths}")


def read_config_file(path: str | Path) -> dict[str, float | int]:
    """Parse a key-value config file into typed values."""
    values: dict[str, float | int] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, val, f"{path}:{lineno}")
    return values


def _coerce(key: str, val: str, where: str) -> float | int:
    try:
        if key in _INT_KEYS:
            return int(val)
        return float(val)
    except ValueError:
        kind = "integer" if key in _INT_KEYS else "number"
        raise ConfigError(f"{where}: {key} expects a {kind}, got {val!r}") from None


def build_run_config(preset: CountryPreset | None = None,
                     config_path: str | Path | None = None,
                     overrides: dict[str, float | int] | None = None,
                     need_grid: bool = False) -> RunConfig:
    """Merge defaults, preset, config file and overrides into a RunConfig.

    Raises ConfigError naming the offending key when a value breaks a
    parameter invariant. need_grid forces a GridSpec even when no grid key
    was set explicitly (the phase command always sweeps a grid).
    """
    merged = dict(DEFAULTS)
    if preset is not None:
        merged["fiscal.r_m_annual"] = preset.r_m_annual
        merged["fiscal.r_b_annual"] = preset.r_b_annual
        merged["fiscal.tau_m"] = preset.tau_m
        merged["fiscal.tau_b"] = preset.tau_b
        merged["grid.s_min"], merged["grid.s_max"] = preset.s_range
    grid_configured = need_grid
    if config_path is not None:
        file_values = read_config_file(config_path)
        grid_configured |= bool(_GRID_KEYS & file_values.keys())
        merged.update(file_values)
    if overrides:
        unknown = set(overrides) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        grid_configured |= bool(_GRID_KEYS & overrides.keys())
        merged.update(overrides)

    def _get(key):
        return merged[key]

    try:
        loan = LoanParams(
            ell=_get("loan.ell"), mu=_get("loan.mu"), e0=_get("loan.e0"),
            m0=_get("loan.m0"), pi_star=_get("loan.pi_star"),
            q_skip=_get("loan.q_skip"))
        r_m_annual = _get("fiscal.r_m_annual")
        r_b_annual = _get("fiscal.r_b_annual")
        fiscal = FiscalParams(
            r_m=annual_to_quarterly(r_m_annual),
            r_b=annual_to_quarterly(r_b_annual),
            tau_m=_get("fiscal.tau_m"), tau_b=_get("fiscal.tau_b"))
        market = MarketParams(p=_get("market.p"), s=_get("market.s"),
                              phi=_get("market.phi"))
        grid = None
        if grid_configured:
            grid = GridSpec(
                p_min=_get("grid.p_min"), p_max=_get("grid.p_max"),
                s_min=_get("grid.s_min"), s_max=_get("grid.s_max"),
                n_p=_get("grid.n_p"), n_s=_get("grid.n_s"))
    except ParamError as exc:
        raise ConfigError(str(exc)) from exc

    return RunConfig(
        loan=loan, fiscal=fiscal, market=market,
        horizon=_get("sim.horizon"), n_paths=_get("sim.n_paths"),
        master_seed=_get("sim.seed"), grid=grid,
        fiscal_annual=(r_m_annual, r_b_annual))


def parse_config(path: str | Path,
                 preset: CountryPreset | None = None) -> RunConfig:
    """RunConfig from a config file, optionally on top of a preset."""
    return build_run_config(preset=preset, config_path=path)
