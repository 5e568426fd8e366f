"""Country/ownership presets: 2024-2025 calibrated rates and tax shields.

Rates are stored in annual form exactly as published and converted to
quarterly equivalents lazily. Switzerland's owner and rental records are
identical apart from the name (unified tax treatment); Australia is the only
country with a distinct rental mortgage rate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .params import FiscalParams


@dataclass(frozen=True)
class CountryPreset:
    name: str
    ownership: str  # "owner" or "rental"
    r_b_annual: float
    r_m_annual: float
    tau_b: float
    tau_m: float
    s_range: tuple[float, float]  # typical quarterly housing-drift window

    def fiscal(self) -> FiscalParams:
        """Quarterly FiscalParams for this preset."""
        return FiscalParams.from_annual(
            r_m_annual=self.r_m_annual, r_b_annual=self.r_b_annual,
            tau_m=self.tau_m, tau_b=self.tau_b)


PRESETS: dict[str, CountryPreset] = {
    "australia_owner": CountryPreset(
        name="australia_owner", ownership="owner",
        r_b_annual=0.0835, r_m_annual=0.0607,
        tau_b=0.32, tau_m=0.0, s_range=(-0.04, 0.04)),
    "australia_rental": CountryPreset(
        name="australia_rental", ownership="rental",
        r_b_annual=0.0835, r_m_annual=0.0628,
        tau_b=0.32, tau_m=0.32, s_range=(-0.04, 0.04)),
    "germany_owner": CountryPreset(
        name="germany_owner", ownership="owner",
        r_b_annual=0.0534, r_m_annual=0.0369,
        tau_b=0.0, tau_m=0.0, s_range=(-0.06, 0.06)),
    "germany_rental": CountryPreset(
        name="germany_rental", ownership="rental",
        r_b_annual=0.0534, r_m_annual=0.0369,
        tau_b=0.0, tau_m=0.375, s_range=(-0.06, 0.06)),
    "switzerland_owner": CountryPreset(
        name="switzerland_owner", ownership="owner",
        r_b_annual=0.0162, r_m_annual=0.0162,
        tau_b=0.201, tau_m=0.201, s_range=(-0.02, 0.02)),
    "switzerland_rental": CountryPreset(
        name="switzerland_rental", ownership="rental",
        r_b_annual=0.0162, r_m_annual=0.0162,
        tau_b=0.201, tau_m=0.201, s_range=(-0.02, 0.02)),
}


def load_preset(name: str) -> CountryPreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; valid names: {', '.join(sorted(PRESETS))}"
        ) from None
