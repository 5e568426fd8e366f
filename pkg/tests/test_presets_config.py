"""Preset registry fidelity and config parsing."""

import pytest

import debtcycle as dc

# calibrated country parameters, byte-for-byte
TABLE = {
    "australia_owner": (0.0835, 0.0607, 0.32, 0.0, (-0.04, 0.04), "owner"),
    "australia_rental": (0.0835, 0.0628, 0.32, 0.32, (-0.04, 0.04), "rental"),
    "germany_owner": (0.0534, 0.0369, 0.0, 0.0, (-0.06, 0.06), "owner"),
    "germany_rental": (0.0534, 0.0369, 0.0, 0.375, (-0.06, 0.06), "rental"),
    "switzerland_owner": (0.0162, 0.0162, 0.201, 0.201, (-0.02, 0.02), "owner"),
    "switzerland_rental": (0.0162, 0.0162, 0.201, 0.201, (-0.02, 0.02), "rental"),
}


class TestPresets:
    @pytest.mark.parametrize("name", sorted(TABLE))
    def test_fidelity(self, name):
        r_b, r_m, tau_b, tau_m, s_range, ownership = TABLE[name]
        pr = dc.load_preset(name)
        assert pr.r_b_annual == r_b
        assert pr.r_m_annual == r_m
        assert pr.tau_b == tau_b
        assert pr.tau_m == tau_m
        assert pr.s_range == s_range
        assert pr.ownership == ownership
        assert pr.name == name

    def test_switzerland_owner_rental_identical_apart_from_name(self):
        a = dc.load_preset("switzerland_owner")
        b = dc.load_preset("switzerland_rental")
        assert (a.r_b_annual, a.r_m_annual, a.tau_b, a.tau_m, a.s_range) == \
            (b.r_b_annual, b.r_m_annual, b.tau_b, b.tau_m, b.s_range)
        assert a.name != b.name and a.ownership != b.ownership

    def test_quarterly_conversion(self):
        f = dc.load_preset("australia_owner").fiscal()
        assert f.r_b == pytest.approx(0.020251469359793763, rel=1e-14)
        assert f.r_m == pytest.approx(0.014841321609058039, rel=1e-14)

    def test_unknown_name_lists_valid_ones(self):
        with pytest.raises(dc.ConfigError, match="switzerland_owner"):
            dc.load_preset("narnia_owner")


class TestConfig:
    def test_empty_config_with_preset_gives_documented_defaults(self, tmp_path):
        path = tmp_path / "empty.cfg"
        path.write_text("# nothing but a comment\n")
        cfg = dc.parse_config(path, preset=dc.load_preset("switzerland_owner"))
        assert cfg.loan == dc.LoanParams(ell=0.5, mu=0.5, e0=30_000.0,
                                         m0=300_000.0, pi_star=3_000.0,
                                         q_skip=0.01)
        assert cfg.fiscal == dc.load_preset("switzerland_owner").fiscal()
        assert cfg.market.phi == 0.01
        assert cfg.horizon == 400
        assert cfg.fiscal_annual == (0.0162, 0.0162)

    def test_out_of_range_value_rejected(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("market.p = 1.2\n")
        with pytest.raises(dc.ConfigError, match="p"):
            dc.parse_config(path)

    def test_horizon_override(self, tmp_path):
        path = tmp_path / "h.cfg"
        path.write_text("sim.horizon = 40\n")
        assert dc.parse_config(path).horizon == 40

    def test_unknown_key_named(self, tmp_path):
        path = tmp_path / "u.cfg"
        path.write_text("loan.interest = 3\n")
        with pytest.raises(dc.ConfigError, match="loan.interest"):
            dc.parse_config(path)

    def test_type_mismatch_named(self, tmp_path):
        path = tmp_path / "t.cfg"
        path.write_text("sim.horizon = soon\n")
        with pytest.raises(dc.ConfigError, match="sim.horizon"):
            dc.parse_config(path)

    def test_malformed_line(self, tmp_path):
        path = tmp_path / "m.cfg"
        path.write_text("loan.e0 30000\n")
        with pytest.raises(dc.ConfigError, match="key = value"):
            dc.parse_config(path)

    def test_override_transparency(self, tmp_path):
        preset = dc.load_preset("germany_rental")
        plain = dc.build_run_config(preset=preset)
        path = tmp_path / "same.cfg"
        path.write_text(
            "loan.e0 = 30000\n"
            "fiscal.tau_m = 0.375\n"
            "market.phi = 0.01\n")
        assert dc.parse_config(path, preset=preset) == plain

    def test_inline_comments_and_blank_lines(self, tmp_path):
        path = tmp_path / "c.cfg"
        path.write_text(
            "\n"
            "loan.mu = 0.25   # less aggressive\n"
            "\n"
            "market.s = -0.004\n")
        cfg = dc.parse_config(path)
        assert cfg.loan.mu == 0.25
        assert cfg.market.s == -0.004

    def test_grid_keys_build_gridspec(self, tmp_path):
        path = tmp_path / "g.cfg"
        path.write_text("grid.n_p = 11\ngrid.n_s = 21\ngrid.s_min = -0.01\n"
                        "grid.s_max = 0.01\n")
        cfg = dc.parse_config(path)
        assert cfg.grid == dc.GridSpec(0.0, 1.0, -0.01, 0.01, 11, 21)

    def test_no_grid_keys_means_no_grid(self, tmp_path):
        path = tmp_path / "n.cfg"
        path.write_text("sim.seed = 5\n")
        assert dc.parse_config(path).grid is None

    def test_preset_sets_grid_s_range_default(self):
        cfg = dc.build_run_config(preset=dc.load_preset("germany_owner"),
                                  need_grid=True)
        assert cfg.grid.s_min == -0.06 and cfg.grid.s_max == 0.06
