from importlib import resources

import pytest

from hybridgate.errors import ConfigError
from hybridgate.scenario import load_scenario_text, parse_config_text


def _bundled_text():
    return resources.files("hybridgate").joinpath("data/paper.cfg").read_text()


def _with_replacement(old, new):
    text = _bundled_text()
    assert old in text, old
    return text.replace(old, new)


class TestParser:
    def test_sections_and_comments(self):
        text = "# comment\n[alpha]\nkey = 1.5\n; another comment\n[beta]\nname = value\n"
        parsed = parse_config_text(text)
        assert parsed == {"alpha": {"key": "1.5"}, "beta": {"name": "value"}}

    def test_key_outside_section(self):
        with pytest.raises(ConfigError, match="outside"):
            parse_config_text("key = 1\n")

    def test_missing_equals(self):
        with pytest.raises(ConfigError, match="key = value"):
            parse_config_text("[s]\njust words\n")


class TestBundledScenario:
    def test_round_trip(self):
        scn = load_scenario_text(_bundled_text())
        assert scn.field.b_gauss == 649.0
        assert scn.qubit.species.name == "Rb87"
        assert scn.qubit.upper.f == 2 and scn.qubit.upper.m == 2
        assert scn.enabler.enabled.f == 1
        assert scn.dipole.mu_permanent_debye == 4.2
        assert scn.gate.omega_r_rad_s == 1e6
        assert scn.noise.sigma_b_gauss == 3e-4
        assert scn.noise.seed == 20260808
        assert scn.mc_samples == 100000
        assert scn.sweep.parameter == "separation_r_m"

    def test_seed_override(self):
        scn = load_scenario_text(_bundled_text(), seed_override=99)
        assert scn.noise.seed == 99

    def test_channels(self):
        scn = load_scenario_text(_bundled_text())
        zero, one = scn.qubit_channel_enabled()
        assert zero.label() == "|1,1>Rb87+|1,1>Li7"
        assert one.label() == "|2,2>Rb87+|1,1>Li7"

    def test_fopa_scales_pump(self):
        scn = load_scenario_text(_with_replacement("fopa_enhancement = 1.0",
                                                   "fopa_enhancement = 3.0"))
        assert scn.raman_effective().omega_p_rad_s == 3.0 * scn.raman.omega_p_rad_s


class TestValidation:
    def test_missing_key_names_it(self):
        text = _with_replacement("sigma_B_G = 3e-4", "")
        with pytest.raises(ConfigError, match=r"\[noise\] sigma_B_G"):
            load_scenario_text(text)

    def test_bad_number_names_key(self):
        text = _with_replacement("b_G = 649.0", "b_G = strong")
        with pytest.raises(ConfigError, match=r"\[field\] b_G"):
            load_scenario_text(text)

    def test_unknown_species(self):
        text = _with_replacement("species = Rb87", "species = Xx99")
        with pytest.raises(ConfigError, match=r"\[qubit\] species"):
            load_scenario_text(text)

    def test_custom_species_section(self):
        text = (_with_replacement("species = Li7", "species = Na23")
                + "\n[species Na23]\nnuclear_spin = 1.5\n"
                  "hyperfine_splitting_Hz = 1.7716261e9\ng_J = 2.00230\n")
        scn = load_scenario_text(text)
        assert scn.enabler.species.name == "Na23"
        assert scn.enabler.species.hyperfine_splitting_hz == 1.7716261e9

    def test_invalid_state_names_keys(self):
        text = _with_replacement("upper_f = 2", "upper_f = 5")
        with pytest.raises(ConfigError, match=r"\[qubit\] upper_f"):
            load_scenario_text(text)

    def test_sweep_count_minimum(self):
        text = _with_replacement("count = 64", "count = 1")
        with pytest.raises(ConfigError, match=r"\[sweep\] count"):
            load_scenario_text(text)

    def test_unknown_sweep_parameter(self):
        text = _with_replacement("parameter = separation_r_m", "parameter = bogus_axis")
        with pytest.raises(ConfigError, match=r"\[sweep\] parameter"):
            load_scenario_text(text)

    def test_negative_physical_value(self):
        text = _with_replacement("trap_frequency_Hz = 1e5", "trap_frequency_Hz = -1e5")
        with pytest.raises(ConfigError, match=r"\[noise\] trap_frequency_Hz"):
            load_scenario_text(text)

    def test_bad_boolean(self):
        text = _with_replacement("stark_compensated = true", "stark_compensated = maybe")
        with pytest.raises(ConfigError, match=r"\[raman\] stark_compensated"):
            load_scenario_text(text)

    def test_invalid_custom_species(self):
        text = (_with_replacement("species = Li7", "species = Bad1")
                + "\n[species Bad1]\nnuclear_spin = 0.0\n"
                  "hyperfine_splitting_Hz = 1e9\ng_J = 2.0\n")
        with pytest.raises(ConfigError, match=r"\[species Bad1\]"):
            load_scenario_text(text)

    def test_negative_seed_rejected(self):
        with pytest.raises(ConfigError, match=r"\[noise\]"):
            load_scenario_text(_bundled_text(), seed_override=-5)
