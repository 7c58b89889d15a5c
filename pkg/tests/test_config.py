"""Config file parsing, presets, overrides, and exact serialization."""

import math

import pytest

from offloadsim.channel import LinkClass, lena_calibrated
from offloadsim.config import (
    ConfigError,
    SweepSpec,
    apply_axis,
    bonus_in_ec_requests,
    default_config_text,
    parse_config,
    parse_cost_params,
    parse_run_config,
    parse_seed_list,
    parse_sweep_spec,
    serialize_cost_params,
    serialize_run_config,
)
from offloadsim.costmodel import CostParams
from offloadsim.engine import KMH, REPLICATION_SEEDS, RunConfig


def test_minimal_run_config_uses_defaults():
    cfg = parse_run_config("strategy = ECFirst\n")
    assert cfg == RunConfig(strategy="ECFirst")


def test_run_config_requires_strategy():
    with pytest.raises(ConfigError, match="strategy"):
        parse_run_config("users = 8\n")


def test_comments_and_blank_lines_are_ignored():
    text = """
    # a comment line
    strategy = VCCFirst   # trailing comment
    users = 4

    duration = 10
    """
    cfg = parse_run_config(text)
    assert cfg.strategy == "VCCFirst"
    assert cfg.n_users == 4
    assert cfg.duration == 10.0


def test_unknown_key_names_the_line():
    with pytest.raises(ConfigError, match=r"line 2: unknown key 'usrs'"):
        parse_run_config("strategy = ECFirst\nusrs = 8\n")


def test_duplicate_key_names_both_lines():
    text = "strategy = ECFirst\nusers = 8\nusers = 9\n"
    with pytest.raises(ConfigError, match=r"line 3: duplicate key 'users' \(first set on line 2\)"):
        parse_run_config(text)


def test_malformed_line_is_rejected():
    with pytest.raises(ConfigError, match="line 1"):
        parse_run_config("strategy ECFirst\n")


def test_fraction_values():
    cfg = parse_run_config("strategy = ECFirst\ntask.workload_mi = 1000/2\n")
    assert cfg.workload_mi == 500.0
    with pytest.raises(ConfigError, match="line 2"):
        parse_run_config("strategy = ECFirst\ntask.workload_mi = 1/0\n")


def test_speed_keys_are_exclusive():
    cfg = parse_run_config("strategy = ECFirst\nvehicles.speed_kmh = 36\n")
    assert cfg.vehicle_speed == pytest.approx(10.0, rel=1e-15)
    cfg = parse_run_config("strategy = ECFirst\nvehicles.speed_mps = 10\n")
    assert cfg.vehicle_speed == 10.0
    with pytest.raises(ConfigError, match="not both"):
        parse_run_config(
            "strategy = ECFirst\nvehicles.speed_kmh = 36\nvehicles.speed_mps = 10\n"
        )


def test_scenario_preset_and_overrides():
    cfg = parse_run_config("strategy = ECFirst\nscenario.preset = partial_coverage\n")
    assert cfg.geometry.loop_length_x == 1200.0
    assert cfg.geometry.coverage_radius == 450.0
    cfg = parse_run_config(
        "strategy = ECFirst\n"
        "scenario.preset = partial_coverage\n"
        "scenario.coverage_radius = 200\n"
    )
    assert cfg.geometry.coverage_radius == 200.0
    cfg = parse_run_config(
        "strategy = ECFirst\nscenario.coverage_radius = unbounded\n"
    )
    assert math.isinf(cfg.geometry.coverage_radius)


def test_channel_overrides():
    cfg = parse_run_config(
        "strategy = ECFirst\n"
        "channel.pue_up.base_latency = 0.004\n"
        "channel.pue_up.rate = 50e6\n"
        "channel.vue_up.p_base = 0.01\n"
        "channel.cn_up.rate = unbounded\n"
    )
    assert cfg.channel.links[LinkClass.PUE_UP].base_latency == 0.004
    assert cfg.channel.links[LinkClass.PUE_UP].rate == 50e6
    assert cfg.channel.links[LinkClass.VUE_UP].p_base == 0.01
    assert cfg.channel.links[LinkClass.CN_UP].rate is None
    # untouched links keep the preset
    assert cfg.channel.links[LinkClass.PUE_DOWN] == lena_calibrated().links[LinkClass.PUE_DOWN]


def test_wired_loss_override_is_rejected():
    with pytest.raises(ConfigError, match="lossless"):
        parse_run_config("strategy = ECFirst\nchannel.cn_up.p_base = 0.1\n")


def test_sweep_spec_parses_axis_values_and_replications():
    spec = parse_sweep_spec(
        "strategy = VCCFirst\n"
        "sweep.axis = vehicles\n"
        "sweep.values = 1, 2, 4, 10\n"
        "sweep.replications = 3\n"
    )
    assert isinstance(spec, SweepSpec)
    assert spec.axis == "vehicles"
    assert spec.values == (1.0, 2.0, 4.0, 10.0)
    assert spec.seeds == REPLICATION_SEEDS[:3]
    assert spec.base_run.strategy == "VCCFirst"
    assert spec.base_cost is None


def test_sweep_spec_defaults_to_all_replication_seeds():
    spec = parse_sweep_spec(
        "strategy = VCCFirst\nsweep.axis = speed\nsweep.values = 13.1, 50, 100\n"
    )
    assert spec.seeds == REPLICATION_SEEDS


def test_sweep_capacity_fractions():
    spec = parse_sweep_spec(
        "strategy = VCCFirst\n"
        "sweep.axis = vehicle_capacity_fraction\n"
        "sweep.values = 1/128, 1/2, 1, 3\n"
    )
    assert spec.values == (1.0 / 128.0, 0.5, 1.0, 3.0)


def test_sweep_validation():
    with pytest.raises(ConfigError, match="sweep.axis"):
        parse_sweep_spec("strategy = ECFirst\nsweep.values = 1\n")
    with pytest.raises(ConfigError, match="sweep.values"):
        parse_sweep_spec("strategy = ECFirst\nsweep.axis = users\n")
    with pytest.raises(ConfigError, match="integers"):
        parse_sweep_spec("strategy = ECFirst\nsweep.axis = users\nsweep.values = 1.5\n")
    with pytest.raises(ConfigError, match="seed-list"):
        parse_sweep_spec(
            "strategy = ECFirst\nsweep.axis = users\nsweep.values = 1\n"
            "sweep.replications = 10\n"
        )


def test_sweep_keys_rejected_outside_sweeps():
    with pytest.raises(ConfigError, match="sweep subcommand"):
        parse_run_config("strategy = ECFirst\nsweep.axis = users\n")
    with pytest.raises(ConfigError, match="sweep subcommand"):
        parse_cost_params("cost.beta = 0\nsweep.values = 1\n")


def test_beta_sweep_builds_cost_parameters():
    spec = parse_sweep_spec(
        "sweep.axis = beta\nsweep.values = 0, 1e-6\ncost.users = 50\n"
    )
    assert spec.base_run is None
    assert spec.base_cost.users == 50.0


def test_cost_params_parsing():
    p = parse_cost_params(
        "cost.c_ec_cpu = 800\ncost.beta = 1e-6\ncost.c_vcc_req = auto\n"
    )
    assert p == CostParams(c_ec_cpu=800.0, beta=1e-6)
    p = parse_cost_params("cost.c_vcc_req = 3e-5\n")
    assert p.c_vcc_req == 3e-5


def test_bonus_placement_flag():
    assert bonus_in_ec_requests("cost.beta = 0\n") is True
    assert bonus_in_ec_requests("cost.bonus_in_ec_requests = false\n") is False


def test_parse_config_dispatches_on_content():
    assert isinstance(parse_config("strategy = ECFirst\n"), RunConfig)
    assert isinstance(parse_config("cost.beta = 0\n"), CostParams)
    spec = parse_config("strategy = ECFirst\nsweep.axis = users\nsweep.values = 1\n")
    assert isinstance(spec, SweepSpec)
    with pytest.raises(ConfigError, match="cannot tell"):
        parse_config("# only comments\n")


def test_apply_axis_each_knob():
    base = RunConfig(strategy="VCCFirst")
    assert apply_axis(base, "users", 16, 3).n_users == 16
    assert apply_axis(base, "workload", 250.0, 3).workload_mi == 250.0
    assert apply_axis(base, "vehicles", 10, 3).n_vehicles == 10
    assert apply_axis(base, "vehicle_capacity_fraction", 0.5, 3).vehicle_capacity == 35560.0
    assert apply_axis(base, "speed", 50.0, 3).vehicle_speed == pytest.approx(50.0 * KMH)
    assert apply_axis(base, "users", 16, 3).seed == 3
    with pytest.raises(ValueError):
        apply_axis(base, "beta", 0.0, 3)


def test_run_config_round_trips_through_text():
    cfg = parse_run_config(
        "strategy = VCCFirst\n"
        "users = 5\n"
        "seed = 11\n"
        "scenario.preset = partial_coverage\n"
        "vehicles.speed_kmh = 50\n"
        "channel.vue_up.p_base = 0.002\n"
    )
    text = serialize_run_config(cfg)
    again = parse_run_config(text)
    assert again == cfg
    assert serialize_run_config(again) == text


def test_cost_params_round_trip_through_text():
    p = CostParams(c_ec_cpu=812.5, years=3.0, beta=1.5e-6)
    text = serialize_cost_params(p)
    assert parse_cost_params(text) == p
    auto = serialize_cost_params(CostParams())
    assert "c_vcc_req = auto" in auto
    assert parse_cost_params(auto) == CostParams()


def test_default_config_text_parses_as_run_and_cost():
    text = default_config_text()
    cfg = parse_run_config(text)
    assert cfg.strategy == "ECFirst"
    assert cfg == RunConfig(strategy="ECFirst")
    p = parse_cost_params(text)
    assert p == CostParams()


def test_parse_seed_list():
    assert parse_seed_list("0, 1, 2") == (0, 1, 2)
    assert parse_seed_list("7") == (7,)
    with pytest.raises(ConfigError):
        parse_seed_list("")
    with pytest.raises(ConfigError):
        parse_seed_list("1, x")
