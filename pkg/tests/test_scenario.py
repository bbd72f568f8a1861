from pathlib import Path

import pytest

from certbound.fleet import LinearGrowth
from certbound.scenario import (
    ScenarioIOError,
    ScenarioSyntaxError,
    ScenarioValidationError,
    parse_scenario,
    serialize_scenario,
)

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"
SHIPPED = sorted(SCENARIOS.glob("*.yaml"))


def write(tmp_path, text):
    path = tmp_path / "scenario.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_shipped_scenarios_exist():
    assert len(SHIPPED) >= 5


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_scenarios_parse(path):
    parse_scenario(path)


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.name)
def test_shipped_scenarios_round_trip(path, tmp_path):
    first = parse_scenario(path)
    rewritten = write(tmp_path, serialize_scenario(first))
    assert parse_scenario(rewritten) == first


def test_minimal_model_only(tmp_path):
    scenario = parse_scenario(write(tmp_path, "model:\n  p_nf: 0.9\n"))
    assert float(scenario.model.p_nf) == 0.9
    assert scenario.model.p_f_given_faulty is None
    assert scenario.evidence is None
    assert scenario.bootstrap is None


def test_missing_file_is_io_error(tmp_path):
    with pytest.raises(ScenarioIOError):
        parse_scenario(tmp_path / "nope.yaml")


def test_bad_yaml_is_syntax_error(tmp_path):
    with pytest.raises(ScenarioSyntaxError):
        parse_scenario(write(tmp_path, "model: [unclosed\n"))


def test_out_of_range_probability_names_key(tmp_path):
    with pytest.raises(ScenarioValidationError, match="p_nf"):
        parse_scenario(write(tmp_path, "model:\n  p_nf: 1.5\n"))


def test_unknown_top_level_section_rejected(tmp_path):
    with pytest.raises(ScenarioValidationError, match="unknown sections"):
        parse_scenario(write(tmp_path, "model:\n  p_nf: 0.9\nextra:\n  x: 1\n"))


def test_unknown_nested_key_rejected(tmp_path):
    with pytest.raises(ScenarioValidationError, match="typo"):
        parse_scenario(write(tmp_path, "model:\n  p_nf: 0.9\n  typo: 1\n"))


def test_wrong_scalar_types_rejected(tmp_path):
    with pytest.raises(ScenarioValidationError, match="evidence.r"):
        parse_scenario(write(tmp_path, "evidence:\n  r: lots\n"))
    with pytest.raises(ScenarioValidationError, match="evidence.r"):
        parse_scenario(write(tmp_path, "evidence:\n  r: 3.5\n"))
    with pytest.raises(ScenarioValidationError, match="model.p_nf"):
        parse_scenario(write(tmp_path, "model:\n  p_nf: true\n"))
    with pytest.raises(ScenarioValidationError, match="evidence.r"):
        parse_scenario(write(tmp_path, "evidence:\n  r: -5\n"))


def test_query_needs_exactly_one_form(tmp_path):
    with pytest.raises(ScenarioValidationError, match="exactly one"):
        parse_scenario(write(tmp_path, "query:\n  n: 5\n  n_grid: [1, 2]\n"))
    with pytest.raises(ScenarioValidationError, match="exactly one"):
        parse_scenario(write(tmp_path, "query: {}\n"))
    scenario = parse_scenario(write(tmp_path, "query:\n  n_grid: [1, 2, 3]\n"))
    assert scenario.query.values() == (1, 2, 3)


def test_prior_normalization_enforced(tmp_path):
    text = (
        "prior:\n"
        "  p_nf: 0.9\n"
        "  atoms:\n"
        "    - {q: 0.5, weight: 0.2}\n"
    )
    with pytest.raises(ScenarioValidationError, match="sum to 1"):
        parse_scenario(write(tmp_path, text))


def test_assessment_mode_validated(tmp_path):
    text = (
        "assessment:\n"
        "  mode: hopeful\n"
        "  groups:\n"
        "    - {group_id: a, objective_count: 1, p_no_fault: 0.9}\n"
    )
    with pytest.raises(ScenarioValidationError, match="assessment.mode"):
        parse_scenario(write(tmp_path, text))


def test_growth_kind_validated(tmp_path):
    text = (
        "bootstrap:\n"
        "  growth: {kind: exponential, initial_fleet: 2}\n"
        "  demands_per_aircraft_per_window: 10\n"
        "  window_count: 2\n"
        "  p_nf: 0.9\n"
        "  initial_evidence: 0\n"
        "  confidence_threshold: 0.5\n"
    )
    with pytest.raises(ScenarioValidationError, match="bootstrap.growth.kind"):
        parse_scenario(write(tmp_path, text))


def test_growth_requires_kind_specific_keys(tmp_path):
    text = (
        "bootstrap:\n"
        "  growth: {kind: linear, initial_fleet: 2}\n"
        "  demands_per_aircraft_per_window: 10\n"
        "  window_count: 2\n"
        "  p_nf: 0.9\n"
        "  initial_evidence: 0\n"
        "  confidence_threshold: 0.5\n"
    )
    with pytest.raises(ScenarioValidationError, match="added_per_window"):
        parse_scenario(write(tmp_path, text))


def test_bootstrap_section_builds_fleet_scenario():
    scenario = parse_scenario(SCENARIOS / "fleet_bootstrap.yaml")
    fleet = scenario.bootstrap
    assert fleet.growth == LinearGrowth(initial_fleet=25, added_per_window=25)
    assert fleet.window_count == 40
    assert fleet.initial_evidence.r == 1000
    assert float(fleet.confidence_threshold) == 0.99
