import json

import pytest

from obstructor import scenarios


def run(kind, params, **kw):
    return scenarios.run_scenario(scenarios.ScenarioConfig(kind, params, **kw))


@pytest.fixture(scope="module")
def n8_report():
    return run(scenarios.HYPERPLANE, (1, 1, 2))


def test_report_is_deterministic(n8_report):
    again = run(scenarios.HYPERPLANE, (1, 1, 2))
    assert again.json_text() == n8_report.json_text()
    assert again.text() == n8_report.text()


def test_json_round_trip(n8_report):
    assert json.loads(n8_report.json_text()) == n8_report.to_json()
    assert n8_report.to_json()["schema"] == "obstructor/1"


def test_hyperplane_payload_shape(n8_report):
    p = n8_report.payload
    assert p["scenario"] == "hyperplane"
    assert p["alpha"] == [1, 1, 2, 1, 1, 2]
    assert p["group"] == "Q_32"
    assert p["arrangement"]["maximalCount"] == 4
    assert len(p["arrangement"]["names"]) == 4
    assert p["generalPosition"]["passed"] is True
    assert p["verdict"] == "ObstructionNonzero"
    assert "no equivariant map exists" in p["sentence"]
    assert p["cited"]


def test_text_rendering_mentions_verdict(n8_report):
    text = n8_report.text()
    assert "verdict: ObstructionNonzero" in text
    assert "schema" not in text  # schema tag is a json-only concern


def test_three_entry_alpha_expands():
    cfg = scenarios.ScenarioConfig(scenarios.HYPERPLANE, (1, 1, 2, 1, 1, 2))
    assert run(scenarios.HYPERPLANE, (1, 1, 2)).json_text() == \
        scenarios.run_scenario(cfg).json_text()


def test_literal_sum_row_variant_runs():
    rep = run(scenarios.HYPERPLANE, (1, 2, 2), literal_sum_row=True)
    assert rep.payload["verdict"] in ("ObstructionNonzero", "ObstructionZero")
    default = run(scenarios.HYPERPLANE, (1, 2, 2))
    assert rep.payload["equations"] != default.payload["equations"]


def test_wide_first_sector_fan_report():
    rep = run(scenarios.FAN, (2, 1))
    p = rep.payload
    assert p["verdict"] == "Inconclusive"
    assert "narrow-first-sector" in p["coinvariants"]["diagnosis"]
    by_name = {e["name"]: e for e in p["incidences"]}
    assert by_name["rho1"]["reading"] == "forward"
    assert by_name["rho2"]["reading"] == "reversed"
    for e in by_name.values():
        assert e["inTestSubspace"] is True


def test_bad_seed_raises_general_position_failure():
    with pytest.raises(scenarios.GeneralPositionFailure):
        run(scenarios.HYPERPLANE, (1, 1, 2),
            seed_image=(1, -1, 1, -1, 1, -1, 1, -1))


def test_parameter_errors():
    with pytest.raises(scenarios.ParameterError):
        run(scenarios.HYPERPLANE, (1, 2, 3, 4))
    with pytest.raises(scenarios.ParameterError):
        run(scenarios.HYPERPLANE, (1, 1, 2, 2, 1, 1))
    with pytest.raises(scenarios.ParameterError):
        run(scenarios.FAN, (0, 4))
    with pytest.raises(scenarios.ParameterError):
        run(scenarios.FAN, (1, 1))
    with pytest.raises(scenarios.ParameterError):
        run(scenarios.LOVASZ, (1, 3))
    with pytest.raises(scenarios.ParameterError):
        scenarios.ScenarioConfig("mystery", (1,))
    with pytest.raises(scenarios.ParameterError):
        scenarios.ScenarioConfig(scenarios.LOVASZ, (2, 3), output_format="xml")


def test_lovasz_report():
    rep = run(scenarios.LOVASZ, (3, 2))
    p = rep.payload
    assert p["verdict"] == "IntersectionStructureVerified"
    assert p["singleStratum"] and p["oneOrbit"]
    assert len(p["points"]) == 2
