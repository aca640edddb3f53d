import json

from obstructor import cli


def test_lovasz_json_output(capsys):
    code = cli.main(["lovasz", "--r", "2", "--n", "3", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "obstructor/1"
    assert payload["verdict"] == "IntersectionStructureVerified"


def test_lovasz_invalid_parameters(capsys):
    assert cli.main(["lovasz", "--r", "1", "--n", "3"]) == 3
    assert "parameter error" in capsys.readouterr().err


def test_hyperplane_bad_alpha(capsys):
    assert cli.main(["hyperplane", "--alpha", "1,2,3,4"]) == 3
    assert cli.main(["hyperplane", "--alpha", "1,2,x"]) == 3


def test_hyperplane_bad_seed_exits_two(capsys):
    code = cli.main(["hyperplane", "--alpha", "1,1,2",
                     "--seed", "1,-1,1,-1,1,-1,1,-1"])
    assert code == 2
    assert "general position failure" in capsys.readouterr().err


def test_hyperplane_verdict(capsys):
    code = cli.main(["hyperplane", "--alpha", "1,1,2", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "ObstructionNonzero"
    assert payload["seedSource"] == "default"


def test_hyperplane_seed_override(capsys):
    code = cli.main(["hyperplane", "--alpha", "1,1,2", "--format", "json",
                     "--seed=-3,3,-1,1,1,-2,2,-1"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["seedSource"] == "override"
    assert payload["verdict"] == "ObstructionNonzero"


def test_fan_small_case(capsys):
    code = cli.main(["fan", "--a", "1", "--b", "2", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "ObstructionNonzero"
    assert payload["cutSubspaceDim"] == 0


def test_fan_invalid(capsys):
    assert cli.main(["fan", "--a", "0", "--b", "2"]) == 3
    assert cli.main(["fan", "--a", "1", "--b", "1"]) == 3


def test_text_format_default(capsys):
    code = cli.main(["lovasz", "--r", "2", "--n", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "verdict: IntersectionStructureVerified" in out
