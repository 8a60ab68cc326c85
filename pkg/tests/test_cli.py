import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from main_cli import CommandResult, cli, command_result_schema

ROOT = Path(__file__).resolve().parent.parent
FTSF = "x1^2*x2 + x1^2*x3 + x2^2*x1 + x2^2*x3 + x3^2*x1 + x3^2*x2"


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, *args):
    result = runner.invoke(cli, ["--json", *args])
    document = json.loads(result.output.strip().splitlines()[-1])
    return result.exit_code, document


@pytest.mark.parametrize(
    "basis,expected",
    [("e", "e1*e2 - 3*e3"), ("p", "p1*p2 - p3"), ("h", "-2*h1^3 + 5*h1*h2 - 3*h3")],
)
def test_rewrite(runner, basis, expected):
    code, doc = run_json(runner, "rewrite", FTSF, "--basis", basis)
    assert code == 0
    assert doc["command"] == "rewrite"
    assert doc["answer"] == expected


def test_rewrite_reports_non_symmetric_input(runner):
    code, doc = run_json(runner, "rewrite", "x1 - x2")
    assert code == 1
    assert doc["error"].startswith("NotSymmetric")
    assert doc["answer"] is None


def test_parse_error_exit_code(runner):
    code, doc = run_json(runner, "rewrite", "x1 + * x2")
    assert code == 1
    assert doc["error"].startswith("PolynomialSyntaxError")


def test_roots_with_signs(runner):
    code, doc = run_json(runner, "roots", "T^3 - 3*T + 1", "--sign", "T^2 - 2")
    assert code == 0
    assert doc["answer"] == 3
    assert doc["details"]["encodings"] == ["(+,-)", "(-,+)", "(+,+)"]
    assert doc["details"]["signs"] == "[+,-,+]"
    assert doc["details"]["rational_roots"] == []


def test_roots_lists_rational_roots(runner):
    code, doc = run_json(runner, "roots", "2*T^2 - 3*T + 1")
    assert code == 0
    assert doc["answer"] == 2
    assert doc["details"]["rational_roots"] == ["1/2", "1"]


@pytest.mark.parametrize(
    "polys,expected",
    [(["x1^2 + x2^2 + 1"], True), (["x1^2 + x2^2 - 1"], False), (["x1*x2 - 1", "x1 + x2"], True)],
)
def test_empty(runner, polys, expected):
    code, doc = run_json(runner, "--seed", "7", "empty", *polys)
    assert code == 0
    assert doc["answer"] is expected
    assert doc["seed"] == 7


def test_empty_rejects_too_many_equations(runner):
    code, doc = run_json(runner, "empty", "x1", "x1^2")
    assert code == 1
    assert doc["error"].startswith("AssumptionViolated")


def test_nonneg_witness(runner):
    code, doc = run_json(runner, "nonneg", "x1 + x2 + x3")
    assert code == 0
    assert doc["answer"] == "witness"
    assert doc["witness"] == ["-1", "-1", "-1"]
    assert doc["details"]["value"] == "-3"


def test_nonneg_unknown_exits_inconclusive(runner):
    code, doc = run_json(runner, "nonneg", "(x1^2 + x2^2 - 1)^2")
    assert code == 2
    assert doc["answer"] == "unknown"


def test_gram_and_certificate(runner, tmp_path):
    code, doc = run_json(runner, "gram", "(x1 - x2)^2")
    assert code == 0
    assert doc["answer"] == 3
    assert doc["details"]["basis"] == ["x1", "x2"]

    matrix = tmp_path / "q.json"
    matrix.write_text(json.dumps([[1, -1], [-1, 1]]))
    code, doc = run_json(runner, "gram", "(x1 - x2)^2", "--matrix", str(matrix))
    assert code == 0
    assert doc["answer"] is True
    assert doc["certificate"]["matrix"] == [["1", "-1"], ["-1", "1"]]

    matrix.write_text(json.dumps([[1, 0], [0]]))
    code, doc = run_json(runner, "gram", "(x1 - x2)^2", "--matrix", str(matrix))
    assert code == 1
    assert doc["error"].startswith("DimensionMismatch")


def test_sdpa_file(runner, tmp_path):
    output = tmp_path / "out.dat-s"
    code, doc = run_json(runner, "sdpa", "(x1 - x2)^2", str(output))
    assert code == 0
    assert doc["details"] == {"block_size": 2, "constraints": 3}
    assert output.read_text() == (ROOT / "tests" / "golden" / "square_of_difference.dat-s").read_text()


def test_decide(runner, tmp_path):
    param = tmp_path / "param.json"
    param.write_text(json.dumps({"q": ["-1", "1"], "v": [["0"], ["1"]], "gamma": ["0", "1"]}))
    code, doc = run_json(runner, "decide", str(param), "--partition", "1,1")
    assert code == 0
    assert doc["answer"] is False

    param.write_text(json.dumps({"q": ["1", "1"], "v": [["0"], ["-1"]], "gamma": ["0", "1"]}))
    code, doc = run_json(runner, "decide", str(param), "--partition", "1^2")
    assert doc["answer"] is True

    param.write_text(json.dumps({"q": ["1", "1"]}))
    code, doc = run_json(runner, "decide", str(param), "--partition", "1,1")
    assert code == 1
    assert doc["error"].startswith("InvalidParam")


def test_sort(runner):
    code, doc = run_json(runner, "sort", "3", "1", "2")
    assert code == 0
    assert doc["answer"] == 2
    assert doc["details"]["sorted"] == ["1", "2", "3"]
    assert doc["details"]["inversions"] == 2
    code, doc = run_json(runner, "sort", "--", "1/2", "-1")
    assert doc["answer"] == 1
    assert doc["details"]["transpositions"] == ["(1,2)"]


def test_file_input(runner, tmp_path):
    source = tmp_path / "f.txt"
    source.write_text(FTSF + "\n")
    code, doc = run_json(runner, "rewrite", f"@{source}", "--basis", "p")
    assert code == 0
    assert doc["answer"] == "p1*p2 - p3"


def test_panel_output(runner):
    result = runner.invoke(cli, ["sort", "2", "1"])
    assert result.exit_code == 0
    assert "Sort" in result.output
    assert "(1,2)" in result.output


def test_usage_errors_exit_with_input_status(runner):
    assert runner.invoke(cli, ["no-such-command"]).exit_code == 1
    assert runner.invoke(cli, ["decide", "missing.json"]).exit_code == 1
    assert runner.invoke(cli, ["--help"]).exit_code == 0


def test_schema_matches_checked_in_file(runner):
    result = runner.invoke(cli, ["schema"])
    assert result.exit_code == 0
    printed = json.loads(result.output)
    stored = json.loads((ROOT / "schema" / "command_result.schema.json").read_text())
    assert printed == command_result_schema() == stored
    assert stored["required"] == ["command"]


def command_lines(tmp_path):
    param = tmp_path / "param.json"
    param.write_text(json.dumps({"q": ["1", "1"], "v": [["0"], ["-1"]], "gamma": ["0", "1"]}))
    matrix = tmp_path / "q.json"
    matrix.write_text(json.dumps([[1, -1], [-1, 1]]))
    return [
        ["rewrite", FTSF, "--basis", "h"],
        ["roots", "T^3 - 3*T + 1", "--sign", "T^2 - 2"],
        ["decide", str(param), "--partition", "1^2"],
        ["empty", "x1^2 + x2^2 - 1"],
        ["empty", "x1*x2 - 1", "x1 + x2"],
        ["nonneg", "x1^2 + x2^2 - 2*x1 - 2*x2 + 2"],
        ["nonneg", "(x1^2 + x2^2 - 1)^2"],
        ["gram", "(x1 - x2)^2", "--matrix", str(matrix)],
        ["sdpa", "(x1 - x2)^2", str(tmp_path / "out.dat-s")],
        ["sort", "--", "3", "-1", "2"],
        ["rewrite", "x1 - x2"],
    ]


def test_same_seed_gives_identical_json(runner, tmp_path):
    for args in command_lines(tmp_path):
        first = runner.invoke(cli, ["--json", "--seed", "11", *args])
        second = runner.invoke(cli, ["--json", "--seed", "11", *args])
        assert first.exit_code == second.exit_code
        assert first.output == second.output


def test_every_command_emits_a_valid_result(runner, tmp_path):
    for args in command_lines(tmp_path):
        result = runner.invoke(cli, ["--json", *args])
        line = result.output.strip().splitlines()[-1]
        document = CommandResult.model_validate_json(line)
        assert document.command == args[0]
        assert (document.error is None) == (result.exit_code == 0 or document.answer == "unknown")
        assert json.loads(line) == document.model_dump()
