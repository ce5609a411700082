import json
from fractions import Fraction

import pytest

from ceei.cli import main
from ceei.io import DocumentError, emit_problem, parse_document, parse_problem

LAMBDA_DOC = {
    "agents": ["1", "2"],
    "items": [{"name": "a", "quantity": 1}, {"name": "b", "quantity": 1},
              {"name": "c", "quantity": 1}],
    "utilities": [[-1, -3, -1], [-2, -1, -1]],
}


def test_parse_well_formed():
    problem = parse_problem(json.dumps(LAMBDA_DOC))
    assert problem.n_agents == 2 and problem.n_items == 3
    assert problem.utilities[0] == (-1, -3, -1)


def test_parse_fraction_strings_in_exact_mode():
    doc = dict(LAMBDA_DOC, mode="exact",
               utilities=[["-1", "-3", "-5/6"], ["-2", "-1", "-1"]])
    problem = parse_problem(json.dumps(doc))
    assert problem.utilities[0][2] == Fraction(-5, 6)
    assert problem.exact


def test_exact_round_trip():
    doc = dict(LAMBDA_DOC, mode="exact",
               utilities=[["-1/3", "2", "-5/6"], ["-2", "-1", "7/2"]])
    problem = parse_problem(json.dumps(doc))
    again = parse_problem(json.dumps(emit_problem(problem)))
    assert again == problem


def test_zero_quantity_rejected():
    doc = dict(LAMBDA_DOC, items=[{"name": "a", "quantity": 0},
                                  {"name": "b", "quantity": 1},
                                  {"name": "c", "quantity": 1}])
    with pytest.raises(DocumentError) as err:
        parse_problem(json.dumps(doc))
    assert err.value.path == "/items/0/quantity"


def test_ragged_matrix_rejected():
    doc = dict(LAMBDA_DOC, utilities=[[-1, -3], [-2, -1, -1]])
    with pytest.raises(DocumentError) as err:
        parse_problem(json.dumps(doc))
    assert err.value.path == "/utilities/0"


def test_document_options():
    doc = dict(LAMBDA_DOC, rule="egalitarian", weights={"1": 2, "2": 1},
               limits={"supports": 1000})
    parsed = parse_document(json.dumps(doc))
    assert parsed.rule == "egalitarian"
    assert parsed.weights.values == (2.0, 1.0)
    assert parsed.limits.supports == 1000


def test_bad_rule_and_mode():
    with pytest.raises(DocumentError):
        parse_document(json.dumps(dict(LAMBDA_DOC, rule="magic")))
    with pytest.raises(DocumentError):
        parse_document(json.dumps(dict(LAMBDA_DOC, mode="binary")))


# ---------------------------------------------------------------------------
# CLI


@pytest.fixture()
def lambda_file(tmp_path):
    path = tmp_path / "lam.json"
    path.write_text(json.dumps(LAMBDA_DOC))
    return str(path)


def test_cli_classify(lambda_file, capsys):
    assert main(["classify", lambda_file]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Negative")


def test_cli_enumerate_json(lambda_file, capsys):
    assert main(["enumerate", lambda_file, "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["profiles"]) == 4
    assert body["selected"] == 1
    assert body["profiles"][1] == [-1.5, -1.5]


def test_cli_solve_text(lambda_file, capsys):
    assert main(["solve", lambda_file]) == 0
    out = capsys.readouterr().out
    assert "(-1.5, -1.5)" in out
    assert "kkt: passed=True" in out


def test_cli_audit(lambda_file, capsys):
    assert main(["audit", lambda_file, "--axioms", "--trials", "2"]) == 0
    out = capsys.readouterr().out
    assert "envy_free: True" in out


def test_cli_components(tmp_path, capsys):
    doc = {
        "agents": ["1", "2", "3", "4"],
        "items": [{"name": "a", "quantity": 1}, {"name": "b", "quantity": 1}],
        "utilities": [[-0.2, -1], [-0.3, -1], [-3.5, -1], [-4, -1]],
    }
    path = tmp_path / "comp.json"
    path.write_text(json.dumps(doc))
    assert main(["components", str(path)]) == 0
    out = capsys.readouterr().out
    assert "components: 3" in out


def test_cli_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["classify", str(path)]) == 1
    assert main(["classify", str(tmp_path / "missing.json")]) == 1


def test_cli_demo(capsys):
    assert main(["demo", "lambda-family"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_cli_demo_json(capsys):
    assert main(["demo", "prop4-rm", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["passed"] is True


def test_cli_exact_flag(tmp_path, capsys):
    doc = dict(LAMBDA_DOC, utilities=[["-1", "-3", "-1"], ["-2", "-1", "-1"]])
    path = tmp_path / "exact.json"
    path.write_text(json.dumps(doc))
    assert main(["enumerate", str(path), "--exact", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["profiles"][3] == ["-5/2", "-5/6"]


def test_cli_demo_assertion_failure_exits_2(monkeypatch, capsys):
    from ceei import instances
    from ceei.instances import DemoResult

    def failing():
        result = DemoResult("broken", True)
        result.check("always wrong", False, "synthetic")
        return result

    monkeypatch.setitem(instances.DEMOS, "lambda-family", failing)
    assert main(["demo", "lambda-family"]) == 2
    assert "FAIL" in capsys.readouterr().out


def test_cli_tol_flag(lambda_file, capsys):
    assert main(["solve", lambda_file, "--tol", "1e-3", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["kkt"]["passed"] is True


def test_cli_limit_supports_flag(tmp_path, capsys):
    doc = {
        "agents": ["1", "2", "3"],
        "items": [{"name": "a", "quantity": 1}, {"name": "b", "quantity": 1},
                  {"name": "c", "quantity": 1}],
        "utilities": [[-1, -2.2, -3.1], [-2.7, -1.3, -2.2], [-3.3, -2.1, -1.4]],
    }
    path = tmp_path / "gen.json"
    path.write_text(json.dumps(doc))
    assert main(["enumerate", str(path), "--json"]) == 0
    full = json.loads(capsys.readouterr().out)
    assert full["exhaustive"] is True
    assert main(["enumerate", str(path), "--limit-supports", "1", "--json"]) in (0, 1)
    out = capsys.readouterr()
    if out.out:
        truncated = json.loads(out.out)
        assert truncated["exhaustive"] is False
