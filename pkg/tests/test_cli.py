import io
import json
import re

import pytest

from xladder.cli import main, parse_weight
from xladder.algebra import ALPHA


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_parse_weight():
    assert parse_weight("1+alpha") == 1 + ALPHA
    assert parse_weight("-a-1") == -ALPHA - 1
    assert parse_weight("a/2 - 3") == ALPHA / 2 - 3


def test_verify_algebra_type_I():
    code, rep = run_json("verify", "--type", "I", "--suite", "algebra")
    assert code == 0 and rep["schema"] == "xladder/1"
    items = {it["name"]: it for it in rep["items"]}
    assert items["[H,B]=-2B"]["status"] == "pass"
    assert rep["summary"]["fail"] == 0
    assert all(it["type"] == "I" for it in rep["items"])


def test_verify_chains_type_II_lists_coefficients():
    code, rep = run_json("verify", "--type", "II", "--suite", "chains")
    assert code == 0
    ns = {int(m.group(1)) for it in rep["items"] if (m := re.search(r"back-action = f_(\d)", it["name"]))}
    assert ns == {1, 2, 3, 4, 5}


@pytest.mark.parametrize("argv", [("verify", "--type", "IV"), ("verify", "--suite", "nope"), ("zero-modes", "--type", "0")])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_zero_modes_text_type_I():
    code, text = run("zero-modes", "--type", "I")
    assert code == 0
    assert "lowering zero modes (4)" in text and "raising zero modes (4)" in text
    assert len(re.findall(r"^  raising .* = ", text, re.M)) == 2


def test_zero_modes_json_type_III():
    code, rep = run_json("zero-modes", "--type", "III", "--format", "json")
    assert code == 0
    weights = {d["weight"]: d["class"] for d in rep["lowering"]}
    assert weights == {"a - 3": "eigenstate", "-a + 1": "eigenstate", "a + 1": "generalized", "a - 1": "eigenstate"}


def test_chain_weights():
    code, rep = run_json("chain", "--type", "II", "--start", "alpha+1", "--direction", "up", "--n", "4")
    assert code == 0
    assert [e["weight"] for e in rep["elements"]] == ["a + 1", "a + 3", "a + 5", "a + 7", "a + 9"]
    assert all(link["exact"] for link in rep["links"])


def test_chain_zero_length():
    code, rep = run_json("chain", "--type", "II", "--start", "alpha+1", "--direction", "up", "--n", "0")
    assert code == 0 and len(rep["elements"]) == 1 and rep["links"] == []


def test_chain_unknown_start_lists_roster(capsys):
    code, _ = run("chain", "--type", "I", "--start", "alpha+77")
    assert code == 2
    assert "roster:" in capsys.readouterr().err


def test_chain_negative_n(capsys):
    code, _ = run("chain", "--type", "I", "--start", "1+alpha", "--n", "-1")
    assert code == 2


def test_diagram_dot():
    code, dot = run("chain", "--type", "III", "--emit", "dot", "--depth", "3")
    assert code == 0 and dot.startswith('digraph "type_III" {')
    edges = re.findall(r'^  "(.+?)" -> "(.+?)" \[op="(B|Bdag)", coeff="(.+?)"\];$', dot, re.M)
    assert edges and len(edges) == dot.count("->")


def test_coeffs_examples():
    _, rep = run_json("coeffs", "--kind", "f", "--n", "0")
    assert rep["rows"][0]["value"] == "0"
    _, rep = run_json("coeffs", "--type", "I", "--kind", "f", "--base", "1+alpha", "--n", "1")
    assert rep["rows"][0]["value"] == "4*a^3 + 24*a^2 + 44*a + 24"
    _, rep = run_json("coeffs", "--type", "II", "--kind", "g", "--base", "-alpha-1", "--n", "1..3", "--alpha", "1/3")
    values = [r["value"] for r in rep["rows"]]
    assert len(values) == 3 and all(re.fullmatch(r"-?\d+(/\d+)?", v) for v in values)


def test_coeffs_bad_range():
    assert run("coeffs", "--n", "3..1")[0] == 2


def test_eval_is_the_only_float_output():
    code, rep = run_json("eval", "--type", "I", "--state", "psi(1+alpha)", "--x", "3/2", "--alpha", "1/3")
    assert code == 0
    float(rep["value"])
    code, _ = run("eval", "--type", "I", "--state", "psi(1+alpha)", "--x", "-1", "--alpha", "1/3")
    assert code == 2


def test_deterministic_output():
    argv = ("zero-modes", "--type", "II", "--format", "json")
    assert run(*argv)[1] == run(*argv)[1]
