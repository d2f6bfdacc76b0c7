from __future__ import annotations

import json

import pytest

from gowers_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_exact_mt(capsys):
    code, out = run(capsys, "exact", "--kind", "MT", "--d", "1", "--m", "1", "--r", "3")
    assert code == 0 and out.strip() == "1"


def test_bounds_E(capsys):
    code, out = run(capsys, "bounds", "--fn", "E", "--q", "2", "--n", "2")
    assert code == 0 and out.strip() == "38"


def test_no_ramsey_degree(capsys):
    code, out = run(capsys, "verify", "--no-ramsey-degree", "--K", "2", "--n", "4")
    assert code == 0 and out.strip() == "true"


def test_json_format(capsys):
    code, out = run(capsys, "--format", "json", "bounds", "--fn", "E", "--q", "1", "--n", "3")
    assert code == 0 and json.loads(out)["value"] == 11


def test_symbolic_bound(capsys):
    code, out = run(capsys, "bounds", "--fn", "G", "--k", "2", "--m", "2", "--r", "2", "--mt", "symbolic")
    assert code == 0 and "MT(1, 2, 2)" in out


def test_input_errors(capsys):
    assert main(["bounds", "--fn", "E", "--q", "-1", "--n", "2"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["extract", "--op", "positive", "--n", "3", "--k", "1", "--m", "2", "--oracle", "no-such-family"])
    assert exc.value.code == 2
    assert main(["extract", "--op", "positive", "--n", "3", "--k", "1", "--m", "4"]) == 2


def test_types_and_span(capsys):
    code, out = run(capsys, "types", "--k", "2", "--d", "3")
    assert code == 0 and "1,2,1" in out and "2,1,2" in out
    code, out = run(capsys, "types", "--k", "1", "--d", "2", "--signed", "--count")
    assert code == 0 and out.strip() == "count=2 bound=4"
    code, out = run(capsys, "--format", "json", "span", "--funcs", "2,0;0,2", "--k", "2")
    assert code == 0 and len(json.loads(out)["elements"]) == 5


def test_extract_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, _ = run(capsys, "extract", "--op", "signed", "--n", "4", "--k", "1", "--m", "2",
                  "--oracle", "by-type", "--r", "2", "--out", str(path))
    assert code == 0
    code, out = run(capsys, "verify", "--witness", str(path))
    assert code == 0 and out.strip() == "true"
    doc = json.loads(path.read_text())
    doc["report"]["color"] = 99
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", "--witness", str(path))
    assert code == 1


def test_extract_absent_exit_code(capsys):
    code, out = run(capsys, "extract", "--op", "positive", "--n", "2", "--k", "2", "--m", "1",
                    "--oracle", "random", "--seed", "0", "--r", "3")
    assert code in (0, 1)
    assert ("absent" in out) == (code == 1)


def test_verify_holds(capsys):
    code, out = run(capsys, "verify", "--kind", "G", "--k", "1", "--m", "2", "--r", "2", "--n", "5")
    assert code == 0 and out.strip() == "true"
