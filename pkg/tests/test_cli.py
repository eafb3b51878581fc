import io
import json
import subprocess
import sys

import pytest

from realcubic.cli import build_input, format_rational, main, parse_rational, RequestError


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="req.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def test_analyze_request_file(tmp_path, capsys):
    code, out, _ = run([write(tmp_path, {"family": "TwoA5", "params": {"b": "0"}})], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["status"] == "NotStablyRational"
    assert rep["family"] == "TwoA5" and rep["params"] == {"b": "0"}


def test_family_flag_and_stdin(capsys, monkeypatch):
    code, out, _ = run(["--family", "TwoD4TwoA1", "--params", '{"a": "1", "b3": "0", "b4": "3"}'], capsys)
    assert code == 0 and json.loads(out)["status"] == "Rational"
    doc = json.dumps({"family": "TwoD4TwoA1", "params": {"a": 1, "b3": 0, "b4": 1}})
    code, out, _ = run(["-"], capsys, stdin=doc, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["status"] == "NotStablyRational"


def test_output_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, {"family": "EightA1", "params": {"a1": "1", "a2": "2", "a3": "1/3", "variant": "3"}})
    first = run([path], capsys)[1]
    second = run([path], capsys)[1]
    assert first == second
    keys = list(json.loads(first))
    assert keys == sorted(keys)


@pytest.mark.parametrize("doc", [
    "{not json",
    {"family": "TwoA5", "params": {"b": "1/0"}},
    {"family": "TwoA5", "params": {"b": 0.5}},
    {"family": "TwoA5", "params": {"b": "0"}, "colour": "red"},
    {"family": "TwoA5", "params": {"b": "0", "c": "1"}},
    {"family": "Nope", "params": {}},
    {"params": {}},
    {"family": "TwoA5", "params": {"b": "0"}, "options": {"ade_cap": "8"}},
    {"family": "TwoA3Plane", "cubic": 3},
])
def test_malformed_input_exits_2(tmp_path, capsys, doc):
    code, _, err = run([write(tmp_path, doc)], capsys)
    assert code == 2
    assert err.startswith("error:")


def test_constraint_violation_exits_3(tmp_path, capsys):
    code, out, _ = run([write(tmp_path, {"family": "TwoD4TwoA1", "params": {"a": "1", "b3": "0", "b4": "2"}})],
                       capsys)
    assert code == 3
    rep = json.loads(out)
    assert rep["error"] == "constraint violation"
    assert rep["violations"][0]["constraint"] == "b4^2 != 4*a"


def test_h1_catalog_and_presentation(tmp_path, capsys):
    code, out, _ = run(["--h1", "TwoA5"], capsys)
    assert code == 0 and json.loads(out)["group"] == "Z/2"
    pres = {"generators": 2, "relations": [], "involution": [[0, 1], [1, 0]]}
    code, out, _ = run(["--h1", write(tmp_path, pres, "p.json")], capsys)
    assert code == 0 and json.loads(out)["group"] == "0"
    torsion = {"generators": 2, "relations": [[2, 0]], "involution": [[1, 0], [0, 1]]}
    assert run(["--h1", write(tmp_path, torsion, "t.json")], capsys)[0] == 3
    assert run(["--h1", "NoSuchCase"], capsys)[0] == 2


def test_grid_sweep(tmp_path, capsys):
    doc = {"family": "TwoD4TwoA1", "grid": [{"a": "1", "b3": "0", "b4": "3"}, {"a": "1", "b3": "0", "b4": "1"},
                                            {"a": "1", "b3": "0", "b4": "2"}]}
    code, out, _ = run(["--jobs", "2", write(tmp_path, doc)], capsys)
    assert code == 0
    res = json.loads(out)["results"]
    assert [r.get("status") for r in res[:2]] == ["Rational", "NotStablyRational"]
    assert "ConstraintError" in res[2]["error"]


def test_option_overrides(tmp_path):
    inp = build_input({"family": "TwoA4", "params": {f"t{k}": "1" for k in range(1, 9)},
                       "options": {"oracle_resolution": 64}}, ade_cap=6)
    assert inp.oracle_resolution == 64 and inp.ade_cap == 6


def test_rational_helpers():
    assert parse_rational("-3/6") == parse_rational(-1) / 2
    assert format_rational(parse_rational("4/2")) == "2"
    assert format_rational(parse_rational("2/6")) == "1/3"
    with pytest.raises(RequestError):
        parse_rational(True)


def test_both_request_and_family_is_rejected(tmp_path, capsys):
    path = write(tmp_path, {"family": "TwoA5", "params": {"b": "0"}})
    assert run([path, "--family", "TwoA5"], capsys)[0] == 2
    assert run(["--bogus-flag"], capsys)[0] == 2


def test_module_entry_point(tmp_path):
    path = write(tmp_path, {"family": "Chordal", "params": {}})
    res = subprocess.run([sys.executable, "-m", "realcubic", path], capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert json.loads(res.stdout)["status"] == "Rational"
