"""End-to-end runs of the command-line verbs, in process."""

import json

import pytest

from rcat import io as rio
from rcat.cli import run


@pytest.fixture(scope="module")
def files(tmp_path_factory, par2, par013, par0124):
    d = tmp_path_factory.mktemp("cli")
    paths = {}
    for name, model in (("par2", par2), ("par013", par013), ("par0124", par0124)):
        p = d / f"{name}.json"
        rio.save_category(model.rc, p)
        paths[name] = str(p)
    return paths


def test_check_pass_json(files, capsys):
    assert run(["check", files["par2"], "--json"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert set(doc) == {
        "command", "argv", "status", "checked", "violations", "result", "artifact",
    }
    assert doc["command"] == "check"
    assert doc["status"] == "pass"
    assert doc["checked"] > 0
    assert doc["violations"] == []
    assert doc["artifact"] is None


def test_timing_field_only_behind_flag(files, capsys):
    run(["check", files["par2"], "--json", "--timing"])
    doc = json.loads(capsys.readouterr().out)
    assert "timing_ms" in doc
    run(["check", files["par2"]])
    assert "timing_ms" not in capsys.readouterr().out


def test_reports_are_byte_stable(files, capsys):
    argv = ["check", files["par2"], "--json", "--coproducts", "--zero", "--products"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    # the inline-artifact path too
    argv = ["split", files["par2"]]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_cap_truncates_with_exit_one(files, capsys, monkeypatch):
    monkeypatch.setenv("RCAT_CAP", "10")
    assert run(["check", files["par2"]]) == 1
    out = capsys.readouterr().out
    assert "status: truncated" in out
    assert "23 morphisms over cap 10" in out


def test_cap_value_must_be_a_positive_integer(files, capsys, monkeypatch):
    monkeypatch.setenv("RCAT_CAP", "oops")
    assert run(["check", files["par2"]]) == 2
    err = capsys.readouterr().err
    assert err.startswith("rcat: error:")
    assert "RCAT_CAP" in err


def test_check_flags_a_broken_restriction(files, tmp_path, capsys, par2):
    doc = rio.dump_category(par2.rc)
    doc["restriction"]["2>1:0-"] = "2>2:01"
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc))
    assert run(["check", str(p), "--json"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "fail"
    assert rep["violations"][0]["law"] == "skew-absorption"
    assert rep["violations"][0]["witnesses"] == ["2>1:-0", "2>1:0-"]


def test_malformed_input_exits_two(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run(["check", str(p)]) == 2
    cap = capsys.readouterr()
    assert cap.out == ""
    assert cap.err.startswith("rcat: error:")
    assert "invalid JSON" in cap.err
    # same failure as a json document on stdout
    assert run(["check", str(p), "--json"]) == 2
    cap = capsys.readouterr()
    assert cap.err == ""
    doc = json.loads(cap.out)
    assert doc["status"] == "error"
    assert "invalid JSON" in doc["error"]


def test_structure_flags_need_a_restriction(tmp_path, capsys, par2):
    from rcat.splitting import total_subcategory

    tot, _, _ = total_subcategory(par2.rc)
    doc = rio.dump_category(tot)
    del doc["restriction"]
    p = tmp_path / "plain.json"
    p.write_text(json.dumps(doc))
    assert run(["check", str(p)]) == 0
    capsys.readouterr()
    assert run(["check", str(p), "--coproducts"]) == 2
    assert "restriction map" in capsys.readouterr().err


def test_decide_reports_the_decision(files, capsys):
    argv = ["decide", files["par2"], "--morphism", "1>2:0",
            "--coproduct", "1+1", "--json"]
    assert run(argv) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == {"decision": "1>2:0", "unique": True}
    assert doc["checked"] == 1


def test_decide_without_the_search_object_is_an_error(files, capsys):
    argv = ["decide", files["par2"], "--morphism", "2>2:01", "--coproduct", "1+1"]
    assert run(argv) == 2
    assert capsys.readouterr().err.startswith("rcat: error:")


def test_matrix_decompose_recompose_multiply(files, tmp_path, capsys):
    m = str(tmp_path / "m.txt")
    argv = ["matrix", "decompose", files["par0124"], "--morphism", "2>2:1-",
            "--rows", "1+1", "--cols", "1+1", "--out", m]
    assert run(argv) == 0
    out = capsys.readouterr().out
    assert f"artifact: {m}" in out
    text = open(m, encoding="utf-8").read()
    assert text.splitlines()[0] == "rows=2 cols=2"

    argv = ["matrix", "recompose", files["par0124"], "--matrix", m, "--json"]
    assert run(argv) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["morphism"] == "2>2:1-"

    argv = ["matrix", "multiply", files["par0124"], "--left", m, "--right", m]
    assert run(argv) == 0
    out = capsys.readouterr().out
    assert "rows=2 cols=2" in out
    # (1, -) composed with itself is defined nowhere
    assert out.count("1>1:-\n") == 4


def test_matrix_argument_validation(files):
    with pytest.raises(SystemExit) as exc:
        run(["matrix", "decompose", files["par0124"]])
    assert exc.value.code == 2


def test_split_artifact_passes_check(files, tmp_path, capsys):
    out_path = str(tmp_path / "kr.json")
    assert run(["split", files["par2"], "--out", out_path]) == 0
    out = capsys.readouterr().out
    assert "objects: 7" in out
    assert "morphisms: 81" in out
    assert run(["check", out_path, "--coproducts", "--zero"]) == 0
    assert "status: pass" in capsys.readouterr().out


def test_total_carries_the_category_inline(files, capsys):
    assert run(["total", files["par2"], "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["objects"] == 3
    assert doc["result"]["morphisms"] == 11
    cat = rio.load_category(doc["result"]["category"])
    assert cat.n_objects == 3
    assert cat.n_morphisms == 11


def test_extensive_routes_by_partiality(files, tmp_path, capsys):
    assert run(["extensive", files["par2"]]) == 0
    out = capsys.readouterr().out
    assert "notion: decisions" in out
    assert "status: pass" in out

    tot = str(tmp_path / "tot.json")
    assert run(["total", files["par2"], "--out", tot]) == 0
    capsys.readouterr()
    assert run(["extensive", tot]) == 0
    out = capsys.readouterr().out
    assert "notion: pullbacks" in out
    assert "status: pass" in out


def test_extensive_single_morphism_failure(files, capsys):
    argv = ["extensive", files["par2"], "--morphism", "2>0:--", "--json"]
    assert run(argv) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "fail"
    assert doc["result"]["extensive"] is False
    assert doc["violations"][0]["law"] == "decision-missing"
    assert doc["violations"][0]["witnesses"] == ["2>0:--"]


def test_limits_of_a_diagram_file(files, tmp_path, capsys):
    d = tmp_path / "one_node.json"
    d.write_text(json.dumps({"nodes": {"a": "2"}, "arrows": []}))
    assert run(["limits", files["par2"], "--diagram", str(d), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["apex"] == "2"
    assert doc["result"]["legs"] == ["2>2:01"]

    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert run(["limits", files["par2"], "--diagram", str(bad)]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_lattice_tables(files, capsys):
    assert run(["lattice", files["par013"], "1", "--tables", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"]["elements"] == ["1>1:-", "1>1:0"]
    assert doc["result"]["bottom"] == "1>1:-"
    assert doc["result"]["top"] == "1>1:0"
    assert doc["result"]["joins"]["1>1:- v 1>1:0"] == "1>1:0"
    assert doc["result"]["meets"]["1>1:- ^ 1>1:0"] == "1>1:-"


def test_complete_finset(files, tmp_path, capsys):
    out_path = str(tmp_path / "comp.json")
    assert run(["complete", "--finset", "1", "--out", out_path]) == 0
    out = capsys.readouterr().out
    assert "objects: 3" in out
    assert "morphisms: 7" in out
    assert run(["check", out_path, "--coproducts"]) == 0
    assert "status: pass" in capsys.readouterr().out


def test_complete_needs_exactly_one_source(files, tmp_path, capsys):
    assert run(["complete"]) == 2
    assert "exactly one" in capsys.readouterr().err
    assert run(["complete", "--finset", "1", "--file", "x.json"]) == 2
    assert "exactly one" in capsys.readouterr().err


def test_complete_from_distributive_file(tmp_path, capsys):
    from rcat.copycat import finset_distributive_data

    # only sizes with a maybe object survive, so this matches --finset 1
    doc = rio.dump_distributive(finset_distributive_data((0, 1, 2, 4)))
    p = tmp_path / "d.json"
    p.write_text(json.dumps(doc))
    assert run(["complete", "--file", str(p), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "pass"
    assert rep["result"]["objects"] == 3
    assert rep["result"]["morphisms"] == 7
