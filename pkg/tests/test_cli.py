import json

import pytest

from sumsetlab.cli import main


@pytest.fixture()
def cube_file(tmp_path):
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(
        {"dim": 2, "q": 1, "primitives": [{"box": {"lo": ["0/1", "0/1"],
                                                   "hi": ["1/1", "1/1"]}}]}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_delta_equality_case(capsys, cube_file):
    code, out, _ = run(capsys, "delta", cube_file, cube_file, "-t", "1/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["measured"]["delta"] == "0/1"
    assert doc["tight"] is True


def test_sum_and_isum(capsys, cube_file):
    code, out, _ = run(capsys, "sum", cube_file, cube_file)
    assert code == 0
    assert json.loads(out)["volume"] == "4/1"
    code, out, _ = run(capsys, "isum", cube_file, "-k", "3")
    assert code == 0
    assert json.loads(out)["volume"] == "9/1"


def test_hull_subcommand(capsys, tmp_path, cube_file):
    path = tmp_path / "withpoint.json"
    path.write_text(json.dumps(
        {"dim": 2, "q": 1,
         "primitives": [{"box": {"lo": ["0/1", "0/1"], "hi": ["1/1", "1/1"]}},
                        {"point": ["5/1", "5/1"]}]}))
    code, out, _ = run(capsys, "hull", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["volume"] == "5/1"
    assert doc["ratio"] == "5/1"


def test_sharp_family_cli(capsys):
    code, out, _ = run(capsys, "sharp-family", "two-set", "-d", "2", "-t", "1/2",
                       "-v", "8,8")
    assert code == 0
    assert json.loads(out)["measured"]["delta"] == "1/4"
    code, out, _ = run(capsys, "sharp-family", "iterated", "-d", "2", "-k", "2",
                       "-v", "9,9", "--grid-q", "2,4")
    assert code == 0
    assert json.loads(out)["measured"]["ratio"] == "5/1"


def test_position_cli(capsys, tmp_path):
    tri = tmp_path / "tri.json"
    tri.write_text(json.dumps({"dim": 2, "vertices": [["0/1", "0/1"], ["2/1", "0/1"],
                                                      ["1/1", "1/1"]]}))
    code, out, _ = run(capsys, "position", str(tri), str(tri))
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["holds"] is True
    assert doc["certificate"]["lambdas"] == ["2/1", "1/1"]


def test_transport_cli(capsys, cube_file):
    code, out, _ = run(capsys, "transport", cube_file, cube_file, "-t", "1/2",
                       "--axis", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["density_check"]["holds"] is True
    assert doc["plan"]["cost"] == "0/1"


def test_check_subcommand(capsys):
    code, out, _ = run(capsys, "check", "plunnecke", "--count", "20", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["holds_all"] is True and doc["violations"] == []


def test_sweep_csv_deterministic(capsys):
    code1, out1, _ = run(capsys, "sweep", "--checker", "lemma-distinct",
                         "--count", "10", "--seed", "3")
    code2, out2, _ = run(capsys, "sweep", "--checker", "lemma-distinct",
                         "--count", "10", "--seed", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    header = out1.splitlines()[0]
    assert header == "seed,instance,d,q,t_or_k,primary_measure,threshold,hull_ratio,holds,tight"
    assert len(out1.splitlines()) == 11


def test_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "delta", str(bad), str(bad), "-t", "1/2")
    assert code == 2
    assert "line" in err


def test_resolution_cap_exits_2(capsys, tmp_path, cube_file):
    code, _, err = run(capsys, "--max-resolution", "1", "delta", cube_file, cube_file,
                       "-t", "1/2")
    assert code == 2
    assert "cap" in err


def test_output_file(tmp_path, cube_file, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "-o", str(dest), "delta", cube_file, cube_file, "-t", "1/2")
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["measured"]["delta"] == "0/1"


def test_max_cells_env_override(capsys, cube_file, monkeypatch):
    monkeypatch.setenv("SUMSETLAB_MAX_CELLS", "0")
    code, _, err = run(capsys, "sum", cube_file, cube_file)
    assert code == 2
    assert "SUMSETLAB_MAX_CELLS" in err
    monkeypatch.setenv("SUMSETLAB_MAX_CELLS", "not-a-number")
    code, _, err = run(capsys, "sum", cube_file, cube_file)
    assert code == 2


def test_outputs_round_trip_through_loaders(capsys, cube_file, tmp_path):
    from sumsetlab.setio import load_grid, load_plan, load_polytope

    _, out, _ = run(capsys, "sum", cube_file, cube_file)
    assert load_grid(json.loads(out)["set"]).cell_count == 4

    tri = tmp_path / "tri.json"
    tri.write_text(json.dumps({"dim": 2, "vertices": [["0/1", "0/1"], ["2/1", "0/1"],
                                                      ["1/1", "1/1"]]}))
    _, out, _ = run(capsys, "position", str(tri), str(tri))
    doc = json.loads(out)
    assert load_polytope(doc["certificate"]["u"]).dim == 2

    _, out, _ = run(capsys, "transport", cube_file, cube_file, "-t", "1/2")
    load_plan(json.loads(out)["plan"])
