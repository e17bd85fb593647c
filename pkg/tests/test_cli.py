import json
import subprocess
import sys

import pytest

from nccc.cli import main
from nccc.graphs import from_adjacency_json, from_edge_list
from nccc.groups import FamilySpec, build_group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_table_output(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "d2m", "--m", "5")
    assert code == 0
    assert "2√2" in out and "10/3" in out and "neither/neither/neither" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "t4m", "--m", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["energies"]["formula_exact"] == {"E": "4", "LE": "4", "SE": "4"}
    assert set(doc["energy_class"]["oracle"].values()) == {"border"}


def test_analyze_v16_shape(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "v8m", "--m", "2", "--json")
    doc = json.loads(out)
    assert doc["shape"] == "K_{3·2}" and doc["energies"]["formula_exact"]["E"] == "8"


def test_analyze_umn_and_heis(capsys):
    assert run(capsys, "analyze", "--family", "umn", "--n", "3", "--m", "4")[0] == 0
    assert run(capsys, "analyze", "--family", "heis", "--p", "3")[0] == 0
    assert run(capsys, "analyze", "--family", "u6m", "--m", "3")[0] == 0
    assert run(capsys, "analyze", "--family", "sd8m", "--m", "3")[0] == 0


def test_analyze_exports(capsys, tmp_path):
    adj, edges = tmp_path / "g.json", tmp_path / "g.txt"
    code, _, _ = run(capsys, "analyze", "--family", "t4m", "--m", "4",
                     "--export-json", str(adj), "--export-edges", str(edges))
    assert code == 0
    g = from_adjacency_json(adj.read_text())
    assert json.loads(adj.read_text())["schema"] == 1
    assert g.n_vertices == 5 and g.n_edges == 7
    assert from_edge_list(edges.read_text(), 5).same_as(g)


def test_analyze_table_file(capsys, tmp_path):
    g = build_group(FamilySpec.dicyclic(3))
    path = tmp_path / "t12.json"
    path.write_text(json.dumps({"order": g.order, "table": g.op.tolist()}))
    code, out, _ = run(capsys, "analyze", "--family", "table", "--table", str(path), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["name"] == "t12" and doc["central_quotient"] == "D2m(3)"


def test_perturb_exit_1(capsys):
    assert run(capsys, "analyze", "--family", "d2m", "--m", "5", "--perturb")[0] == 1
    assert run(capsys, "verify", "--family", "d2m", "--max", "6", "--perturb", "--no-exact")[0] == 1


@pytest.mark.parametrize("argv", [
    ["analyze", "--family", "d2m"],
    ["analyze", "--family", "d2m", "--m", "2"],
    ["analyze", "--family", "heis", "--p", "4"],
    ["analyze", "--family", "umn", "--m", "3"],
    ["analyze", "--family", "table"],
    ["analyze", "--family", "table", "--table", "/nonexistent.json"],
    ["figure", "--figure", "11"],
    ["figure"],
    ["quotient", "--kind", "zpxzp", "--p", "3", "--z", "2"],
    ["quotient", "--kind", "d2m", "--z", "2"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [
    ["analyze", "--family", "nope", "--m", "3"],
    ["verify", "--tol", "-1"],
    ["verify", "--max", "0"],
    ["bogus"],
    [],
])
def test_argparse_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("NCCC_THREADS", "zero")
    code, _, err = run(capsys, "verify", "--family", "d2m", "--max", "5")
    assert code == 2 and "NCCC_THREADS" in err


def test_verify_json_and_csv(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("NCCC_THREADS", "1")
    out_csv = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "verify", "--family", "t4m", "v8m", "--max", "6", "--json", "--csv", str(out_csv))
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["agree"] and doc["instances"] == 10
    assert len(out_csv.read_text().splitlines()) == 11


def test_verify_lemma_squares(capsys):
    code, out, _ = run(capsys, "verify", "--lemma-squares", "--max", "1000000")
    assert code == 0
    assert "{1, 2}" in out and "{2, 4, 11}" in out and "{1}" in out


def test_figure_stdout_and_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "figure", "--figure", "3")
    assert code == 0 and out.splitlines()[1] == "3,2,2,2"
    path = tmp_path / "f9.csv"
    code, out, _ = run(capsys, "figure", "--figure", "9", "--csv", str(path))
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[1] == "2,8,8,8"
    code, out, _ = run(capsys, "figure", "--figure", "8", "--json", "--oracle")
    assert code == 0 and json.loads(out)["violations"] == []


def test_quotient(capsys):
    code, out, _ = run(capsys, "quotient", "--kind", "zpxzp", "--p", "3", "--z", "3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["energies"] == {"E": "12", "LE": "12", "SE": "12"}
    code, out, _ = run(capsys, "quotient", "--kind", "d2m", "--m", "5", "--z", "2")
    assert code == 0 and "4√2" in out and "28/3" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nccc", "analyze", "--family", "d2m", "--m", "3", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["energies"]["formula_exact"]["E"] == "2"
