import csv
import io
import json

import pytest

from nccc import analysis
from nccc.groups import FamilySpec


def test_record_dict_and_agreement():
    rec = analysis.analyze(FamilySpec.dicyclic(2))
    doc = rec.to_dict()
    assert doc["schema"] == 1
    assert doc["agree"] and rec.agree
    assert doc["energy_class"]["oracle"] == {"E": "border", "LE": "border", "SE": "border"}
    assert doc["energies"]["formula_exact"] == {"E": "4", "LE": "4", "SE": "4"}
    json.dumps(doc)


def test_perturb_is_detected():
    rec = analysis.analyze(FamilySpec.dihedral(5), perturb=True)
    assert not rec.agree
    assert "energies" in rec.failures()


def test_table_without_closed_form_still_checked():
    # Z3 x S3: center of order 3, quotient S3 = D6
    from nccc.groups import build_group

    s3 = build_group(FamilySpec.dihedral(3)).op
    order = 18
    table = [[((a // 6 + b // 6) % 3) * 6 + int(s3[a % 6, b % 6]) for b in range(order)] for a in range(order)]
    rec = analysis.analyze(FamilySpec.explicit({"order": order, "table": table, "name": "Z3xS3"}))
    assert rec.quotient == "D2m(3)" and rec.center_size == 3
    assert rec.agree


def test_sweep_specs():
    specs = analysis.default_sweep_specs()
    assert len(specs) == 38 + 29 + 19 + 24 + 65 + 14 + 2
    assert {s.name for s in analysis.default_sweep_specs(["v8m"], max_m=4)} == {"V16", "V24", "V32"}


def test_worker_count(monkeypatch):
    monkeypatch.setenv("NCCC_THREADS", "3")
    assert analysis.worker_count() == 3
    for bad in ("0", "x"):
        monkeypatch.setenv("NCCC_THREADS", bad)
        with pytest.raises(ValueError):
            analysis.worker_count()


def test_parallel_sweep_matches_serial():
    specs = analysis.default_sweep_specs(["dihedral", "heisenberg"], max_m=8)
    serial = analysis.run_sweep(specs, exact=False, threads=1)
    parallel = analysis.run_sweep(specs, exact=False, threads=2)
    assert [r.name for r in serial] == [r.name for r in parallel]
    assert [r.oracle_energies for r in serial] == [r.oracle_energies for r in parallel]


def test_sweep_csv_digits():
    recs = analysis.run_sweep(analysis.default_sweep_specs(["dihedral"], max_m=5), exact=False, threads=1)
    rows = list(csv.DictReader(io.StringIO(analysis.sweep_csv(recs))))
    assert [r["name"] for r in rows] == ["D6", "D8", "D10"]
    assert all(r["agree"] == "1" for r in rows)
    # 12 significant digits at most
    assert all(len(r["dev_A"].replace(".", "").split("e")[0].lstrip("0")) <= 12 for r in rows)


def test_figure_csv_format(tmp_path):
    out = tmp_path / "fig5.csv"
    text = analysis.figure_csv(5, out)
    assert out.read_text() == text
    lines = text.splitlines()
    assert lines[0] == "m,E,LE,SE"
    assert lines[2] == "5,5.65685424949,9.33333333333,9.33333333333"
    with pytest.raises(ValueError):
        analysis.figure_rows(11)


@pytest.mark.parametrize("number", sorted(analysis.FIGURES))
def test_figures_match_expected_orderings(number):
    assert analysis.figure_violations(number) == []


def test_group_outside_closed_forms(tmp_path):
    from itertools import permutations

    evens = [p for p in permutations(range(4))
             if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0]
    index = {p: i for i, p in enumerate(evens)}
    table = [[index[tuple(a[b[k]] for k in range(4))] for b in evens] for a in evens]
    rec = analysis.analyze(FamilySpec.explicit({"order": 12, "table": table, "name": "A4"}))
    assert rec.quotient == "Other" and rec.formula_shape is None
    assert rec.flags == {"duality": True}
    assert rec.agree
