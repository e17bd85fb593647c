import numpy as np
import pytest

from nccc import classify
from nccc.analysis import default_sweep_specs
from nccc.classify import (
    BORDER,
    EQ,
    HYPER,
    LE_EQ_SE,
    NEITHER,
    OTHER,
    SE_BETWEEN,
    energy_classification,
    energy_ordering,
    integrality_predicates,
    is_square,
    perfect_square_predicates,
    quotient_energy_classification,
    square_solution_sets,
    tag_energy,
    tag_ordering,
)
from nccc.groups import FamilySpec, QuotientKind, build_group, center, central_quotient_kind


def test_perfect_square_examples():
    assert perfect_square_predicates(2) == (True, True, False)
    assert perfect_square_predicates(11) == (False, True, False)
    assert perfect_square_predicates(1) == (True, False, True)
    with pytest.raises(ValueError):
        perfect_square_predicates(0)


def test_square_mask_matches_isqrt():
    m = np.arange(1, 10**6 + 1, dtype=np.int64)
    for expr in (m * m + 6 * m - 7, m * m + 12 * m - 28, 4 * m * m + 12 * m - 7):
        fast = classify._square_mask(expr)
        slow = np.array([is_square(int(v)) for v in expr])
        assert (fast == slow).all()


def test_square_mask_near_float_limit():
    r = np.arange(94_906_200, 94_906_270, dtype=np.int64)  # r*r straddles 2^53
    vals = np.concatenate([r * r, r * r - 1, r * r + 1])
    assert classify._square_mask(vals).tolist() == [is_square(int(v)) for v in vals]


def test_solution_sets():
    assert square_solution_sets(1000) == ([1, 2], [2, 4, 11], [1])


@pytest.mark.parametrize("spec,want", [
    (FamilySpec.dihedral(9), (True, True, True)),
    (FamilySpec.v8m(3), (False, True, False)),
    (FamilySpec.semidihedral(4), (False, True, False)),
    (FamilySpec.dihedral(6), (True, True, True)),
    (FamilySpec.dihedral(8), (True, True, False)),
    (FamilySpec.dicyclic(2), (True, True, True)),
    (FamilySpec.heisenberg(5), (True, True, True)),
], ids=lambda x: getattr(x, "name", ""))
def test_integrality_examples(spec, want):
    assert integrality_predicates(spec) == want


@pytest.mark.parametrize("spec,want", [
    (FamilySpec.dihedral(3), (BORDER,) * 3),
    (FamilySpec.dicyclic(2), (BORDER,) * 3),
    (FamilySpec.v8m(5), (NEITHER, HYPER, HYPER)),
    (FamilySpec.dihedral(10), (NEITHER, NEITHER, NEITHER)),
    (FamilySpec.dihedral(16), (NEITHER, HYPER, HYPER)),
    (FamilySpec.heisenberg(3), (NEITHER,) * 3),
], ids=lambda x: getattr(x, "name", ""))
def test_energy_class_examples(spec, want):
    assert energy_classification(spec) == want


SPECS = default_sweep_specs()


@pytest.mark.parametrize("spec", SPECS, ids=[s.name for s in SPECS])
def test_quotient_rule_agrees_with_family_lists(spec):
    g = build_group(spec)
    kind, z = central_quotient_kind(g), len(center(g))
    assert quotient_energy_classification(kind, z) == energy_classification(spec)


def test_quotient_rule_errors():
    with pytest.raises(ValueError):
        quotient_energy_classification(QuotientKind("Other"), 1)
    with pytest.raises(ValueError):
        quotient_energy_classification(QuotientKind("D2m", 2), 2)


def test_orderings():
    assert energy_ordering(FamilySpec.dihedral(6)) == EQ
    assert energy_ordering(FamilySpec.dihedral(7)) == LE_EQ_SE
    assert energy_ordering(FamilySpec.dicyclic(4)) == SE_BETWEEN
    assert energy_ordering(FamilySpec.semidihedral(3)) == EQ
    with pytest.raises(ValueError):
        energy_ordering(FamilySpec.umn(2, 3))


def test_tags():
    assert tag_energy(4.0, 3) == BORDER
    assert tag_energy(4.0 + 1e-9, 3) == BORDER
    assert tag_energy(4.1, 3) == HYPER
    assert tag_energy(3.9, 3) == NEITHER
    assert tag_ordering(2, 2, 2) == EQ
    assert tag_ordering(1, 2, 2) == LE_EQ_SE
    assert tag_ordering(1, 3, 2) == SE_BETWEEN
    assert tag_ordering(3, 2, 1) == OTHER


def test_report_dict():
    r = classify.ClassificationReport(True, True, False, (BORDER, HYPER, NEITHER), EQ)
    assert r.to_dict()["energy_class"] == {"E": BORDER, "LE": HYPER, "SE": NEITHER}
