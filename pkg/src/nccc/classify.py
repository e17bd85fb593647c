"""Integrality, border/hyperenergetic and energy-ordering statements.

Two kinds of functions live here. The predicate functions encode the
statements per family and parity branch without computing any spectrum. The
``*_from_*`` functions tag computed data (exact polynomials, numeric
energies) so the two can be compared.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .groups import FamilySpec, QuotientKind, build_group, center, central_quotient_kind
from .spectra import CharPoly, integer_root_split

__all__ = [
    "BORDER",
    "HYPER",
    "NEITHER",
    "ORDERINGS",
    "ClassificationReport",
    "is_square",
    "perfect_square_predicates",
    "square_solution_sets",
    "integrality_predicates",
    "integrality_from_polys",
    "energy_classification",
    "quotient_energy_classification",
    "energy_ordering",
    "in_ordering_scope",
    "tag_energy",
    "tag_ordering",
]

BORDER, HYPER, NEITHER = "border", "hyper", "neither"
EQ, LE_EQ_SE, SE_BETWEEN, OTHER = "E=LE=SE", "E<LE=SE", "E<SE<LE", "other"
ORDERINGS = (EQ, LE_EQ_SE, SE_BETWEEN, OTHER)


@dataclass(frozen=True)
class ClassificationReport:
    integral: bool
    l_integral: bool
    q_integral: bool
    energy_class: tuple[str, str, str]  # (E, LE, SE)
    ordering: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["energy_class"] = dict(zip(("E", "LE", "SE"), self.energy_class))
        return d


# ----------------------------------------------------------------------
# perfect squares

def is_square(k: int) -> bool:
    return k >= 0 and math.isqrt(k) ** 2 == k


def perfect_square_predicates(m: int) -> tuple[bool, bool, bool]:
    """Whether m²+6m−7, m²+12m−28 and 4m²+12m−7 are perfect squares."""
    if m < 1:
        raise ValueError("m must be positive")
    return (
        is_square(m * m + 6 * m - 7),
        is_square(m * m + 12 * m - 28),
        is_square(4 * m * m + 12 * m - 7),
    )


def _square_mask(values: np.ndarray) -> np.ndarray:
    ok = values >= 0
    v = np.where(ok, values, 0)
    r = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    # float sqrt can be off by one near large squares; settle it in integers
    r = np.where(r * r > v, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    return ok & (r * r == v)


def square_solution_sets(max_m: int) -> tuple[list[int], list[int], list[int]]:
    """All m in [1, max_m] making each of the three expressions a perfect square."""
    m = np.arange(1, max_m + 1, dtype=np.int64)
    exprs = (m * m + 6 * m - 7, m * m + 12 * m - 28, 4 * m * m + 12 * m - 7)
    return tuple([int(x) for x in m[_square_mask(e)]] for e in exprs)


# ----------------------------------------------------------------------
# integrality

def _quotient_of(spec: FamilySpec) -> tuple[QuotientKind, int]:
    g = build_group(spec)
    return central_quotient_kind(g), len(center(g))


def integrality_predicates(spec: FamilySpec) -> tuple[bool, bool, bool]:
    """(integral, L-integral, Q-integral) as stated for the family and parity branch."""
    k, m = spec.kind, spec.m
    if k in ("heisenberg", "u6m"):
        return True, True, True
    if k == "table":
        kind, z = _quotient_of(spec)
        if kind.kind == "ZpxZp":
            return True, True, True
        raise ValueError(f"{spec.name}: no integrality statement for quotient {kind}")
    if k == "v8m":
        if m % 2 == 0:
            return is_square(8 * m - 7), True, m == 2
        return is_square(16 * m - 7), True, False
    if m % 2:
        # odd branches of D2m, T4m, U(n,m), SD8m
        integral = (m - 1) % 2 == 0 and is_square((m - 1) // 2)
        return integral, True, True
    if k in ("dihedral", "umn"):
        if (m // 2) % 2:
            return is_square(m - 2), True, True
        return is_square(4 * m - 7), True, m == 4
    if k == "dicyclic":
        return is_square(8 * m - 7), True, m == 2
    if k == "semidihedral":
        return is_square(16 * m - 7), True, False
    raise ValueError(f"unknown family {k!r}")


def integrality_from_polys(pa: CharPoly, pl: CharPoly, pq: CharPoly) -> tuple[bool, bool, bool]:
    """Integrality decided from exact characteristic polynomials."""
    return tuple(integer_root_split(p).fully_split for p in (pa, pl, pq))


# ----------------------------------------------------------------------
# border / hyper

def quotient_energy_classification(kind: QuotientKind, z: int) -> tuple[str, str, str]:
    """Tags for a group with the given central quotient and center order."""
    if kind.kind == "ZpxZp":
        n = (kind.param - 1) * z // kind.param
        return (BORDER,) * 3 if n == 1 else (NEITHER,) * 3
    if kind.kind != "D2m":
        raise ValueError(f"no statement for quotient {kind}")
    m = kind.param
    if m < 3:
        raise ValueError("dihedral quotient needs m >= 3")
    if m == 3 and z == 1:
        return (BORDER,) * 3
    l_exception = (
        (m >= 5 and z == 1)
        or (m == 3 and z >= 2)
        or (m == 5 and z in (1, 2))
        or (m == 7 and z == 1)
    )
    q_exception = l_exception or (m == 4 and z == 2)
    return NEITHER, NEITHER if l_exception else HYPER, NEITHER if q_exception else HYPER


def energy_classification(spec: FamilySpec) -> tuple[str, str, str]:
    """(E, LE, SE) tags among border / hyper / neither, from the family statements."""
    k, m = spec.kind, spec.m
    if k == "dihedral":
        if m in (3, 4):
            return (BORDER,) * 3
        l_not = (m % 2 == 1) or m in (6, 10)
        q_not = l_not or m == 8
    elif k == "dicyclic":
        if m == 2:
            return (BORDER,) * 3
        l_not = m in (3, 5)
        q_not = l_not or m == 4
    elif k == "semidihedral":
        l_not = m == 3
        q_not = l_not or m == 2
    elif k == "umn":
        l_not = m in (3, 4, 6) or (m == 5 and spec.n == 2)
        q_not = l_not
    elif k == "v8m":
        l_not = q_not = m == 2
    elif k == "u6m":
        # central quotient D6 with |Z| = m >= 2
        return quotient_energy_classification(QuotientKind("D2m", 3), m)
    elif k == "heisenberg":
        return quotient_energy_classification(QuotientKind("ZpxZp", spec.p), spec.p)
    else:
        kind, z = _quotient_of(spec)
        return quotient_energy_classification(kind, z)
    return NEITHER, NEITHER if l_not else HYPER, NEITHER if q_not else HYPER


def tag_energy(value: float, n_vertices: int, tol: float = 1e-8) -> str:
    """Compare an energy with that of the complete graph on the same vertex count."""
    ref = 2 * (n_vertices - 1)
    if abs(value - ref) <= tol:
        return BORDER
    return HYPER if value > ref else NEITHER


# ----------------------------------------------------------------------
# orderings

ORDERING_FAMILIES = ("dihedral", "dicyclic", "semidihedral", "v8m")


def in_ordering_scope(spec: FamilySpec) -> bool:
    return spec.kind in ORDERING_FAMILIES


def energy_ordering(spec: FamilySpec) -> str:
    """How E, LE and SE compare for D2m, T4m, SD8m and V8m."""
    k, m = spec.kind, spec.m
    if k == "dihedral":
        if m in (3, 4, 6):
            return EQ
        if m % 2 or (m // 2) % 2:
            return LE_EQ_SE
        return SE_BETWEEN
    if k == "dicyclic":
        if m in (2, 3):
            return EQ
        return LE_EQ_SE if m % 2 else SE_BETWEEN
    if k == "semidihedral":
        if m == 3:
            return EQ
        return LE_EQ_SE if m % 2 else SE_BETWEEN
    if k == "v8m":
        return EQ if m == 2 else SE_BETWEEN
    raise ValueError(f"no ordering statement for {spec.name}")


def tag_ordering(E: float, LE: float, SE: float, tol: float = 1e-8) -> str:
    """Three-way comparison of computed energies with an equality tolerance."""
    if abs(E - LE) <= tol and abs(LE - SE) <= tol:
        return EQ
    if E < LE - tol and abs(LE - SE) <= tol:
        return LE_EQ_SE
    if E < SE - tol and SE < LE - tol:
        return SE_BETWEEN
    return OTHER
