"""Closed-form spectra and energies of NCCC-graphs, family by family.

Every formula here is written out from its stated form and evaluated in exact
quadratic-surd arithmetic. None of it looks at a group: the oracle pipeline in
:mod:`nccc.spectra` is what these are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction as F

from .graphs import MultipartiteShape
from .groups import FamilySpec, FiniteGroup, center, central_quotient_kind, is_prime
from .spectra import CharPoly, EnergyReport, Spectrum
from .surds import Surd, as_surd, sqrt, surd

__all__ = [
    "ClosedFormResult",
    "cm_polys",
    "spectra_pp_quotient",
    "spectra_d2m_quotient",
    "family_closed_form",
    "closed_form_for_group",
]


@dataclass(frozen=True)
class ClosedFormResult:
    shape: MultipartiteShape
    spec_A: Spectrum
    spec_L: Spectrum
    spec_Q: Spectrum
    E: Surd
    LE: Surd
    SE: Surd
    case_tag: str

    def __post_init__(self):
        n = self.shape.n_vertices
        for name in ("spec_A", "spec_L", "spec_Q"):
            if getattr(self, name).n != n:
                raise ValueError(f"{self.case_tag}: {name} has {getattr(self, name).n} values, shape has {n}")

    @property
    def n_vertices(self) -> int:
        return self.shape.n_vertices

    @property
    def n_edges(self) -> int:
        return self.shape.n_edges

    @property
    def delta(self) -> F:
        return F(2 * self.n_edges, self.n_vertices)

    def energy_report(self) -> EnergyReport:
        return EnergyReport(self.E, self.LE, self.SE, self.delta, self.n_vertices, self.n_edges)

    def integrality(self) -> tuple[bool, bool, bool]:
        """Symbolic integrality of the three spectra."""
        return self.spec_A.is_integral(), self.spec_L.is_integral(), self.spec_Q.is_integral()

    def perturbed(self) -> ClosedFormResult:
        """Copy with the sign of the LE formula flipped (harness self-test)."""
        return replace(self, LE=-self.LE, case_tag=self.case_tag + " [perturbed]")


def _result(shape, a_items, l_items, q_items, E, LE, SE, tag) -> ClosedFormResult:
    return ClosedFormResult(
        shape=shape,
        spec_A=Spectrum.from_multiset(a_items),
        spec_L=Spectrum.from_multiset(l_items),
        spec_Q=Spectrum.from_multiset(q_items),
        E=as_surd(E),
        LE=as_surd(LE),
        SE=as_surd(SE),
        case_tag=tag,
    )


def _pm(center, half_width_coeff, radicand):
    """The pair ``center ± half_width_coeff * sqrt(radicand)`` with multiplicity one each."""
    return [(surd(center, half_width_coeff, radicand), 1), (surd(center, -half_width_coeff, radicand), 1)]


# ----------------------------------------------------------------------
# complete multipartite characteristic polynomials

def _lin(r) -> tuple[int, int]:
    return (1, -int(r))


def cm_polys(a1: int, p1: int, a2: int = 0, p2: int = 0) -> tuple[CharPoly, CharPoly, CharPoly]:
    """A, L and Q characteristic polynomials of ``K_{a1·p1, a2·p2}``.

    ``a2 = p2 = 0`` selects the single-size shape ``K_{a1·p1}``.
    """
    if a1 < 1 or p1 < 1:
        raise ValueError("a1 and p1 must be positive")
    if (a2 == 0) != (p2 == 0) or a2 < 0 or p2 < 0:
        raise ValueError("a2 and p2 must both be zero or both positive")
    if a2 == 0:
        a, b = a1, p1
        pa = CharPoly.from_factors([(_lin(0), a * (b - 1)), (_lin(-b), a - 1), (_lin(b * (a - 1)), 1)])
        pl = CharPoly.from_factors([(_lin(0), 1), (_lin(b * (a - 1)), a * (b - 1)), (_lin(a * b), a - 1)])
        pq = CharPoly.from_factors([(_lin(b * (a - 1)), a * (b - 1)), (_lin(b * (a - 2)), a - 1),
                                    (_lin(2 * b * (a - 1)), 1)])
        return pa, pl, pq
    n = a1 * p1 + a2 * p2
    r = a1 + a2
    quad_a = (1, p1 * (1 - a1) + p2 * (1 - a2), p1 * p2 * (1 - a1 - a2))
    pa = CharPoly.from_factors([(_lin(0), n - r), (_lin(-p1), a1 - 1), (_lin(-p2), a2 - 1), (quad_a, 1)])
    pl = CharPoly.from_factors([
        (_lin(0), 1),
        (_lin(a1 * p1 + p2 * (a2 - 1)), a2 * (p2 - 1)),
        (_lin(a2 * p2 + p1 * (a1 - 1)), a1 * (p1 - 1)),
        (_lin(n), a1 + a2 - 1),
    ])
    quad_q = (
        1,
        -(2 * n + p1 * (a1 - 2) + p2 * (a2 - 2)),
        n * n - 2 * n * (p1 + p2) + n * (a1 * p1 + a2 * p2) + 2 * p1 * p2 * (2 - a1 - a2),
    )
    pq = CharPoly.from_factors([
        (_lin(n - p1), a1 * (p1 - 1)),
        (_lin(n - p2), a2 * (p2 - 1)),
        (_lin(n - 2 * p1), a1 - 1),
        (_lin(n - 2 * p2), a2 - 1),
        (quad_q, 1),
    ])
    return pa, pl, pq


# ----------------------------------------------------------------------
# central quotient families

def spectra_pp_quotient(p: int, z: int) -> ClosedFormResult:
    """``G/Z(G) ≅ Z_p x Z_p`` with ``|Z(G)| = z``: the graph is ``K_{(p+1)·n}``, ``n = (p-1)z/p``."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if z < 1 or z % p:
        raise ValueError(f"p = {p} must divide z = {z}")
    n = (p - 1) * z // p
    k = (p + 1) * (n - 1)
    return _result(
        MultipartiteShape.of((p + 1, n)),
        [(0, k), (-n, p), (n * p, 1)],
        [(0, 1), (n * p, k), ((p + 1) * n, p)],
        [(n * p, k), (n * (p - 1), p), (2 * n * p, 1)],
        2 * n * p, 2 * n * p, 2 * n * p,
        f"ZpxZp-quotient, p={p}",
    )


def spectra_d2m_quotient(m: int, z: int) -> ClosedFormResult:
    """``G/Z(G) ≅ D_2m`` with ``|Z(G)| = z``."""
    if m < 2 or z < 1:
        raise ValueError("need m >= 2 and z >= 1")
    if m % 2 == 0:
        if z % 2:
            raise ValueError(f"even m needs even z, got z = {z}")
        shape = MultipartiteShape.of((2, z // 2), (1, (m - 1) * z // 2))
        a = [(0, z * (m + 1) // 2 - 3), (F(-z, 2), 1)] + _pm(F(z, 4), F(z, 4), 8 * m - 7)
        lap = [(0, 1), (z, (m - 1) * z // 2 - 1), (F(z * m, 2), z - 2), (F(z * (m + 1), 2), 2)]
        q = [(z, (m - 1) * z // 2 - 1), (F(z * m, 2), z - 2), (F(z * (m - 1), 2), 1)]
        q += _pm(F(z * (m + 3), 4), F(z, 4), (m - 1) * (m + 7))
        E = F(z, 2) * (1 + sqrt(8 * m - 7))
        LE = F(z * z * (m - 1) * (m - 2), m + 1) + 2 * z
        if m == 2:
            SE = as_surd(2 * z)
        else:
            SE = F(z * z * (m - 1) * (m - 2), m + 1) + F(z * (m - 1), 2) * (sqrt(1 + F(8, m - 1)) - 1)
        return _result(shape, a, lap, q, E, LE, SE, "D2m-quotient, m even")
    if m < 3:
        raise ValueError("odd m must be at least 3")
    shape = MultipartiteShape.of((1, z), (1, (m - 1) * z // 2))
    a = [(0, z * (m + 1) // 2 - 2)] + _pm(0, z, F(m - 1, 2))
    lap = [(0, 1), (z, z * (m - 1) // 2 - 1), (F(z * (m - 1), 2), z - 1), (F(z * (m + 1), 2), 1)]
    E = 2 * z * sqrt(F(m - 1, 2))
    LE = F(z * z * (m - 1) * (m - 3), m + 1) + 2 * z
    return _result(shape, a, lap, lap, E, LE, LE, "D2m-quotient, m odd")


# ----------------------------------------------------------------------
# named families

def _dihedral(m: int) -> ClosedFormResult:
    if m % 2:
        a = [(0, (m - 3) // 2)] + _pm(0, 1, F(m - 1, 2))
        lap = [(0, 1), (1, (m - 3) // 2), (F(m + 1, 2), 1)]
        LE = F((m - 1) * (m - 3), m + 1) + 2
        return _result(MultipartiteShape.of((1, 1), (1, (m - 1) // 2)), a, lap, lap,
                       2 * sqrt(F(m - 1, 2)), LE, LE, "D2m, m odd")
    if (m // 2) % 2:
        a = [(0, (m - 2) // 2)] + _pm(0, 1, m - 2)
        lap = [(0, 1), (2, (m - 4) // 2), (F(m - 2, 2), 1), (F(m + 2, 2), 1)]
        LE = F(2 * (m - 2) * (m - 6), m + 2) + 4
        return _result(MultipartiteShape.of((1, 2), (1, (m - 2) // 2)), a, lap, lap,
                       2 * sqrt(m - 2), LE, LE, "D2m, m even, m/2 odd")
    a = [(0, (m - 4) // 2), (-1, 1)] + _pm(F(1, 2), F(1, 2), 4 * m - 7)
    lap = [(0, 1), (2, (m - 4) // 2), (F(m + 2, 2), 2)]
    q = [(2, (m - 4) // 2), (F(m - 2, 2), 1)] + _pm(F(m + 6, 4), F(1, 4), (m - 2) * (m + 14))
    LE = F(2 * (m - 2) * (m - 4), m + 2) + 4
    if m == 4:
        SE = as_surd(4)
    else:
        SE = F(2 * (m - 2) * (m - 4), m + 2) + F(m - 2, 2) * (sqrt(1 + F(16, m - 2)) - 1)
    return _result(MultipartiteShape.of((2, 1), (1, (m - 2) // 2)), a, lap, q,
                   1 + sqrt(4 * m - 7), LE, SE, "D2m, m even, m/2 even")


def _dicyclic(m: int) -> ClosedFormResult:
    if m % 2 == 0:
        a = [(0, m - 2), (-1, 1)] + _pm(F(1, 2), F(1, 2), 8 * m - 7)
        lap = [(0, 1), (2, m - 2), (m + 1, 2)]
        q = [(2, m - 2), (m - 1, 1)] + _pm(F(m + 3, 2), F(1, 2), (m - 1) * (m + 7))
        LE = F(4 * (m - 1) * (m - 2), m + 1) + 4
        if m == 2:
            SE = as_surd(4)
        else:
            SE = F(4 * (m - 1) * (m - 2), m + 1) + (m - 1) * (sqrt(1 + F(8, m - 1)) - 1)
        return _result(MultipartiteShape.of((2, 1), (1, m - 1)), a, lap, q,
                       1 + sqrt(8 * m - 7), LE, SE, "T4m, m even")
    a = [(0, m - 1)] + _pm(0, 2, F(m - 1, 2))
    lap = [(0, 1), (2, m - 2), (m - 1, 1), (m + 1, 1)]
    LE = F(4 * (m - 1) * (m - 3), m + 1) + 4
    return _result(MultipartiteShape.of((1, 2), (1, m - 1)), a, lap, lap,
                   4 * sqrt(F(m - 1, 2)), LE, LE, "T4m, m odd")


def _u6m(m: int) -> ClosedFormResult:
    a = [(0, 2 * m - 2), (m, 1), (-m, 1)]
    lap = [(0, 1), (m, 2 * m - 2), (2 * m, 1)]
    return _result(MultipartiteShape.of((2, m)), a, lap, lap, 2 * m, 2 * m, 2 * m, "U6m")


def _umn(n: int, m: int) -> ClosedFormResult:
    if m % 2:
        a = [(0, n * (m + 1) // 2 - 2)] + _pm(0, n, F(m - 1, 2))
        lap = [(0, 1), (n, n * (m - 1) // 2 - 1), (F(n * (m - 1), 2), n - 1), (F(n * (m + 1), 2), 1)]
        LE = F(n * n * (m - 1) * (m - 3), m + 1) + 2 * n
        return _result(MultipartiteShape.of((1, n), (1, n * (m - 1) // 2)), a, lap, lap,
                       2 * n * sqrt(F(m - 1, 2)), LE, LE, "U(n,m), m odd")
    if (m // 2) % 2:
        a = [(0, n * (m + 2) // 2 - 2)] + _pm(0, n, m - 2)
        lap = [(0, 1), (2 * n, n * (m - 2) // 2 - 1), (F(n * (m - 2), 2), 2 * n - 1), (F(n * (m + 2), 2), 1)]
        LE = F(2 * n * n * (m - 2) * (m - 6), m + 2) + 4 * n
        return _result(MultipartiteShape.of((1, 2 * n), (1, n * (m - 2) // 2)), a, lap, lap,
                       2 * n * sqrt(m - 2), LE, LE, "U(n,m), m even, m/2 odd")
    a = [(0, n * (m + 2) // 2 - 3), (-n, 1)] + _pm(F(n, 2), F(n, 2), 4 * m - 7)
    lap = [(0, 1), (2 * n, n * (m - 2) // 2 - 1), (F(n * m, 2), 2 * n - 2), (F(n * (m + 2), 2), 2)]
    q = [(2 * n, n * (m - 2) // 2 - 1), (F(n * m, 2), 2 * n - 2), (F(n * (m - 2), 2), 1)]
    q += _pm(F(n * (m + 6), 4), F(n, 4), (m - 2) * (m + 14))
    LE = F(2 * n * n * (m - 2) * (m - 4), m + 2) + 4 * n
    if m == 4:
        SE = as_surd(4 * n)
    else:
        SE = F(2 * n * n * (m - 2) * (m - 4), m + 2) + F(n * (m - 2), 2) * (sqrt(1 + F(16, m - 2)) - 1)
    return _result(MultipartiteShape.of((2, n), (1, n * (m - 2) // 2)), a, lap, q,
                   n * (1 + sqrt(4 * m - 7)), LE, SE, "U(n,m), m even, m/2 even")


def _semidihedral(m: int) -> ClosedFormResult:
    if m % 2 == 0:
        a = [(0, 2 * m - 2), (-1, 1)] + _pm(F(1, 2), F(1, 2), 16 * m - 7)
        lap = [(0, 1), (2, 2 * m - 2), (2 * m + 1, 2)]
        q = [(2, 2 * m - 2), (2 * m - 1, 1)] + _pm(F(2 * m + 3, 2), F(1, 2), (2 * m - 1) * (2 * m + 7))
        LE = F(4 * (2 * m - 1) * (2 * m - 2), 2 * m + 1) + 4
        SE = F(4 * (2 * m - 1) * (2 * m - 2), 2 * m + 1) + (2 * m - 1) * (sqrt(1 + F(8, 2 * m - 1)) - 1)
        return _result(MultipartiteShape.of((2, 1), (1, 2 * m - 1)), a, lap, q,
                       1 + sqrt(16 * m - 7), LE, SE, "SD8m, m even")
    a = [(0, 2 * m)] + _pm(0, 4, F(m - 1, 2))
    lap = [(0, 1), (4, 2 * m - 3), (2 * (m - 1), 3), (2 * (m + 1), 1)]
    LE = F(16 * (m - 1) * (m - 3), m + 1) + 8
    return _result(MultipartiteShape.of((1, 4), (1, 2 * (m - 1))), a, lap, lap,
                   8 * sqrt(F(m - 1, 2)), LE, LE, "SD8m, m odd")


def _v8m(m: int) -> ClosedFormResult:
    if m % 2 == 0:
        a = [(0, 2 * m - 1), (-2, 1)] + _pm(1, 1, 8 * m - 7)
        lap = [(0, 1), (4, 2 * m - 3), (2 * m, 2), (2 * (m + 1), 2)]
        q = [(4, 2 * m - 3), (2 * m, 2), (2 * (m - 1), 1)] + _pm(m + 3, 1, (m - 1) * (m + 7))
        LE = F(16 * (m - 1) * (m - 2), m + 1) + 8
        if m == 2:
            SE = as_surd(8)
        else:
            SE = F(16 * (m - 1) * (m - 2), m + 1) + 2 * (m - 1) * (sqrt(1 + F(8, m - 1)) - 1)
        return _result(MultipartiteShape.of((2, 2), (1, 2 * m - 2)), a, lap, q,
                       2 * (1 + sqrt(8 * m - 7)), LE, SE, "V8m, m even")
    a = [(0, 2 * m - 2), (-1, 1)] + _pm(F(1, 2), F(1, 2), 16 * m - 7)
    lap = [(0, 1), (2, 2 * m - 2), (2 * m + 1, 2)]
    q = [(2, 2 * m - 2), (2 * m - 1, 1)] + _pm(F(2 * m + 3, 2), F(1, 2), (2 * m - 1) * (2 * m + 7))
    LE = F((4 * m - 2) ** 2 + 8, 2 * m + 1)
    SE = F(3 * (2 * m - 1) * (2 * m - 3), 2 * m + 1) + (2 * m - 1) * sqrt(1 + F(8, 2 * m - 1))
    return _result(MultipartiteShape.of((2, 1), (1, 2 * m - 1)), a, lap, q,
                   1 + sqrt(16 * m - 7), LE, SE, "V8m, m odd")


def family_closed_form(spec: FamilySpec, *, perturb: bool = False) -> ClosedFormResult:
    """Closed form for a named family member; ``table`` groups go through their quotient."""
    k = spec.kind
    if k == "dihedral":
        res = _dihedral(spec.m)
    elif k == "dicyclic":
        res = _dicyclic(spec.m)
    elif k == "semidihedral":
        res = _semidihedral(spec.m)
    elif k == "umn":
        res = _umn(spec.n, spec.m)
    elif k == "u6m":
        res = _u6m(spec.m)
    elif k == "v8m":
        res = _v8m(spec.m)
    elif k == "heisenberg":
        res = spectra_pp_quotient(spec.p, spec.p)
    else:
        from .groups import build_group
        res = closed_form_for_group(build_group(spec))
        if res is None:
            raise ValueError(f"{spec.name}: central quotient is neither Z_p x Z_p nor dihedral")
    return res.perturbed() if perturb else res


def closed_form_for_group(group: FiniteGroup) -> ClosedFormResult | None:
    """Closed form from the recognized central quotient, or ``None`` when unrecognized."""
    kind = central_quotient_kind(group)
    z = len(center(group))
    if kind.kind == "ZpxZp":
        return spectra_pp_quotient(kind.param, z)
    if kind.kind == "D2m":
        return spectra_d2m_quotient(kind.param, z)
    return None
