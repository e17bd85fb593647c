import warnings
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nccc.graphs import Graph, build_nccc, multipartite_graph, MultipartiteShape
from nccc.groups import FamilySpec, build_group
from nccc.spectra import (
    CharPoly,
    NearDegeneracyWarning,
    Spectrum,
    adjacency_matrix,
    char_poly_exact,
    eigen_symmetric,
    energies,
    graph_spectra,
    group_eigenvalues,
    integer_root_split,
    laplacian_matrix,
    root_bound,
    signless_laplacian_matrix,
)
from nccc.surds import sqrt, surd


def _random_symmetric(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return a + a.T


@pytest.mark.parametrize("backend", ["compiled", "python"])
@pytest.mark.parametrize("seed,n", [(0, 1), (1, 2), (2, 7), (3, 30), (4, 64)])
def test_jacobi_matches_lapack(backend, seed, n):
    a = _random_symmetric(seed, n)
    ours = eigen_symmetric(a, backend=backend)
    ref = np.linalg.eigvalsh(a)
    assert np.allclose(ours, ref, atol=1e-10 * max(1, np.abs(ref).max()))


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValueError):
        eigen_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_laplacian_rows():
    g = build_nccc(build_group(FamilySpec.dicyclic(4)))
    lap, sq = laplacian_matrix(g), signless_laplacian_matrix(g)
    assert (lap.sum(axis=1) == 0).all()
    assert (sq - lap == 2 * adjacency_matrix(g)).all()


def test_traces_and_moments():
    g = build_nccc(build_group(FamilySpec.semidihedral(5)))
    gs = graph_spectra(g)
    e = g.n_edges
    assert gs.A.n == gs.L.n == gs.Q.n == g.n_vertices
    assert abs(gs.A.trace()) < 1e-9
    assert abs(gs.A.moment2() - 2 * e) < 1e-9
    assert abs(gs.L.trace() - 2 * e) < 1e-9 and abs(gs.Q.trace() - 2 * e) < 1e-9


def test_group_eigenvalues_merges_and_warns():
    spec = group_eigenvalues([1.0, 1.0 + 1e-9, 2.0, 2.0, 2.0])
    assert [m for _, m in spec.pairs] == [2, 3]
    with pytest.warns(NearDegeneracyWarning):
        group_eigenvalues([1.0, 1.0005])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        group_eigenvalues([0.0, 1.0])


def test_spectrum_validation():
    with pytest.raises(ValueError):
        Spectrum(((1.0, 1), (0.0, 1)))
    with pytest.raises(ValueError):
        Spectrum(((1.0, 0),))
    with pytest.raises(ValueError):
        Spectrum(((1.0, 1),), exact=True)
    s = Spectrum.from_multiset([(2, 1), (sqrt(2), 2), (2, 3), (5, 0)])
    assert s.pairs == ((sqrt(2), 2), (surd(2), 4))
    assert not s.is_integral()
    with pytest.raises(ValueError):
        Spectrum(((1.0, 1),)).is_integral()


def test_deviation_profile_mismatch():
    a = Spectrum(((0.0, 1), (1.0, 2)))
    assert a.deviation(Spectrum(((0.0, 2), (1.0, 1)))) == float("inf")
    assert a.deviation(Spectrum(((1e-9, 1), (1.0, 2)))) == pytest.approx(1e-9)


def _sympy_charpoly(m):
    x = sympy.Symbol("x")
    return [int(c) for c in sympy.Matrix(m.tolist()).charpoly(x).all_coeffs()]


@pytest.mark.parametrize("spec", [FamilySpec.dihedral(7), FamilySpec.dicyclic(6), FamilySpec.v8m(3),
                                  FamilySpec.heisenberg(3)], ids=lambda s: s.name)
def test_faddeev_leverrier_matches_sympy(spec):
    g = build_nccc(build_group(spec))
    for build in (adjacency_matrix, laplacian_matrix, signless_laplacian_matrix):
        m = build(g)
        assert list(char_poly_exact(m).coeffs) == _sympy_charpoly(m)


@given(st.integers(0, 10_000), st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_faddeev_leverrier_random_integer(seed, n):
    rng = np.random.default_rng(seed)
    m = rng.integers(-4, 5, (n, n))
    assert list(char_poly_exact(m).coeffs) == _sympy_charpoly(m)


def test_charpoly_algebra():
    p = CharPoly.from_factors([((1, -2), 2), ((1, 0, -3), 1)])
    assert p == CharPoly.linear(2) ** 2 * CharPoly((1, 0, -3))
    assert p.degree == 4 and p(2) == 0
    assert str(CharPoly((1, 0, -12, -16, 0))) == "x^4 - 12x^2 - 16x"


def test_integer_root_split():
    p = CharPoly.from_factors([((1, 0), 3), ((1, -4), 2), ((1, 3), 1)])
    rs = integer_root_split(p)
    assert rs.fully_split and rs.roots == ((-3, 1), (0, 3), (4, 2))
    rs = integer_root_split(CharPoly.linear(5) * CharPoly((1, 0, -252)))
    assert not rs.fully_split and rs.roots == ((5, 1),)
    assert rs.remainder == CharPoly((1, 0, -252))


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=8))
@settings(max_examples=80, deadline=None)
def test_root_split_recovers_roots(roots):
    p = CharPoly.from_factors([((1, -r), 1) for r in roots])
    assert max(abs(r) for r in roots) <= root_bound(p)
    rs = integer_root_split(p)
    assert rs.fully_split
    assert sorted(r for r, k in rs.roots for _ in range(k)) == sorted(roots)


def test_exact_energies_k3():
    s_a = Spectrum.from_multiset([(-1, 2), (2, 1)])
    s_l = Spectrum.from_multiset([(0, 1), (3, 2)])
    s_q = Spectrum.from_multiset([(1, 2), (4, 1)])
    rep = energies(s_a, s_l, s_q, 3, 3)
    assert rep.delta == 2 and rep.E == 4 and rep.LE == 4 and rep.SE == 4
    with pytest.raises(ValueError):
        energies(s_a, s_l, Spectrum.from_multiset([(1, 1)]), 3, 3)


def test_energy_of_complete_graph_is_border():
    g = multipartite_graph(MultipartiteShape.of((6, 1)))
    assert graph_spectra(g).energy.as_floats() == pytest.approx((10, 10, 10))


def test_single_vertex():
    gs = graph_spectra(Graph(np.zeros((1, 1), dtype=int)))
    assert gs.energy.as_floats() == (0.0, 0.0, 0.0)
    assert gs.energy.delta == Fraction(0)


@given(st.integers(0, 10_000), st.integers(0, 30), st.integers(1, 1000))
@settings(max_examples=60, deadline=None)
def test_modular_matches_bigint(seed, n, bound):
    rng = np.random.default_rng(seed)
    m = rng.integers(-bound, bound + 1, (n, n))
    assert char_poly_exact(m, "modular") == char_poly_exact(m, "bigint")


def test_char_poly_argument_errors():
    with pytest.raises(ValueError):
        char_poly_exact(np.zeros((2, 3), dtype=int))
    with pytest.raises(ValueError):
        char_poly_exact(np.array([[0.5]]))
    with pytest.raises(ValueError):
        char_poly_exact(np.eye(2, dtype=int), "lapack")
