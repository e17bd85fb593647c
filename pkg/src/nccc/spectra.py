"""Numeric and exact spectra of graph matrices.

This is the oracle side: it knows nothing about closed forms. Eigenvalues
come from a Jacobi solver, characteristic polynomials from the
Faddeev-LeVerrier recurrence (run modulo word-sized primes and lifted by
the Chinese remainder theorem, or directly in Python integers), and
integrality is decided only from the exact polynomials.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .graphs import Graph
from .surds import Surd, as_surd

__all__ = [
    "adjacency_matrix",
    "laplacian_matrix",
    "signless_laplacian_matrix",
    "eigen_symmetric",
    "Spectrum",
    "NearDegeneracyWarning",
    "group_eigenvalues",
    "CharPoly",
    "char_poly_exact",
    "RootSplit",
    "integer_root_split",
    "EnergyReport",
    "energies",
    "GraphSpectra",
    "graph_spectra",
]

JACOBI_REL_TOL = 1e-12
CLUSTER_TOL = 1e-6
NEAR_GAP = 1e-3


# ----------------------------------------------------------------------
# matrices

def adjacency_matrix(g: Graph) -> np.ndarray:
    return g.adjacency.astype(np.int64)


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def signless_laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) + a


# ----------------------------------------------------------------------
# eigenvalues

def eigen_symmetric(m, *, rel_tol: float = JACOBI_REL_TOL, backend: str | None = None) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, ascending."""
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    if m.shape[0] == 0:
        return np.empty(0)
    eigs, converged, sweeps = kernels.jacobi_eigenvalues(m, rel_tol, 100, backend=backend)
    if not converged:
        raise RuntimeError(f"Jacobi did not converge after {sweeps} sweeps")
    return np.sort(eigs)


class NearDegeneracyWarning(UserWarning):
    """Two eigenvalue clusters are closer than expected for a clean spectrum."""


def _key(v) -> float:
    return float(v)


@dataclass(frozen=True)
class Spectrum:
    """Sorted multiset of eigenvalues as ``(value, multiplicity)`` pairs.

    Exact spectra hold :class:`Surd` values; numeric ones hold floats.
    """

    pairs: tuple[tuple[object, int], ...]
    exact: bool = False

    def __post_init__(self):
        keys = [_key(v) for v, _ in self.pairs]
        if any(k >= k2 for k, k2 in zip(keys, keys[1:])):
            raise ValueError("spectrum values must be strictly increasing")
        if any(mult < 1 for _, mult in self.pairs):
            raise ValueError("multiplicities must be positive")
        if self.exact and not all(isinstance(v, Surd) for v, _ in self.pairs):
            raise ValueError("exact spectra hold Surd values")

    @classmethod
    def from_multiset(cls, items) -> Spectrum:
        """Exact spectrum from ``(value, multiplicity)`` items; merges equal values, drops zero counts."""
        merged: dict[Surd, int] = {}
        for value, mult in items:
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult}")
            if mult:
                v = as_surd(value)
                merged[v] = merged.get(v, 0) + mult
        return cls(tuple(sorted(merged.items(), key=lambda kv: _key(kv[0]))), exact=True)

    @property
    def n(self) -> int:
        return sum(mult for _, mult in self.pairs)

    def values(self) -> np.ndarray:
        """Expanded float values, ascending."""
        return np.repeat([_key(v) for v, _ in self.pairs], [mult for _, mult in self.pairs])

    def trace(self) -> float:
        return float(sum(_key(v) * mult for v, mult in self.pairs))

    def moment2(self) -> float:
        return float(sum(_key(v) ** 2 * mult for v, mult in self.pairs))

    def is_integral(self) -> bool:
        """Exact spectra only: every value is an integer."""
        if not self.exact:
            raise ValueError("integrality of a numeric spectrum is not decided here")
        return all(v.is_integer() for v, _ in self.pairs)

    def deviation(self, other: Spectrum) -> float:
        """Max value deviation when multiplicity profiles match, else ``inf``."""
        if [m for _, m in self.pairs] != [m for _, m in other.pairs]:
            return math.inf
        if not self.pairs:
            return 0.0
        return max(abs(_key(a) - _key(b)) for (a, _), (b, _) in zip(self.pairs, other.pairs))

    def __str__(self) -> str:
        return "{" + ", ".join(f"[{v}]^{mult}" for v, mult in self.pairs) + "}"


def group_eigenvalues(values, tol: float = CLUSTER_TOL) -> Spectrum:
    """Cluster sorted values whose consecutive gaps are below ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    vals = np.sort(np.asarray(values, dtype=np.float64))
    if vals.size == 0:
        return Spectrum(())
    cuts = np.nonzero(np.diff(vals) >= tol)[0] + 1
    clusters = np.split(vals, cuts)
    means = [float(c.mean()) for c in clusters]
    for lo, hi in zip(means, means[1:]):
        if hi - lo <= NEAR_GAP:
            warnings.warn(f"eigenvalue clusters {lo!r} and {hi!r} are within {NEAR_GAP}",
                          NearDegeneracyWarning, stacklevel=2)
    return Spectrum(tuple((mu, len(c)) for mu, c in zip(means, clusters)))


# ----------------------------------------------------------------------
# characteristic polynomials

@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coefficients in descending degree order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("characteristic polynomials are monic")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __mul__(self, other: CharPoly) -> CharPoly:
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return CharPoly(tuple(out))

    def __pow__(self, k: int) -> CharPoly:
        result, base = CharPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @classmethod
    def linear(cls, root: int) -> CharPoly:
        return cls((1, -root))

    @classmethod
    def from_factors(cls, factors) -> CharPoly:
        """Product of ``(coeffs, power)`` factors, each factor monic with integer coefficients."""
        out = cls((1,))
        for coeffs, power in factors:
            if power < 0:
                raise ValueError(f"negative power {power}")
            if power:
                out = out * cls(tuple(coeffs)) ** power
        return out

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = d - k
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _fl_bigint(a: np.ndarray) -> list[int]:
    n = a.shape[0]
    a = a.astype(object)
    at = a.T.copy()
    coeffs = [1]
    mk = np.eye(n, dtype=np.int64).astype(object)
    for k in range(1, n + 1):
        if k > 1:
            mk = a.dot(mk)
            mk[np.diag_indices(n)] += coeffs[-1]
        # trace(A @ M_k) without forming the product
        tr = int((at * mk).sum())
        ck, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs.append(ck)
    return coeffs


def _fl_mod(a: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """Faddeev-LeVerrier over GF(p) for every p in ``primes`` at once.

    Arithmetic is in float64 so the products go through BLAS. Matrix entries
    are only reduced into (-p, 2p) by a floor quotient; callers keep
    4*n*p^2 below 2^53 so every intermediate stays an exact integer.
    Returns residues of shape (len(primes), n+1).
    """
    n = a.shape[0]
    pf = primes.astype(np.float64)
    ps, rs = pf[:, None, None], (1.0 / pf)[:, None, None]
    am = np.mod(a[None, :, :].astype(np.float64), ps)
    out = np.zeros((len(primes), n + 1), dtype=np.int64)
    out[:, 0] = 1
    mk = np.broadcast_to(np.eye(n), am.shape).copy()
    diag = np.arange(n)
    inv = np.array([[pow(k, -1, int(p)) for k in range(1, n + 1)] for p in primes], dtype=np.int64)
    for k in range(1, n + 1):
        # B = A M_k; trace(B) gives c_k and B + c_k I is M_{k+1}
        b = am @ mk
        b -= np.floor(b * rs) * ps
        tr = np.mod(b[:, diag, diag].sum(axis=1), pf).astype(np.int64)
        ck = (primes - tr) % primes * inv[:, k - 1] % primes
        out[:, k] = ck
        b[:, diag, diag] += ck[:, None]
        mk = b
    return out


def _primes_below(limit: int):
    c = limit - 1
    while c > 2:
        if c % 2 and all(c % f for f in range(3, math.isqrt(c) + 1, 2)):
            yield c
        c -= 1


_PRIMES: dict[int, list[int]] = {}


def _primes(bits: int, count: int) -> list[int]:
    have = _PRIMES.setdefault(bits, [])
    if len(have) < count:
        gen = _primes_below(1 << bits)
        have[:] = [next(gen) for _ in range(max(count, 2 * len(have), 16))]
    return have[:count]


def _fl_multimodular(a: np.ndarray) -> list[int] | None:
    n = a.shape[0]
    if n == 0:
        return [1]
    # entries lie in (-p, 3p) after the lazy reduction; keep sums of n such
    # products below 2^53 so float64 stays exact
    bits = (53 - n.bit_length() - 4) // 2
    if bits < 12 or n >= 1 << (bits - 1):
        return None
    rho = int(np.abs(a).sum(axis=1).max())
    # |c_k| <= C(n,k) rho^k, so every coefficient is below (1 + rho)^n
    need = 2 * (1 + rho) ** n + 1
    count = need.bit_length() // (bits - 1) + 1
    primes = _primes(bits, count)
    if math.prod(primes) < need:
        return None
    res = _fl_mod(a, np.array(primes, dtype=np.int64))
    coeffs = [0] * (n + 1)
    modulus = 1
    for p, row in zip(primes, res.tolist()):
        inv = pow(modulus, -1, p)
        for j, r in enumerate(row):
            coeffs[j] += modulus * ((r - coeffs[j]) * inv % p)
        modulus *= p
    half = modulus // 2
    return [c - modulus if c > half else c for c in coeffs]


def char_poly_exact(m, method: str = "auto") -> CharPoly:
    """Characteristic polynomial of an integer matrix by Faddeev-LeVerrier.

    ``method="bigint"`` runs the recurrence in Python integers; ``"modular"``
    runs it modulo word-sized primes and lifts by CRT under a Gershgorin
    coefficient bound. ``"auto"`` prefers the modular route.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.issubdtype(a.dtype, np.integer) and not np.array_equal(a, np.round(a)):
        raise ValueError("matrix must have integer entries")
    if method not in ("auto", "modular", "bigint"):
        raise ValueError(f"unknown method {method!r}")
    a = a.astype(np.int64)
    coeffs = None
    if method != "bigint":
        coeffs = _fl_multimodular(a)
        if coeffs is None and method == "modular":
            raise ValueError("matrix too large for the modular route")
    if coeffs is None:
        coeffs = _fl_bigint(a)
    return CharPoly(tuple(coeffs))


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest r >= 0 with r**k >= x, for x >= 0."""
    if x <= 1:
        return x
    r = int(round(x ** (1.0 / k))) if x.bit_length() < 1000 else 1 << (x.bit_length() // k + 1)
    while r ** k < x:
        r += 1
    while r > 0 and (r - 1) ** k >= x:
        r -= 1
    return r


def root_bound(p: CharPoly) -> int:
    """Integer upper bound on |root| (Fujiwara)."""
    n = p.degree
    if n == 0:
        return 0
    b = 0
    for k in range(1, n + 1):
        c = abs(p.coeffs[k])
        if k == n:
            c = -(-c // 2)
        b = max(b, _iroot_ceil(c, k))
    return 2 * b


def _deflate(coeffs: list[int], r: int) -> tuple[list[int], int]:
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + r * out[-1])
    return out[:-1], out[-1]


@dataclass(frozen=True)
class RootSplit:
    fully_split: bool
    roots: tuple[tuple[int, int], ...]
    remainder: CharPoly


def integer_root_split(p: CharPoly) -> RootSplit:
    """Peel off every integer root of ``p``; ``fully_split`` iff nothing is left."""
    coeffs = list(p.coeffs)
    roots: dict[int, int] = {}
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
        roots[0] = roots.get(0, 0) + 1
    if len(coeffs) > 1:
        bound = root_bound(CharPoly(tuple(coeffs)))
        for r in sorted(range(-bound, bound + 1), key=abs):
            if len(coeffs) == 1:
                break
            if r == 0 or coeffs[-1] % r:
                continue
            while len(coeffs) > 1:
                q, rem = _deflate(coeffs, r)
                if rem:
                    break
                coeffs = q
                roots[r] = roots.get(r, 0) + 1
    return RootSplit(len(coeffs) == 1, tuple(sorted(roots.items())), CharPoly(tuple(coeffs)))


# ----------------------------------------------------------------------
# energies

@dataclass(frozen=True)
class EnergyReport:
    E: object
    LE: object
    SE: object
    delta: object
    n_vertices: int
    n_edges: int

    def as_floats(self) -> tuple[float, float, float]:
        return float(self.E), float(self.LE), float(self.SE)


def _abs_sum(spec: Spectrum, shift):
    if spec.exact:
        total = as_surd(0)
        for v, mult in spec.pairs:
            total = total + abs(v - shift) * mult
        return total
    return float(sum(abs(v - float(shift)) * mult for v, mult in spec.pairs))


def energies(spec_a: Spectrum, spec_l: Spectrum, spec_q: Spectrum, n: int, e: int) -> EnergyReport:
    """E, LE and SE; exact when all three spectra are exact."""
    for name, s in (("A", spec_a), ("L", spec_l), ("Q", spec_q)):
        if s.n != n:
            raise ValueError(f"{name}-spectrum has {s.n} eigenvalues, expected {n}")
    if n < 1:
        raise ValueError("empty graph")
    delta = Fraction(2 * e, n)
    return EnergyReport(
        E=_abs_sum(spec_a, 0),
        LE=_abs_sum(spec_l, delta),
        SE=_abs_sum(spec_q, delta),
        delta=delta,
        n_vertices=n,
        n_edges=e,
    )


@dataclass(frozen=True)
class GraphSpectra:
    A: Spectrum
    L: Spectrum
    Q: Spectrum
    energy: EnergyReport


def graph_spectra(g: Graph, tol: float = CLUSTER_TOL, backend: str | None = None) -> GraphSpectra:
    """Numeric A/L/Q spectra and energies of ``g`` from the Jacobi solver."""
    specs = [
        group_eigenvalues(eigen_symmetric(build(g), backend=backend), tol)
        for build in (adjacency_matrix, laplacian_matrix, signless_laplacian_matrix)
    ]
    return GraphSpectra(*specs, energies(*specs, g.n_vertices, g.n_edges))
