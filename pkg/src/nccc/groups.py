"""Concrete finite groups from the presented families, as Cayley tables.

Each family element is stored in the normal form ``x^i y^j`` and multiplied
with a reduction rule derived from the presentation. Nothing about those
rules is trusted: :func:`build_group` validates closure, identity, inverses,
the Latin-square property, associativity and the expected order before
returning.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import kernels

__all__ = [
    "FamilySpec",
    "FiniteGroup",
    "ConjugacyPartition",
    "QuotientKind",
    "GroupValidationError",
    "build_group",
    "validate_group",
    "center",
    "commutes",
    "conjugacy_classes",
    "central_quotient_kind",
    "quotient_table",
    "recognize_zpxzp",
    "recognize_dihedral",
    "load_table_json",
    "is_prime",
]

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 1_000_000

FAMILY_KINDS = ("dihedral", "dicyclic", "semidihedral", "umn", "u6m", "v8m", "heisenberg", "table")


class GroupValidationError(ValueError):
    """A multiplication table failed the group axioms or the expected order."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % f for f in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class FamilySpec:
    """One member of a group family, with bounds checked on construction.

    ``table`` is only used by the ``"table"`` kind and holds the decoded JSON
    document ``{"order", "table", "labels"}``.
    """

    kind: str
    m: int | None = None
    n: int | None = None
    p: int | None = None
    table: dict | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        k = self.kind
        if k not in FAMILY_KINDS:
            raise ValueError(f"unknown family {k!r}")
        need = {
            "dihedral": ("m", 3),
            "dicyclic": ("m", 2),
            "semidihedral": ("m", 2),
            "u6m": ("m", 2),
            "v8m": ("m", 2),
        }
        if k in need:
            name, low = need[k]
            value = getattr(self, name)
            if not isinstance(value, int) or value < low:
                raise ValueError(f"{k} requires {name} >= {low}, got {value!r}")
        elif k == "umn":
            if not isinstance(self.n, int) or self.n < 2:
                raise ValueError(f"umn requires n >= 2, got {self.n!r}")
            if not isinstance(self.m, int) or self.m < 3:
                raise ValueError(f"umn requires m >= 3, got {self.m!r}")
        elif k == "heisenberg":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"heisenberg requires a prime p, got {self.p!r}")
        elif k == "table" and self.table is None:
            raise ValueError("table family requires a table document")

    # convenience constructors
    @classmethod
    def dihedral(cls, m):
        return cls("dihedral", m=m)

    @classmethod
    def dicyclic(cls, m):
        return cls("dicyclic", m=m)

    @classmethod
    def semidihedral(cls, m):
        return cls("semidihedral", m=m)

    @classmethod
    def umn(cls, n, m):
        return cls("umn", m=m, n=n)

    @classmethod
    def u6m(cls, m):
        return cls("u6m", m=m)

    @classmethod
    def v8m(cls, m):
        return cls("v8m", m=m)

    @classmethod
    def heisenberg(cls, p):
        return cls("heisenberg", p=p)

    @classmethod
    def explicit(cls, document: dict):
        return cls("table", table=document)

    @property
    def expected_order(self) -> int | None:
        k, m = self.kind, self.m
        return {
            "dihedral": lambda: 2 * m,
            "dicyclic": lambda: 4 * m,
            "semidihedral": lambda: 8 * m,
            "umn": lambda: 2 * self.n * m,
            "u6m": lambda: 6 * m,
            "v8m": lambda: 8 * m,
            "heisenberg": lambda: self.p ** 3,
            "table": lambda: self.table.get("order"),
        }[k]()

    @property
    def name(self) -> str:
        """Conventional name: D6, T8, SD16, U(2,3), U12, V16, Heis(3)."""
        k = self.kind
        if k == "dihedral":
            return f"D{2 * self.m}"
        if k == "dicyclic":
            return f"T{4 * self.m}"
        if k == "semidihedral":
            return f"SD{8 * self.m}"
        if k == "umn":
            return f"U({self.n},{self.m})"
        if k == "u6m":
            return f"U{6 * self.m}"
        if k == "v8m":
            return f"V{8 * self.m}"
        if k == "heisenberg":
            return f"Heis({self.p})"
        return str(self.table.get("name", f"table[{self.table.get('order')}]"))

    @property
    def params(self) -> dict:
        return {k: v for k, v in (("m", self.m), ("n", self.n), ("p", self.p)) if v is not None}


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Cayley table on element indices ``0..order-1``; index 0 is the identity."""

    order: int
    op: np.ndarray
    inv: np.ndarray
    labels: tuple[str, ...]
    name: str = "G"

    def mul(self, a: int, b: int) -> int:
        return int(self.op[a, b])

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        return self.op == self.op.T

    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.op[x, g])
            k += 1
        return k

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class ConjugacyPartition:
    classes: tuple[tuple[int, ...], ...]
    central_classes: tuple[int, ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def noncentral(self) -> tuple[int, ...]:
        """Indices (into ``classes``) of classes outside the center."""
        central = set(self.central_classes)
        return tuple(i for i in range(len(self.classes)) if i not in central)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


@dataclass(frozen=True)
class QuotientKind:
    kind: str  # "ZpxZp", "D2m" or "Other"
    param: int | None = None

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}({self.param})"


# ----------------------------------------------------------------------
# family multiplication rules on exponent pairs (i, j)

def _xy_group(spec_name, ni, nj, rule, expected):
    """Tabulate the normal forms x^i y^j, ordered lexicographically in (i, j)."""
    elems = [(i, j) for i in range(ni) for j in range(nj)]
    index = {e: k for k, e in enumerate(elems)}
    order = len(elems)
    op = np.empty((order, order), dtype=np.intc)
    for a, (i, j) in enumerate(elems):
        for b, (k, l) in enumerate(elems):
            ri, rj = rule(i, j, k, l)
            op[a, b] = index[(ri % ni, rj % nj)]
    labels = tuple(_xy_label(i, j) for i, j in elems)
    return _finish(op, labels, spec_name, expected)


def _xy_label(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return " ".join(parts) or "1"


def _dihedral(m):
    # y x = x^-1 y
    return lambda i, j, k, l: (i + (-1) ** j * k, j + l)


def _dicyclic(m):
    # y x = x^-1 y, y^2 = x^m
    def rule(i, j, k, l):
        e = i + (-1) ** j * k
        if j + l == 2:
            return e + m, 0
        return e, j + l
    return rule


def _semidihedral(m):
    # y x y = x^(2m-1), y^2 = 1
    def rule(i, j, k, l):
        return i + k * (2 * m - 1) ** j, j + l
    return rule


def _umn(n, m):
    # x^-1 y x = y^-1  =>  y^j x^k = x^k y^(j (-1)^k)
    return lambda i, j, k, l: (i + k, j * (-1) ** k + l)


def _v8m(m):
    # y x = x^-1 y^-1, y^-1 x = x^-1 y  =>  y^j x^k = x^((-1)^j k) y^(j (-1)^(jk))
    return lambda i, j, k, l: (i + (-1) ** j * k, j * (-1) ** (j * k) + l)


def _heisenberg(p: int, name: str) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p, element (a, b, c) = [[1,a,c],[0,1,b],[0,0,1]]."""
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    index = {e: k for k, e in enumerate(elems)}
    order = len(elems)
    op = np.empty((order, order), dtype=np.intc)
    for u, (a, b, c) in enumerate(elems):
        for v, (a2, b2, c2) in enumerate(elems):
            op[u, v] = index[((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)]
    labels = tuple(f"[1 {a} {c}; 0 1 {b}; 0 0 1]" for a, b, c in elems)
    return _finish(op, labels, name, p ** 3)


def _finish(op, labels, name, expected) -> FiniteGroup:
    op.setflags(write=False)
    inv = _inverses(op)
    group = FiniteGroup(order=op.shape[0], op=op, inv=inv, labels=tuple(labels), name=name)
    validate_group(group, expected_order=expected)
    return group


def _inverses(op: np.ndarray) -> np.ndarray:
    n = op.shape[0]
    inv = np.full(n, -1, dtype=np.intc)
    rows, cols = np.nonzero(op == 0)
    inv[rows] = cols
    if n and (inv < 0).any():
        raise GroupValidationError("some element has no inverse")
    inv.setflags(write=False)
    return inv


def validate_group(group: FiniteGroup, expected_order: int | None = None, seed: int = 0) -> None:
    """Raise :class:`GroupValidationError` unless ``group`` is a group with identity 0."""
    op, n = group.op, group.order
    if expected_order is not None and n != expected_order:
        raise GroupValidationError(f"order {n}, expected {expected_order}")
    if op.shape != (n, n):
        raise GroupValidationError(f"table shape {op.shape} for order {n}")
    if len(group.labels) != n:
        raise GroupValidationError("one label per element required")
    if n == 0:
        raise GroupValidationError("empty group")
    if op.min() < 0 or op.max() >= n:
        raise GroupValidationError("table entries outside 0..order-1")
    ident = np.arange(n)
    if not (np.array_equal(op[0], ident) and np.array_equal(op[:, 0], ident)):
        raise GroupValidationError("element 0 is not the identity")
    srt = np.sort(op, axis=1)
    if not (srt == ident).all() or not (np.sort(op, axis=0) == ident[:, None]).all():
        raise GroupValidationError("table is not a Latin square")
    inv = group.inv
    if not ((op[ident, inv] == 0).all() and (op[inv, ident] == 0).all()):
        raise GroupValidationError("inverse table inconsistent")
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        bad = kernels.associativity_violation(op)
    else:
        bad = _sampled_associativity(op, SAMPLED_TRIPLES, seed)
    if bad is not None:
        raise GroupValidationError(f"associativity fails at {bad}")


def _sampled_associativity(op, count, seed):
    rng = np.random.default_rng(seed)
    n = op.shape[0]
    for start in range(0, count, 100_000):
        a, b, c = rng.integers(0, n, size=(3, min(100_000, count - start)))
        bad = np.nonzero(op[op[a, b], c] != op[a, op[b, c]])[0]
        if len(bad):
            k = bad[0]
            return int(a[k]), int(b[k]), int(c[k])
    return None


def build_group(spec: FamilySpec) -> FiniteGroup:
    """Tabulate and validate the group described by ``spec``."""
    k, m, name = spec.kind, spec.m, spec.name
    if k == "dihedral":
        return _xy_group(name, m, 2, _dihedral(m), 2 * m)
    if k == "dicyclic":
        return _xy_group(name, 2 * m, 2, _dicyclic(m), 4 * m)
    if k == "semidihedral":
        return _xy_group(name, 4 * m, 2, _semidihedral(m), 8 * m)
    if k == "umn":
        return _xy_group(name, 2 * spec.n, m, _umn(spec.n, m), 2 * spec.n * m)
    if k == "u6m":
        return _xy_group(name, 2 * m, 3, _umn(m, 3), 6 * m)
    if k == "v8m":
        return _xy_group(name, 2 * m, 4, _v8m(m), 8 * m)
    if k == "heisenberg":
        return _heisenberg(spec.p, name)
    return _from_document(spec.table, name)


def _from_document(doc: dict, name: str) -> FiniteGroup:
    try:
        order = int(doc["order"])
        table = np.array(doc["table"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupValidationError(f"malformed table document: {exc}") from None
    if table.shape != (order, order):
        raise GroupValidationError(f"table shape {table.shape} does not match order {order}")
    if table.size and (table.min() < 0 or table.max() >= order):
        raise GroupValidationError("table entries outside 0..order-1")
    labels = doc.get("labels") or [str(i) for i in range(order)]
    op = table.astype(np.intc)
    ident = np.arange(order)
    if not (np.array_equal(op[0], ident) and np.array_equal(op[:, 0], ident)):
        raise GroupValidationError("element 0 is not the identity")
    return _finish(op, [str(s) for s in labels], name, order)


def load_table_json(path: str | Path) -> FamilySpec:
    """Read ``{"order": n, "table": [[...]], "labels": [...]}`` into a table spec."""
    doc = json.loads(Path(path).read_text())
    doc.setdefault("name", Path(path).stem)
    spec = FamilySpec.explicit(doc)
    build_group(spec)  # validate eagerly
    return spec


# ----------------------------------------------------------------------
# center, commutation, conjugacy

def commutes(group: FiniteGroup, a: int, b: int) -> bool:
    return bool(group.op[a, b] == group.op[b, a])


def center(group: FiniteGroup) -> frozenset[int]:
    return frozenset(int(g) for g in np.nonzero(group.commute_matrix.all(axis=1))[0])


def conjugacy_classes(group: FiniteGroup) -> ConjugacyPartition:
    """Orbits of ``g -> h g h^-1``, ordered by their smallest element."""
    op, inv = group.op, group.inv
    seen = np.zeros(group.order, dtype=bool)
    classes = []
    for g in range(group.order):
        if seen[g]:
            continue
        orbit = np.unique(op[op[:, g], inv])
        seen[orbit] = True
        classes.append(tuple(int(x) for x in orbit))
    z = center(group)
    central = tuple(i for i, c in enumerate(classes) if len(c) == 1 and c[0] in z)
    return ConjugacyPartition(classes=tuple(classes), central_classes=central)


# ----------------------------------------------------------------------
# central quotient recognition

def quotient_table(group: FiniteGroup, normal: frozenset[int]) -> np.ndarray:
    """Multiplication table of ``G/N`` on cosets numbered by first appearance."""
    coset = np.full(group.order, -1, dtype=np.intc)
    nlist = np.array(sorted(normal), dtype=np.intc)
    reps = []
    for g in range(group.order):
        if coset[g] < 0:
            coset[group.op[g, nlist]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    return coset[group.op[np.ix_(reps, reps)]]


def _orders(table: np.ndarray) -> np.ndarray:
    q = table.shape[0]
    out = np.ones(q, dtype=int)
    for g in range(1, q):
        k, x = 1, g
        while x != 0:
            x = table[x, g]
            k += 1
        out[g] = k
    return out


def recognize_zpxzp(table: np.ndarray) -> int | None:
    """``p`` if the table is Z_p x Z_p for a prime ``p``, else ``None``."""
    q = table.shape[0]
    p = math.isqrt(q)
    if p * p != q or not is_prime(p):
        return None
    if not (table == table.T).all():
        return None
    orders = _orders(table)
    return p if (orders[1:] == p).all() else None


def recognize_dihedral(table: np.ndarray) -> int | None:
    """``m`` if the table is dihedral of order ``2m`` (``m >= 2``), else ``None``.

    Looks for an element ``r`` of order ``m`` and an involution ``s`` outside
    ``<r>`` with ``s r s^-1 = r^-1``.
    """
    q = table.shape[0]
    if q < 4 or q % 2:
        return None
    m = q // 2
    orders = _orders(table)
    inv = np.argmax(table == 0, axis=1)
    for r in np.nonzero(orders == m)[0]:
        cyc = {0}
        x = r
        while x != 0:
            cyc.add(int(x))
            x = table[x, r]
        r_inv = inv[r]
        for s in range(q):
            if s in cyc or orders[s] != 2:
                continue
            if table[table[s, r], inv[s]] == r_inv:
                return m
    return None


def central_quotient_kind(group: FiniteGroup) -> QuotientKind:
    """Recognize ``G/Z(G)`` as Z_p x Z_p or dihedral; "Other" otherwise."""
    if group.is_abelian():
        raise ValueError(f"{group.name} is abelian")
    table = quotient_table(group, center(group))
    p = recognize_zpxzp(table)
    if p is not None:
        return QuotientKind("ZpxZp", p)
    m = recognize_dihedral(table)
    if m is not None:
        return QuotientKind("D2m", m)
    return QuotientKind("Other")
