"""Non-commuting and commuting conjugacy class graphs.

Vertices are the non-central conjugacy classes in partition order. Two
classes are adjacent in the NCCC-graph when no element of one commutes with
any element of the other; the CCC-graph uses the existential rule instead.
Both rules scan every pair of class members.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from . import kernels
from .groups import ConjugacyPartition, FiniteGroup, conjugacy_classes

__all__ = [
    "Graph",
    "MultipartiteShape",
    "build_nccc",
    "build_ccc",
    "complement",
    "detect_multipartite",
    "multipartite_graph",
    "to_adjacency_json",
    "from_adjacency_json",
    "to_edge_list",
    "from_edge_list",
]


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray
    vertex_labels: tuple[str, ...] = ()

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=np.uint8)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if (adj != adj.T).any():
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("loops are not allowed")
        if ((adj != 0) & (adj != 1)).any():
            raise ValueError("adjacency must be 0/1")
        adj = adj.copy()
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        labels = tuple(self.vertex_labels) or tuple(str(i) for i in range(adj.shape[0]))
        if len(labels) != adj.shape[0]:
            raise ValueError("one label per vertex required")
        object.__setattr__(self, "vertex_labels", labels)

    @property
    def n_vertices(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(np.int64)

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def same_as(self, other: Graph) -> bool:
        return np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self) -> str:
        return f"Graph(n={self.n_vertices}, e={self.n_edges})"


@dataclass(frozen=True)
class MultipartiteShape:
    """``K_{a1·p1, a2·p2, ...}``: ``a_i`` parts of size ``p_i``, sizes ascending and distinct."""

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        sizes = [p for _, p in self.parts]
        if any(a < 1 or p < 1 for a, p in self.parts):
            raise ValueError("part counts and sizes must be positive")
        if sizes != sorted(set(sizes)):
            raise ValueError("part sizes must be distinct and ascending")

    @classmethod
    def from_sizes(cls, sizes) -> MultipartiteShape:
        counts = Counter(int(s) for s in sizes)
        return cls(tuple((counts[s], s) for s in sorted(counts)))

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> MultipartiteShape:
        """Canonical shape from possibly unsorted or repeated ``(count, size)`` pairs."""
        return cls.from_sizes([p for a, p in pairs for _ in range(a)])

    @property
    def n_vertices(self) -> int:
        return sum(a * p for a, p in self.parts)

    @property
    def n_edges(self) -> int:
        n = self.n_vertices
        return (n * n - sum(a * p * p for a, p in self.parts)) // 2

    def __str__(self) -> str:
        return "K_{" + ", ".join(f"{a}·{p}" for a, p in self.parts) + "}"


def _noncentral_members(group: FiniteGroup, partition: ConjugacyPartition):
    idx = partition.noncentral
    if not idx:
        raise ValueError(f"{group.name} is abelian: the graph has no vertices")
    members = np.concatenate([np.array(partition.classes[i], dtype=np.intc) for i in idx])
    offsets = np.cumsum([0] + [len(partition.classes[i]) for i in idx]).astype(np.intc)
    labels = tuple(group.labels[partition.classes[i][0]] for i in idx)
    return members, offsets, labels


def build_nccc(group: FiniteGroup, partition: ConjugacyPartition | None = None) -> Graph:
    """NCCC-graph: classes adjacent iff no pair of their elements commutes."""
    partition = partition or conjugacy_classes(group)
    members, offsets, labels = _noncentral_members(group, partition)
    adj = kernels.class_pairs_all_noncommuting(group.op, members, offsets)
    return Graph(adj, labels)


def build_ccc(group: FiniteGroup, partition: ConjugacyPartition | None = None) -> Graph:
    """CCC-graph: classes adjacent iff some pair of their elements commutes."""
    partition = partition or conjugacy_classes(group)
    members, offsets, labels = _noncentral_members(group, partition)
    adj = kernels.class_pairs_any_commuting(group.op, members, offsets)
    return Graph(adj, labels)


def complement(g: Graph) -> Graph:
    n = g.n_vertices
    adj = 1 - g.adjacency - np.eye(n, dtype=np.uint8)
    return Graph(adj, g.vertex_labels)


def detect_multipartite(g: Graph) -> MultipartiteShape | None:
    """Shape of ``g`` when its complement is a disjoint union of cliques, else ``None``."""
    if g.n_vertices == 0:
        return None
    comp = complement(g).adjacency
    _, labels = connected_components(comp, directed=False)
    sizes = np.bincount(labels)
    for c, size in enumerate(sizes):
        members = np.nonzero(labels == c)[0]
        block = comp[np.ix_(members, members)]
        if block.sum() != size * (size - 1):
            return None
    return MultipartiteShape.from_sizes(sizes)


def multipartite_graph(shape: MultipartiteShape) -> Graph:
    """The literal complete multipartite graph with the given shape."""
    part_of = np.repeat(np.arange(sum(a for a, _ in shape.parts)),
                        [p for a, p in shape.parts for _ in range(a)])
    adj = (part_of[:, None] != part_of[None, :]).astype(np.uint8)
    return Graph(adj)


# ----------------------------------------------------------------------
# export

def to_adjacency_json(g: Graph) -> str:
    doc = {
        "schema": 1,
        "n_vertices": g.n_vertices,
        "vertex_labels": list(g.vertex_labels),
        "adjacency": [[int(v) for v in np.nonzero(row)[0]] for row in g.adjacency],
    }
    return json.dumps(doc, indent=2)


def from_adjacency_json(text: str) -> Graph:
    doc = json.loads(text)
    n = int(doc["n_vertices"])
    adj = np.zeros((n, n), dtype=np.uint8)
    for u, nbrs in enumerate(doc["adjacency"]):
        adj[u, nbrs] = 1
    return Graph(adj, tuple(doc.get("vertex_labels") or ()))


def to_edge_list(g: Graph) -> str:
    """One ``"u v"`` line per edge, ``u < v``, 0-based."""
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def from_edge_list(text: str, n_vertices: int) -> Graph:
    adj = np.zeros((n_vertices, n_vertices), dtype=np.uint8)
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = map(int, parts)
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise ValueError(f"line {lineno}: vertex out of range 0..{n_vertices - 1}")
        adj[u, v] = adj[v, u] = 1
    return Graph(adj)
