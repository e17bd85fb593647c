import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nccc.graphs import (
    Graph,
    MultipartiteShape,
    build_ccc,
    build_nccc,
    complement,
    detect_multipartite,
    from_adjacency_json,
    from_edge_list,
    multipartite_graph,
    to_adjacency_json,
    to_edge_list,
)
from nccc.groups import FamilySpec, build_group

SHAPES = [
    (FamilySpec.dihedral(3), ((2, 1),)),
    (FamilySpec.dicyclic(2), ((3, 1),)),
    (FamilySpec.v8m(2), ((3, 2),)),
    (FamilySpec.heisenberg(3), ((4, 2),)),
    # T16 has |Z| = 2, so the classes split as K_{2·1, 1·3}
    (FamilySpec.dicyclic(4), ((2, 1), (1, 3))),
    (FamilySpec.v8m(3), ((2, 1), (1, 5))),
    (FamilySpec.semidihedral(3), ((2, 4),)),
]


@pytest.mark.parametrize("spec,pairs", SHAPES, ids=[s[0].name for s in SHAPES])
def test_shapes_and_duality(spec, pairs):
    g = build_group(spec)
    gamma, ccc = build_nccc(g), build_ccc(g)
    assert gamma.same_as(complement(ccc))
    shape = detect_multipartite(gamma)
    assert shape == MultipartiteShape.of(*pairs)
    assert gamma.n_vertices == shape.n_vertices
    assert gamma.n_edges == shape.n_edges


def test_abelian_has_no_graph():
    z6 = {"order": 6, "table": [[(i + j) % 6 for j in range(6)] for i in range(6)]}
    with pytest.raises(ValueError):
        build_nccc(build_group(FamilySpec.explicit(z6)))


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.array([[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.array([[0, 2], [2, 0]]))
    with pytest.raises(ValueError):
        Graph(np.zeros((2, 3)))


def test_shape_canonical_and_str():
    s = MultipartiteShape.of((1, 3), (2, 1))
    assert s.parts == ((2, 1), (1, 3))
    assert str(s) == "K_{2·1, 1·3}"
    assert s.n_vertices == 5 and s.n_edges == (25 - 2 - 9) // 2
    assert MultipartiteShape.from_sizes([3, 1, 1]) == s


def test_not_multipartite():
    path = Graph(np.array([[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]]))
    assert detect_multipartite(path) is None


@given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
@settings(max_examples=60, deadline=None)
def test_multipartite_round_trip(sizes):
    shape = MultipartiteShape.from_sizes(sizes)
    g = multipartite_graph(shape)
    assert detect_multipartite(g) == shape
    assert g.n_edges == shape.n_edges


def _random_graph(seed, n):
    rng = np.random.default_rng(seed)
    a = np.triu(rng.integers(0, 2, (n, n)), 1)
    return Graph(a + a.T)


@given(st.integers(0, 10_000), st.integers(1, 12))
@settings(max_examples=50, deadline=None)
def test_export_round_trips(seed, n):
    g = _random_graph(seed, n)
    doc = json.loads(to_adjacency_json(g))
    assert doc["schema"] == 1 and doc["n_vertices"] == n
    back = from_adjacency_json(to_adjacency_json(g))
    assert back.same_as(g) and back.vertex_labels == g.vertex_labels
    assert from_edge_list(to_edge_list(g), n).same_as(g)


def test_edge_list_format():
    g = build_nccc(build_group(FamilySpec.dicyclic(2)))
    assert to_edge_list(g) == "0 1\n0 2\n1 2\n"


def test_from_edge_list_errors():
    with pytest.raises(ValueError):
        from_edge_list("0 5\n", 3)
    with pytest.raises(ValueError):
        from_edge_list("0\n", 3)
