import pytest
from hypothesis import given, settings

from broadcastir import FamilySpec, GraphInputError, build_graph, centers, diameter, generate, induced_subgraph, radius
from broadcastir.graph import UNREACHABLE
from oracles import floyd_warshall
from strategies import graphs


def fam(text):
    return generate(FamilySpec.parse(text))


def test_path_metric():
    g = build_graph([(0, 1), (1, 2)], 3)
    assert g.ecc == (2, 1, 2)
    assert diameter(g) == 2 and radius(g) == 1 and centers(g) == [1]


def test_single_vertex():
    g = build_graph([], 1)
    assert g.ecc == (0,)
    assert g.isolated_vertices() == [0]


@pytest.mark.parametrize("edges,n", [([(0, 0)], 1), ([(0, 3)], 3), ([(-1, 0)], 2), ([], 0)])
def test_bad_edges_rejected(edges, n):
    with pytest.raises(GraphInputError):
        build_graph(edges, n)


def test_duplicate_edges_collapse():
    g = build_graph([(0, 1), (1, 0), (0, 1)], 2)
    assert g.edges == ((0, 1),)


def test_spider_layout():
    g = fam("spider:3")
    assert g.n == 7
    assert set(g.adj[0]) == {1, 2, 3}
    assert [g.adj[leaf] for leaf in (4, 5, 6)] == [(1,), (2,), (3,)]
    assert diameter(g) == 4


def test_tworcliques_edge_count():
    g = fam("tworcliques:3")
    assert g.n == 8 and len(g.edges) == 15
    assert g.degree(0) == 3 and g.degree(4) == 3


def test_grid_metric():
    g = fam("grid:3,3")
    assert (g.n, len(g.edges), radius(g), diameter(g)) == (9, 12, 2, 4)
    assert FamilySpec.parse("grid:3x3") == FamilySpec.parse("grid:3,3")


@pytest.mark.parametrize("text", ["path:0", "cycle:2", "spider:1", "tworcliques:2", "grid:3", "blob:3", "path:x"])
def test_family_validation(text):
    with pytest.raises(GraphInputError):
        FamilySpec.parse(text)


def test_radius_diameter_examples():
    assert (radius(fam("path:5")), diameter(fam("path:5"))) == (2, 4)
    assert (radius(fam("complete:6")), diameter(fam("complete:6"))) == (1, 1)
    assert (radius(fam("spider:4")), diameter(fam("spider:4"))) == (2, 4)


def test_induced_subgraph():
    p4 = fam("path:4")
    h, m = induced_subgraph(p4, [0, 1])
    assert (h.n, h.edges) == (2, ((0, 1),))
    c5 = fam("cycle:5")
    h, m = induced_subgraph(c5, [0, 1, 2])
    assert h.edges == ((0, 1), (1, 2)) and h.ecc == (2, 1, 2)
    h, m = induced_subgraph(c5, range(5))
    assert h.edges == c5.edges and m == {v: v for v in range(5)}


def test_induced_subgraph_uses_own_distances():
    # removing the middle of P3 disconnects it
    h, _ = induced_subgraph(fam("path:3"), [0, 2])
    assert h.dist[0][1] == UNREACHABLE and len(h.components) == 2


def test_graph_is_immutable():
    g = fam("path:3")
    with pytest.raises(AttributeError):
        g.n = 4


def test_balls_and_spheres():
    g = fam("path:5")
    assert g.ball(0, 2) == 0b00111
    assert g.sphere(2, 2) == 0b10001
    assert g.cover(1, 0) == 0
    assert g.ball(0, 99) == g.full_mask


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8))
def test_bfs_matches_floyd_warshall(g):
    ref = floyd_warshall(g.n, g.edges)
    for u in range(g.n):
        for v in range(g.n):
            want = ref[u][v] if ref[u][v] != float("inf") else UNREACHABLE
            assert g.dist[u][v] == want


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8))
def test_components_partition(g):
    seen = sorted(v for c in g.components for v in c)
    assert seen == list(range(g.n))
    for ci, comp in enumerate(g.components):
        assert all(g.component_of[v] == ci for v in comp)
