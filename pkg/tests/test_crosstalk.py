import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from oracles import chromatic_at_most, crosstalk_edges_bruteforce
from xtalk.crosstalk import (
    Coloring,
    active_subgraph,
    gen_crosstalk_graph,
    greedy_color,
    mesh_pattern_coloring,
    validate_coloring,
)
from xtalk.device import ConnectivityGraph, build_mesh, build_path
from xtalk.exceptions import InvalidArgument


def test_two_by_two_mesh_is_k4():
    xg = gen_crosstalk_graph(build_mesh(2, 2), 1)
    assert len(xg.couplers) == 4
    assert all(len(xg.adj[v]) == 3 for v in xg.nodes)
    assert greedy_color(xg).n_colors == 4


def test_path_distance_threshold():
    g = build_path(5)  # couplers (0,1) (1,2) (2,3) (3,4)
    x1 = gen_crosstalk_graph(g, 1)
    x2 = gen_crosstalk_graph(g, 2)
    assert 3 not in x1.adj[0]  # nearest endpoints 1 and 3 are two hops apart
    assert 2 in x1.adj[0]
    assert 3 in x2.adj[0]


def test_distance_must_be_positive():
    with pytest.raises(InvalidArgument):
        gen_crosstalk_graph(build_path(3), 0)


def test_vertex_lookup():
    xg = gen_crosstalk_graph(build_path(3), 1)
    assert xg.vertex_of((2, 1)) == 1
    with pytest.raises(InvalidArgument):
        xg.vertex_of((0, 2))


def test_matches_networkx_on_mesh():
    g = build_mesh(3, 4)
    for d in (1, 2, 3):
        couplers, edges = crosstalk_edges_bruteforce(g.n_qubits, g.edges, d)
        xg = gen_crosstalk_graph(g, d)
        assert list(xg.couplers) == couplers
        assert xg.edges == edges


@st.composite
def connected_graphs(draw, max_n=10):
    n = draw(st.integers(2, max_n))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}  # random spanning tree
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    return ConnectivityGraph(n, tuple(edges))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(), st.integers(1, 3))
def test_crosstalk_graph_property(g, d):
    couplers, edges = crosstalk_edges_bruteforce(g.n_qubits, g.edges, d)
    xg = gen_crosstalk_graph(g, d)
    assert xg.edges == edges
    # symmetric, irreflexive
    for v in xg.nodes:
        assert v not in xg.adj[v]
        assert all(v in xg.adj[w] for w in xg.adj[v])


@settings(max_examples=60, deadline=None)
@given(connected_graphs())
def test_line_graph_is_subgraph_at_distance_one(g):
    xg = gen_crosstalk_graph(g, 1)
    lg = nx.line_graph(nx.Graph(list(g.edges)))
    idx = {c: i for i, c in enumerate(xg.couplers)}
    for a, b in lg.edges:
        i, j = idx[tuple(sorted(a))], idx[tuple(sorted(b))]
        assert (min(i, j), max(i, j)) in xg.edges


def test_welsh_powell_cycle_graphs():
    c5 = {i: frozenset({(i - 1) % 5, (i + 1) % 5}) for i in range(5)}
    assert greedy_color(c5).n_colors == 3
    c6 = {i: frozenset({(i - 1) % 6, (i + 1) % 6}) for i in range(6)}
    assert greedy_color(c6).n_colors == 2


def test_welsh_powell_k4_and_star_order():
    k4 = {i: frozenset(set(range(4)) - {i}) for i in range(4)}
    col = greedy_color(k4)
    assert col.n_colors == 4 and col.color_of == {0: 0, 1: 1, 2: 2, 3: 3}
    star = {0: frozenset({1, 2, 3}), 1: frozenset({0}), 2: frozenset({0}), 3: frozenset({0})}
    col = greedy_color(star)
    assert col.color_of == {0: 0, 1: 1, 2: 1, 3: 1}
    assert col.multiplicity == {0: 1, 1: 3}


def test_welsh_powell_ties_by_vertex_id():
    # equal degrees: vertex 0 is coloured first and receives colour 0
    path = {0: frozenset({1}), 1: frozenset({0, 2}), 2: frozenset({1, 3}), 3: frozenset({2})}
    assert greedy_color(path).color_of == {1: 0, 2: 1, 0: 1, 3: 0}


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=12), st.integers(1, 2))
def test_greedy_colouring_is_proper_and_bounded(g, d):
    xg = gen_crosstalk_graph(g, d)
    col = greedy_color(xg)
    assert validate_coloring(xg, col)
    max_deg = max((len(a) for a in xg.adj.values()), default=0)
    assert col.n_colors <= max_deg + 1
    assert sum(col.multiplicity.values()) == len(xg.couplers)


def test_validate_coloring_detects_conflicts():
    k3 = {0: frozenset({1, 2}), 1: frozenset({0, 2}), 2: frozenset({0, 1})}
    assert not validate_coloring(k3, {0: 0, 1: 0, 2: 1})
    with pytest.raises(InvalidArgument):
        validate_coloring(k3, {0: 0, 1: 1})


def test_active_subgraph_keeps_ids():
    xg = gen_crosstalk_graph(build_path(5), 1)
    sub = active_subgraph(xg, [(0, 1), (3, 4)])
    assert sub.nodes == (0, 3)
    assert sub.adj[0] == frozenset() and sub.adj[3] == frozenset()
    assert greedy_color(sub).n_colors == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_mesh_pattern_is_proper_eight_colouring(n):
    xg = gen_crosstalk_graph(build_mesh(n, n), 1)
    col = mesh_pattern_coloring(n, n)
    assert col.n_colors == 8
    assert validate_coloring(xg, col)


def test_three_by_three_needs_eight_colours():
    adj = gen_crosstalk_graph(build_mesh(3, 3), 1).adjacency_dict()
    assert not chromatic_at_most(adj, 7)
    assert chromatic_at_most(adj, 8)


def test_coloring_from_mapping():
    col = Coloring.from_mapping({5: 1, 6: 1, 7: 0})
    assert col.n_colors == 2 and col.multiplicity == {0: 1, 1: 2}
