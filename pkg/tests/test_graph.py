import pytest
from hypothesis import given, strategies as st

from purelab.errors import FormatError
from purelab.families import cycle, path
from purelab.graph import (
    Graph, bits, delete_vertex, format_graph, induced_subgraph, mask_of, parse_graph, parse_graphs, to_dot,
)

from conftest import graphs


def test_induced_subgraph_of_pentagon_is_path():
    h = induced_subgraph(cycle(5), {0, 1, 2})
    assert h == path(3)


def test_induced_subgraph_identity_and_empty():
    g = cycle(6).with_colours("bwbwbw")
    assert induced_subgraph(g, g.vertex_mask) == g
    e = induced_subgraph(g, 0)
    assert e.n == 0 and e.black == 0


def test_induced_subgraph_rejects_out_of_range():
    with pytest.raises(ValueError):
        induced_subgraph(cycle(4), {4})


def test_delete_vertex_examples():
    assert delete_vertex(cycle(5), 0) == path(4)
    assert delete_vertex(Graph.empty(1), 0).n == 0
    assert delete_vertex(path(2), 1) == Graph.empty(1)
    with pytest.raises(ValueError):
        delete_vertex(cycle(5), 5)


def test_colours_are_restricted():
    g = path(4).with_colours("bwwb")
    assert delete_vertex(g, 0).colours() == "wwb"


@given(graphs(max_n=9, coloured=True), st.data())
def test_induced_subgraph_composes(g, data):
    a = data.draw(st.integers(0, g.vertex_mask))
    b = data.draw(st.integers(0, g.vertex_mask)) & a
    # position of each vertex of b inside a
    inner = mask_of(i for i, v in enumerate(bits(a)) if b >> v & 1)
    assert induced_subgraph(induced_subgraph(g, a), inner) == induced_subgraph(g, b)


@given(graphs(max_n=10, coloured=True))
def test_text_round_trip(g):
    g.validate()
    assert parse_graph(format_graph(g)) == g


def test_uncoloured_round_trip_and_multiple_blocks():
    text = format_graph(cycle(5)) + format_graph(path(3).with_colours("bwb"))
    a, b = parse_graphs(text)
    assert a == cycle(5) and a.black is None
    assert b.colours() == "bwb"


@pytest.mark.parametrize("text", [
    "bgraph 3\ncolours www\ne 0 3\nend\n",
    "bgraph 2\ncolours wx\nend\n",
    "bgraph 2\ncolours ww\ne 0 1\n",
    "graph 2\n",
    "bgraph 2\ncolours ww\ne 1 1\nend\n",
])
def test_parse_errors(text):
    with pytest.raises(FormatError):
        parse_graph(text)


def test_dot_fills_black_vertices():
    dot = to_dot(path(2).with_colours("bw"))
    assert "0 [style=filled" in dot.replace('"', "")
    assert "0 -- 1" in dot


def test_from_edges_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph.from_edges(65, [])
