import itertools
import random

import networkx as nx
import pytest

from purelab.canon import (
    _automorphisms_brute, automorphism_group, canonical_form, canonical_form_nauty, canonical_form_python,
    is_automorphism,
)
from purelab.families import complete_bipartite, cycle, path, petersen
from purelab.graph import Graph

from conftest import random_graph

BACKENDS = [canonical_form_nauty, canonical_form_python]


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    if g.black is not None:
        for u in range(g.n):
            h.nodes[u]["c"] = g.is_black(u)
    return h


def _iso(a, b):
    if a.n != b.n or (a.black is None) != (b.black is None):
        return False
    return nx.is_isomorphic(_nx(a), _nx(b), node_match=lambda x, y: x.get("c") == y.get("c"))


def _shuffled(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


@pytest.mark.parametrize("key", BACKENDS)
def test_spec_examples(key):
    c5 = cycle(5).with_colours("wwwww")
    assert key(c5) == key(c5.relabel([2, 4, 1, 0, 3]))
    assert key(c5) != key(cycle(5).with_colours("bwwww"))
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert key(path(4)) != key(star)


@pytest.mark.parametrize("key", BACKENDS)
def test_permutation_invariance(key):
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(0, 10)
        g = random_graph(rng, n, rng.random(), coloured=rng.random() < 0.7)
        assert key(_shuffled(g, rng)) == key(g)


def test_backends_agree_with_networkx_isomorphism():
    rng = random.Random(11)
    pool = [random_graph(rng, rng.randint(1, 7), 0.5, coloured=True) for _ in range(150)]
    # add isomorphic copies so positive pairs are common
    pool += [_shuffled(g, rng) for g in pool[:60]]
    for a, b in itertools.combinations(pool[:120], 2):
        iso = _iso(a, b)
        for key in BACKENDS:
            assert (key(a) == key(b)) == iso


def test_uncoloured_differs_from_coloured():
    g = cycle(5)
    assert canonical_form(g) != canonical_form(g.with_colours("wwwww"))


def test_regular_graphs_are_told_apart():
    # 3-regular on 6 vertices: prism vs K3,3
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    for key in BACKENDS:
        assert key(prism) != key(complete_bipartite(3, 3))
        assert key(petersen()) == key(_shuffled(petersen(), random.Random(3)))


@pytest.mark.parametrize("g,size", [(cycle(5), 10), (cycle(6), 12), (petersen(), 120), (path(4), 2)])
def test_automorphism_group_sizes(g, size):
    grp = automorphism_group(g)
    assert len(grp) == size
    assert all(is_automorphism(g, p) for p in grp)


def test_automorphisms_match_brute_force():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 6), 0.5, coloured=True)
        assert automorphism_group(g) == {tuple(p) for p in _automorphisms_brute(g)}
