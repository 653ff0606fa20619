import itertools
import random

import pytest
from hypothesis import given, settings

from purelab.canon import automorphism_group, canonical_form
from purelab.complement import apply_word
from purelab.errors import BudgetExceeded, IllegalMove, NotAComplementationSet, NotInvertible
from purelab.families import circulant, connection_set, cycle, paley, path
from purelab.graph import Graph, bits, induced_subgraph, mask_of
from purelab.parity import (
    ParityMove, apply_moves, black_edge, class_keys, complement_with_set, enumerate_labeled_parity_class,
    enumerate_parity_class, find_black_anticlique, find_parity_word, invert, is_black_anticlique,
    is_invertible, is_naturally_coloured, is_pure, legal_moves, natural_colouring, parity_complement,
    purity, white_vertex,
)

from conftest import graphs, random_graph

WHITE_C5 = cycle(5).with_colours("wwwww")


def brute_anticlique(g):
    blacks = list(bits(g.black))
    for r in range(len(blacks) + 1):
        for sub in itertools.combinations(blacks, r):
            a = mask_of(sub)
            dom = a
            ok = True
            for v in sub:
                if g.rows[v] & a:
                    ok = False
                    break
                dom |= g.rows[v]
            if ok and dom == g.vertex_mask:
                return a
    return None


def test_natural_colouring_examples():
    assert natural_colouring(cycle(5)).colours() == "wwwww"
    assert natural_colouring(path(2)).colours() == "bb"
    assert natural_colouring(path(3)).colours() == "bwb"


def test_white_move_on_pentagon():
    h = parity_complement(WHITE_C5, white_vertex(0))
    assert (1, 4) in h.edges() and h.edge_count() == 6
    assert h.colours() == "wbwwb"


def test_black_edge_on_k2_and_isolated_white():
    k2 = path(2).with_colours("bb")
    assert parity_complement(k2, black_edge(0, 1)) == k2
    g = Graph.from_edges(2, [], "ww")
    assert parity_complement(g, white_vertex(1)) == g


def test_illegal_moves():
    g = path(3).with_colours("bwb")
    with pytest.raises(IllegalMove):
        parity_complement(g, white_vertex(0))
    with pytest.raises(IllegalMove):
        parity_complement(g, black_edge(0, 2))  # not adjacent
    with pytest.raises(IllegalMove):
        parity_complement(g, black_edge(0, 1))  # 1 is white
    with pytest.raises(IllegalMove):
        parity_complement(cycle(3), white_vertex(0))  # uncoloured


def test_black_edge_orientation_irrelevant():
    rng = random.Random(4)
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 8), 0.5, coloured=True)
        for u in bits(g.black):
            for v in bits(g.rows[u] & g.black):
                a = parity_complement(g, ParityMove(u, v))
                b = Graph(g.n, g.rows, g.black)
                assert a.rows == apply_word(b, [v, u, v]).rows and a.black == g.black


@settings(max_examples=150)
@given(graphs(max_n=8))
def test_moves_preserve_natural_colouring(g):
    h = natural_colouring(g)
    for _, k in legal_moves(h):
        assert is_naturally_coloured(k)


def test_anticlique_examples():
    assert find_black_anticlique(Graph.empty(1, "b")) == 1
    assert find_black_anticlique(WHITE_C5) is None
    assert find_black_anticlique(path(2).with_colours("bb")) in (1, 2)


@settings(max_examples=300)
@given(graphs(max_n=10, coloured=True))
def test_anticlique_matches_brute_force(g):
    a = find_black_anticlique(g)
    b = brute_anticlique(g)
    assert (a is None) == (b is None)
    if a is not None:
        assert is_black_anticlique(g, a)


def test_parity_class_counts_small():
    assert len(enumerate_parity_class(natural_colouring(cycle(9)))) == 23
    assert len(enumerate_parity_class(WHITE_C5)) == len(enumerate_parity_class(natural_colouring(cycle(5))))


def test_parity_class_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_parity_class(natural_colouring(cycle(13)), budget=5)


def test_class_is_the_same_from_any_member():
    g = natural_colouring(cycle(7))
    orb = enumerate_parity_class(g)
    keys = frozenset(orb.reps)
    for _, h in list(orb.sorted_reps())[::3]:
        assert class_keys(h) == keys


def test_labeled_class_matches_iso_class():
    g = natural_colouring(cycle(6))
    members = enumerate_labeled_parity_class(g)
    assert {canonical_form(h) for h in members} == class_keys(g)


def test_witness_word_replays():
    g = natural_colouring(cycle(7))
    orb = enumerate_parity_class(g)
    for key, h in orb.sorted_reps():
        assert canonical_form(apply_moves(g, orb.word_to(key))) == key


def test_jobs_give_identical_order():
    g = natural_colouring(cycle(11))
    assert enumerate_parity_class(g).keys() == enumerate_parity_class(g, jobs=2).keys()


def test_purity_examples():
    assert is_pure(Graph.empty(1, "w"))
    assert is_pure(WHITE_C5)
    assert not is_pure(Graph.empty(1, "b"))
    assert is_pure(natural_colouring(circulant(13, [1, 3, 4])))


def test_impure_report_has_replayable_witness():
    g = natural_colouring(cycle(9))
    rep = purity(g)
    assert not rep.pure
    h = apply_moves(g, rep.witness_word)
    assert canonical_form(h) == rep.witness_key
    assert find_black_anticlique(rep.witness_graph) is not None


def test_purity_is_isomorphism_invariant():
    rng = random.Random(8)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6), 0.5, coloured=True)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert is_pure(g) == is_pure(g.relabel(perm))


def test_full_and_early_exit_agree():
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6), 0.5, coloured=True)
        assert purity(g).pure == purity(g, full=True).pure


def _reduced_parity_words(g, limit=6):
    """All reduced parity words (as moves) of length <= limit, with their results."""
    out = []

    def rec(h, used, word):
        out.append((used, list(word), h))
        if len(word) == limit:
            return
        for mv, k in legal_moves(h):
            if mv.mask & used:
                continue
            word.append(mv)
            rec(k, used | mv.mask, word)
            word.pop()

    rec(g, 0, [])
    return out


def test_equal_support_gives_equal_result():
    rng = random.Random(10)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 6), 0.5, coloured=True)
        by_support = {}
        for used, _, h in _reduced_parity_words(g):
            by_support.setdefault(used, set()).add(h)
        assert all(len(v) == 1 for v in by_support.values())


def test_complement_with_set_examples():
    g = WHITE_C5
    assert complement_with_set(g, {0}) == parity_complement(g, white_vertex(0))
    k = path(3).with_colours("bbw")
    assert complement_with_set(k, {0, 1}) == parity_complement(k, black_edge(0, 1))
    inv = complement_with_set(g, g.vertex_mask)
    assert inv.rows == circulant(5, [2, 3]).rows
    with pytest.raises(NotAComplementationSet):
        complement_with_set(Graph.empty(1, "b"), {0})


def test_complement_with_set_matches_word_enumeration():
    rng = random.Random(12)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 6), 0.6, coloured=True)
        reach = {}
        for used, _, h in _reduced_parity_words(g):
            reach[used] = h
        for s in range(1 << g.n):
            if s in reach:
                assert complement_with_set(g, s) == reach[s]
                assert complement_with_set(g, s, exhaustive=True) == reach[s]
            else:
                assert find_parity_word(g, s) is None


def test_invert_examples():
    assert invert(cycle(4)).rows == cycle(4).rows
    assert invert(cycle(7)).rows == circulant(7, [1, 3, 4, 6]).rows
    with pytest.raises(NotInvertible):
        invert(cycle(3))
    assert not is_invertible(cycle(6))


def test_stabilised_automorphisms_survive():
    rng = random.Random(13)
    checked = 0
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 6), 0.5, coloured=True)
        grp = automorphism_group(g)
        for s in range(1, 1 << g.n):
            if find_parity_word(g, s) is None:
                continue
            h = complement_with_set(g, s)
            for p in grp:
                if mask_of(p[v] for v in bits(s)) == s:
                    assert h.relabel(p) == h
                    checked += 1
    assert checked > 0


@pytest.mark.parametrize("n", [4, 5, 7])
def test_inverse_has_same_automorphisms(n):
    g = natural_colouring(cycle(n))
    assert automorphism_group(invert(g)) == automorphism_group(g)


def test_paley13_pentagon():
    g = natural_colouring(paley(13))
    h = induced_subgraph(g, {0, 1, 5, 8, 12})
    assert canonical_form(h) == canonical_form(WHITE_C5)
    assert is_invertible(h)


def test_inverse_of_circulant_is_circulant():
    for n in (4, 5, 7, 8, 10):
        h = invert(cycle(n))
        assert h.rows == circulant(n, connection_set(h)).rows
