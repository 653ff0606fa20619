import random

import pytest

from purelab.errors import (
    DegreeTooSmall, FormatError, LoopObstruction, NotADecomposition, NotEulerian, NotTwoFactored,
)
from purelab.euler.generate import random_four_regular, random_transition_system, vertex_pairings
from purelab.euler.multigraph import (
    Multigraph, TransitionSystem, edge_blocks, euler_tour, faulty_positions, forced_transitions,
    format_mgraph, is_admissible, is_euler_tour, orthogonal_euler_tour, parse_mgraph, parse_mgraphs,
    tour_transitions, tour_vertices, transition_key,
)
from purelab.euler.transition_graph import alternating_euler_tour, transition_graph
from purelab.families import k5_two_pentagons_ts


def k5():
    return Multigraph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])


def octahedron():
    return Multigraph(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 3])


def two_triangles_with_loops():
    # triangles 0-1-2 and 0-3-4 sharing vertex 0; a loop at every other vertex
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)] + [(v, v) for v in (1, 2, 3, 4)]
    return Multigraph(5, edges)


def test_ts_from_euler_tour_of_k5():
    m = k5()
    t = euler_tour(m)
    assert is_euler_tour(m, t)
    ts = TransitionSystem.from_tours(m, [t])
    assert all(len(ts.pairs_at(v)) == 2 for v in range(5))
    assert ts.tours() and len(ts.tours()) == 1


def test_k5_exception_system():
    m, ts = k5_two_pentagons_ts()
    tours = ts.tours()
    assert sorted(len(t) for t in tours) == [5, 5]
    assert {frozenset(tour_vertices(m, t)) for t in tours} == {frozenset(range(5))}


def test_loop_as_its_own_tour():
    m = Multigraph(1, [(0, 0), (0, 0)])
    ts = TransitionSystem.from_tours(m, [[(0, 0)], [(1, 0)]])
    assert ts.transitions() == {(0, (0, 0)), (0, (1, 1))}
    assert ts.has_loop_transition()


def test_from_tours_rejects_non_decompositions():
    m = k5()
    t = euler_tour(m)
    with pytest.raises(NotADecomposition):
        TransitionSystem.from_tours(m, [t[:5]])
    with pytest.raises(NotADecomposition):
        TransitionSystem.from_tours(m, [t, t[:2]])
    with pytest.raises(NotADecomposition):
        TransitionSystem.from_tours(m, [[(0, 0), (5, 0)]])  # 0-1 then 1-3 does not close


def test_tour_round_trip():
    rng = random.Random(31)
    for _ in range(100):
        m = random_four_regular(rng, rng.randint(2, 9), loops=rng.random() < 0.5)
        ts = random_transition_system(rng, m)
        again = TransitionSystem.from_tours(m, ts.tours())
        assert again == ts


def test_text_round_trip_with_loops():
    m = two_triangles_with_loops()
    pairs = []
    for v in range(m.n):
        pairs += next(iter(vertex_pairings(list(m.darts_at(v)))))
    ts = TransitionSystem.from_pairs(m, pairs)
    text = format_mgraph(m, ts)
    assert "7.0" in text or "6.0" in text
    m2, ts2 = parse_mgraph(text)
    assert m2.edges == m.edges and ts2 == ts
    both = parse_mgraphs(text + format_mgraph(k5()))
    assert len(both) == 2 and both[1][1] is None


@pytest.mark.parametrize("text", [
    "mgraph 2 1\ne 0 0 1\n",
    "mgraph 2 1\ne 0 0 2\nend\n",
    "mgraph 1 1\ne 0 0 0\nt 0 : 0,0\nend\n",
    "mgraph 2 2\ne 0 0 1\ne 1 0 1\nt 0 : 0,1\nt 1 : 0,0\nend\n",
    "mgraph 2 1\ne 1 0 1\nend\n",
    "mgraph x 1\nend\n",
])
def test_parse_errors(text):
    with pytest.raises(FormatError):
        parse_mgraph(text)


def test_admissibility_examples():
    m, ts = k5_two_pentagons_ts()
    assert is_admissible(m, ts)
    loops = Multigraph(2, [(0, 1), (0, 1), (0, 0), (1, 1)])
    ts = TransitionSystem.from_pairs(loops, [((2, 0), (2, 1)), ((0, 0), (1, 0)), ((3, 0), (3, 1)), ((0, 1), (1, 1))])
    assert not is_admissible(loops, ts)


def test_triangle_pair_at_shared_vertex_is_forced():
    m = two_triangles_with_loops()
    # at vertex 0 pair the two edges of the first triangle, elsewhere cross the loop with the triangle edges
    pairs = [((0, 0), (2, 1)), ((3, 0), (5, 1))]
    for v, loop in zip((1, 2, 3, 4), (6, 7, 8, 9)):
        others = [d for d in m.darts_at(v) if d[0] != loop]
        pairs += [(others[0], (loop, 0)), (others[1], (loop, 1))]
    ts = TransitionSystem.from_pairs(m, pairs)
    assert not is_admissible(m, ts)
    forced = forced_transitions(m, ts)
    assert transition_key(m, (0, 0), (2, 1)) in forced
    # crossing the two triangles at the shared vertex is fine there
    pairs[0:2] = [((0, 0), (3, 0)), ((2, 1), (5, 1))]
    ts2 = TransitionSystem.from_pairs(m, pairs)
    assert is_admissible(m, ts2)


def test_admissibility_needs_degree_three():
    m = Multigraph(3, [(0, 1), (1, 2), (2, 0)])
    ts = TransitionSystem.from_tours(m, [euler_tour(m)])
    with pytest.raises(DegreeTooSmall):
        is_admissible(m, ts)


def test_edge_blocks_split_at_cut_vertex():
    blocks = edge_blocks(two_triangles_with_loops())
    assert blocks[0] == blocks[1] == blocks[2]
    assert blocks[3] == blocks[4] == blocks[5] != blocks[0]
    assert len(set(blocks[6:])) == 4


def _check_orthogonal(m, ts, tour, history):
    assert is_euler_tour(m, tour)
    assert not set(tour_transitions(m, tour)) & ts.transitions()
    assert all(a > b for a, b in zip(history, history[1:]))
    assert history[-1] == 0


def test_orthogonal_tour_on_k5():
    m = k5()
    ts = TransitionSystem.from_tours(m, [euler_tour(m)])
    history = []
    tour = orthogonal_euler_tour(m, ts, history=history)
    _check_orthogonal(m, ts, tour, history)
    assert history[0] == 10


def test_orthogonal_tour_on_the_k5_exception():
    m, ts = k5_two_pentagons_ts()
    history = []
    tour = orthogonal_euler_tour(m, ts, history=history)
    _check_orthogonal(m, ts, tour, history)


def test_orthogonal_tour_random_systems():
    rng = random.Random(32)
    for _ in range(60):
        m = random_four_regular(rng, rng.randint(2, 10))
        ts = random_transition_system(rng, m)
        history = []
        tour = orthogonal_euler_tour(m, ts, history=history)
        _check_orthogonal(m, ts, tour, history)


def test_orthogonal_tour_keeps_an_orthogonal_start():
    m = k5()
    ts = TransitionSystem.from_tours(m, [euler_tour(m)])
    tour = orthogonal_euler_tour(m, ts)
    history = []
    again = orthogonal_euler_tour(m, ts, tour=tour, history=history)
    assert again == tour and history == [0]


def test_orthogonal_tour_loop_obstruction():
    m = Multigraph(2, [(0, 1), (0, 1), (0, 0), (1, 1)])
    # loop 2 is not a transition of the system at vertex 0
    ts = TransitionSystem.from_pairs(m, [((0, 0), (2, 0)), ((1, 0), (2, 1)), ((3, 0), (3, 1)), ((0, 1), (1, 1))])
    with pytest.raises(LoopObstruction):
        orthogonal_euler_tour(m, ts)
    ok = TransitionSystem.from_pairs(m, [((2, 0), (2, 1)), ((0, 0), (1, 0)), ((3, 0), (3, 1)), ((0, 1), (1, 1))])
    tour = orthogonal_euler_tour(m, ok)
    assert is_euler_tour(m, tour)


def test_orthogonal_tour_input_checks():
    with pytest.raises(DegreeTooSmall):
        orthogonal_euler_tour(Multigraph(2, [(0, 1), (0, 1)]), None)
    odd = Multigraph(2, [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1)])
    with pytest.raises(NotEulerian):
        orthogonal_euler_tour(odd, None)


def test_faulty_positions_counts_shared_transitions():
    m = k5()
    t = euler_tour(m)
    ts = TransitionSystem.from_tours(m, [t])
    assert len(faulty_positions(m, t, ts.transitions())) == 10


def test_transition_graph_shapes():
    m, ts = k5_two_pentagons_ts()
    tg = transition_graph(m, ts)
    assert tg.graph.n == 10 and all(d == 4 for d in tg.graph.degrees())
    broken = tg.graph.edges[tg.solid_count:]
    assert len(broken) == 10
    for v in range(5):
        a, b = tg.at[v]
        assert broken.count((a, b)) == 2
    # one vertex of degree 6: its three transitions form a triangle of broken edges
    m6 = Multigraph(2, [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)])
    ts6 = TransitionSystem.from_tours(m6, [euler_tour(m6)])
    tg6 = transition_graph(m6, ts6)
    assert tg6.graph.n == 6
    tri = tg6.graph.edges[tg6.solid_count:tg6.solid_count + 3]
    assert sorted(x for e in tri for x in e) == sorted(tg6.at[0] * 2)


def test_transition_graph_counts():
    rng = random.Random(33)
    for _ in range(30):
        m = random_four_regular(rng, rng.randint(2, 8))
        ts = random_transition_system(rng, m)
        tg = transition_graph(m, ts)
        assert tg.graph.n == sum(m.degrees()) // 2
        assert tg.natural.transitions() is not None
        for a, b in tg.natural.pairs():
            assert tg.is_solid(a[0]) == tg.is_solid(b[0])


def test_alternating_tour_examples():
    m = Multigraph(1, [(0, 0), (0, 0)])
    ts = TransitionSystem.from_pairs(m, [((0, 0), (1, 0)), ((0, 1), (1, 1))])
    stats = {}
    w = alternating_euler_tour(transition_graph(m, ts), stats)
    assert stats["flips"] == 1
    assert len(w.letters) == 4 and w.letters[0] != w.letters[1] and w.letters[:2] == w.letters[2:]
    m, ts = k5_two_pentagons_ts()
    tg = transition_graph(m, ts)
    w = alternating_euler_tour(tg, stats)
    assert len(w.letters) == 20 and sorted(set(w.letters)) == list(range(10))
    assert all(tg.is_solid(e) == (i % 2 == 0) for i, e in enumerate(w.edges))


def test_alternating_tour_merge_counts():
    m = Multigraph(2, [(0, 1), (0, 1), (0, 1), (0, 1)])
    single = TransitionSystem.from_pairs(m, [((0, 0), (1, 0)), ((2, 0), (3, 0)), ((0, 1), (2, 1)), ((1, 1), (3, 1))])
    stats = {}
    w = alternating_euler_tour(transition_graph(m, single), stats)
    assert stats["flips"] == 0 and len(w.letters) == 8
    split = TransitionSystem.from_pairs(m, [((0, 0), (1, 0)), ((2, 0), (3, 0)), ((0, 1), (1, 1)), ((2, 1), (3, 1))])
    alternating_euler_tour(transition_graph(m, split), stats)
    assert stats["flips"] == 1


def test_alternating_tour_needs_two_factors():
    m = Multigraph(2, [(0, 1), (0, 1), (0, 1), (0, 1)])
    ts = TransitionSystem.from_tours(m, [euler_tour(m)])
    tg = transition_graph(m, ts)
    tg.solid_count = 0
    with pytest.raises(NotTwoFactored):
        alternating_euler_tour(tg)
