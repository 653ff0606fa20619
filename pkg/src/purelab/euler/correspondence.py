"""From transition systems of 4-regular graphs to parity classes and back.

A transition system gives a transition graph, whose alternating Euler tour is
a double occurrence word over the transitions. Its alternance graph is the
double of a bicoloured graph on the original vertices: the two transitions at
a vertex are twins, joined exactly when the vertex is black.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import DegreeNotFour, NotADouble, NotConnected, NotFourRegular
from ..graph import Graph, bits, popcount
from .dow import DOW, alternance_graph
from .multigraph import Multigraph, TransitionSystem, opposite, transition_key
from .transition_graph import TransitionGraph, alternating_euler_tour, transition_graph


def double(g: Graph) -> Graph:
    """Vertex v becomes 2v and 2v+1, twins of v's colour, adjacent iff v is black."""
    if g.black is None:
        raise ValueError("a bicoloured graph is required")
    n = g.n
    rows = [0] * (2 * n)
    black = 0
    for v in range(n):
        r = 0
        for w in bits(g.rows[v]):
            r |= 3 << (2 * w)
        for s in (0, 1):
            rows[2 * v + s] = r
        if g.is_black(v):
            rows[2 * v] |= 1 << (2 * v + 1)
            rows[2 * v + 1] |= 1 << (2 * v)
            black |= 3 << (2 * v)
    return Graph(2 * n, rows, black)


def canonical_pairing(n: int) -> list[tuple[int, int]]:
    return [(2 * v, 2 * v + 1) for v in range(n)]


def halve(h: Graph, pairing: Sequence[tuple[int, int]]) -> Graph:
    """Inverse of ``double`` for the given twin pairs; raises NotADouble if h is not a double."""
    if h.black is None:
        raise NotADouble("a bicoloured graph is required")
    flat = [x for p in pairing for x in p]
    if sorted(flat) != list(range(h.n)):
        raise NotADouble("the pairing must cover every vertex once")
    n = len(pairing)
    rows = [0] * n
    black = 0
    for v, (a, b) in enumerate(pairing):
        if h.is_black(a) != h.is_black(b):
            raise NotADouble(f"twins {a} and {b} have different colours")
        if h.has_edge(a, b) != h.is_black(a):
            raise NotADouble(f"twins {a} and {b} are joined iff black fails")
        if h.is_black(a):
            black |= 1 << v
        for w, (c, d) in enumerate(pairing):
            if w <= v:
                continue
            links = {h.has_edge(x, y) for x in (a, b) for y in (c, d)}
            if len(links) != 1:
                raise NotADouble(f"pairs {v} and {w} are joined inconsistently")
            if links.pop():
                rows[v] |= 1 << w
                rows[w] |= 1 << v
    return Graph(n, rows, black)


def _require_four_regular(m: Multigraph) -> None:
    if any(d != 4 for d in m.degrees()):
        raise NotFourRegular("every vertex must have degree 4")
    if not m.is_connected():
        raise NotConnected("the multigraph is not connected")


@dataclass
class Correspondence:
    """The bicoloured graph of a transition system with the objects that produced it.

    Vertex v of ``graph`` is vertex v of the multigraph; ``pairing[v]`` holds
    its two transitions, which are letters of ``word``.
    """

    graph: Graph
    tg: TransitionGraph
    word: DOW
    pairing: list


def correspondence(m: Multigraph, ts: TransitionSystem, ordering=None) -> Correspondence:
    _require_four_regular(m)
    tg = transition_graph(m, ts, ordering)
    w = alternating_euler_tour(tg)
    pairing = [tuple(tg.at[v]) for v in range(m.n)]
    g = halve(alternance_graph(w), pairing)
    return Correspondence(g, tg, w, pairing)


def ts_to_bicoloured(m: Multigraph, ts: TransitionSystem) -> Graph:
    return correspondence(m, ts).graph


# splits and edge cuts ------------------------------------------------------

@dataclass
class CutReport:
    part: int
    is_split: bool
    cut_size: int
    nontrivial: bool
    cross_edge: bool
    consistent: bool


def split_edge_cut_check(g: Graph, m: Multigraph, ts: TransitionSystem, part) -> CutReport:
    """Compare a bipartition as a split of g with the edge cut it makes in m."""
    from ..split import Split, frontiers, is_split

    if g.n != m.n:
        raise ValueError("the graph and the multigraph have different vertex counts")
    v1 = part if isinstance(part, int) else sum(1 << v for v in part)
    v2 = g.vertex_mask & ~v1
    s = Split(v1, v2)
    cut = sum(1 for u, v in m.edges if ((v1 >> u) & 1) != ((v1 >> v) & 1))
    nontrivial = popcount(v1) >= 2 and popcount(v2) >= 2
    sp = is_split(g, s)
    cross = bool(frontiers(g, s)[0])
    ok = sp == (nontrivial and cut in (2, 4))
    if sp:
        ok = ok and ((cut == 2) == (not cross))
    return CutReport(v1, sp, cut, nontrivial, cross, ok)


# rooted transition systems ---------------------------------------------------

@dataclass
class RootedTS:
    """A transition system with the pairing at vertex z left out."""

    m: Multigraph
    partner: dict
    z: int

    @classmethod
    def from_ts(cls, ts: TransitionSystem, z: int) -> "RootedTS":
        m = ts.m
        partner = {a: b for a, b in ts.partner.items() if m.anchor(a) != z}
        return cls(m, partner, z)


def _root_pairings(r: RootedTS):
    darts = list(r.m.darts_at(r.z))
    if len(darts) != 4:
        raise DegreeNotFour(f"vertex {r.z} has degree {len(darts)}")
    a = darts[0]
    for b in darts[1:]:
        rest = [d for d in darts[1:] if d != b]
        yield [(a, b), tuple(rest)]


def rooted_ts_completions(r: RootedTS) -> list[TransitionSystem]:
    """The distinct ways to pair the darts at the root (three, fewer when loops sit at the root)."""
    out, seen = [], set()
    for pairs in _root_pairings(r):
        key = frozenset(transition_key(r.m, a, b) for a, b in pairs)
        if key in seen:
            continue
        seen.add(key)
        partner = dict(r.partner)
        for a, b in pairs:
            partner[a] = b
            partner[b] = a
        out.append(TransitionSystem(r.m, partner))
    return out


def _identify(r: RootedTS, pairs) -> tuple[Multigraph, TransitionSystem]:
    m, z = r.m, r.z
    at_root = {}
    for a, b in pairs:
        at_root[a] = b
        at_root[b] = a
    relabel = lambda v: v - (v > z)  # noqa: E731
    new_edges = []
    new_id = {}
    for e, (u, v) in enumerate(m.edges):
        if u != z and v != z:
            new_id[e] = len(new_edges)
            new_edges.append((relabel(u), relabel(v)))
    # fused edges: walk from a far dart through the root until another far dart
    far_map = {}
    done = set()
    for e, (u, v) in enumerate(m.edges):
        for s in (0, 1):
            d = (e, s)
            if m.anchor(d) == z or d in done or m.anchor(opposite(d)) != z:
                continue
            start = d
            cur = opposite(d)
            while True:
                nxt = at_root[cur]
                end = opposite(nxt)
                if m.anchor(end) != z:
                    break
                cur = end
            done.add(start)
            done.add(end)
            k = len(new_edges)
            new_edges.append((relabel(m.anchor(start)), relabel(m.anchor(end))))
            far_map[start] = (k, 0)
            far_map[end] = (k, 1)
    nm = Multigraph(m.n - 1, new_edges)

    def tr(d):
        if d in far_map:
            return far_map[d]
        return (new_id[d[0]], d[1])

    partner = {tr(a): tr(b) for a, b in r.partner.items()}
    return nm, TransitionSystem(nm, partner)


def rooted_ts_identifications(r: RootedTS) -> list[tuple[Multigraph, TransitionSystem]]:
    """Remove the root and fuse its darts two by two into edges, once per pairing."""
    out, seen = [], set()
    for pairs in _root_pairings(r):
        key = frozenset(transition_key(r.m, a, b) for a, b in pairs)
        if key in seen:
            continue
        seen.add(key)
        out.append(_identify(r, pairs))
    return out
