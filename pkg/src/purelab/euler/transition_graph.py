"""Transition graphs and alternating Euler tours."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..errors import NotTwoFactored
from .dow import DOW
from .multigraph import Multigraph, TransitionSystem, _require_min_degree, opposite, tours_of


@dataclass
class TransitionGraph:
    """Vertices are the transitions of a system; solid edges keep their ids, broken edges follow.

    ``transitions[t]`` is the dart pair of transition t, ``owner[t]`` its vertex
    in the original multigraph, ``at[v]`` the transitions at v in linking order.
    """

    base: Multigraph
    graph: Multigraph
    natural: TransitionSystem
    transitions: list
    owner: list
    at: list
    solid_count: int

    def is_solid(self, e: int) -> bool:
        return e < self.solid_count


def transition_graph(m: Multigraph, ts: TransitionSystem, ordering: Optional[Sequence[Sequence[int]]] = None) -> TransitionGraph:
    """Build a transition graph; ``ordering[v]`` permutes the transitions at v (default: sorted)."""
    _require_min_degree(m)
    transitions, owner, at = [], [], []
    where = {}
    for v in range(m.n):
        local = ts.pairs_at(v)
        if ordering is not None:
            local = [local[i] for i in ordering[v]]
        ids = []
        for a, b in local:
            t = len(transitions)
            transitions.append((a, b))
            owner.append(v)
            where[a] = t
            where[b] = t
            ids.append(t)
        at.append(ids)
    edges = [(where[(e, 0)], where[(e, 1)]) for e in range(m.edge_count)]
    pairs = [((a, b)) for a, b in transitions]
    for ids in at:
        k = len(ids)
        links = [(ids[i], ids[i + 1]) for i in range(k - 1)] + [(ids[0], ids[-1])]
        for x, y in links:
            e = len(edges)
            edges.append((x, y))
    g = Multigraph(len(transitions), edges)
    # broken darts at each transition, paired with each other
    broken_at = [[] for _ in transitions]
    for e in range(m.edge_count, len(edges)):
        broken_at[edges[e][0]].append((e, 0))
        broken_at[edges[e][1]].append((e, 1))
    pairs += [tuple(bs) for bs in broken_at]
    natural = TransitionSystem.from_pairs(g, pairs)
    return TransitionGraph(m, g, natural, transitions, owner, at, m.edge_count)


def _split_darts(tg: TransitionGraph, v: int):
    solid = [d for d in tg.graph.darts_at(v) if tg.is_solid(d[0])]
    broken = [d for d in tg.graph.darts_at(v) if not tg.is_solid(d[0])]
    return solid, broken


def alternating_euler_tour(tg: TransitionGraph, stats: Optional[dict] = None) -> DOW:
    """An Euler tour alternating solid and broken edges, as a word over transitions with its edges.

    Solid darts are paired with broken darts at every vertex; while the pairing
    traces more than one tour, the pairing is flipped at the lowest vertex met
    by two different tours, which joins them.
    """
    g = tg.graph
    partner = {}
    flip_sites = []
    for v in range(g.n):
        solid, broken = _split_darts(tg, v)
        if len(solid) != 2 or len(broken) != 2:
            raise NotTwoFactored(f"vertex {v} does not meet both factors twice")
        partner[solid[0]], partner[broken[0]] = broken[0], solid[0]
        partner[solid[1]], partner[broken[1]] = broken[1], solid[1]
        flip_sites.append((solid, broken))
    flips = 0
    while True:
        tours = tours_of(g, partner)
        if len(tours) == 1:
            break
        tour_of = {}
        for k, tour in enumerate(tours):
            for d in tour:
                tour_of[d] = k
                tour_of[opposite(d)] = k
        for v in range(g.n):
            (s0, s1), (b0, b1) = flip_sites[v]
            if tour_of[s0] != tour_of[s1]:
                if partner[s0] == b0:
                    partner.update({s0: b1, b1: s0, s1: b0, b0: s1})
                else:
                    partner.update({s0: b0, b0: s0, s1: b1, b1: s1})
                flips += 1
                break
        else:  # pragma: no cover - the graph is connected
            raise NotTwoFactored("the transition graph is not connected")
    tour = tours[0]
    # start on a solid edge so that even positions are solid
    k = next(i for i, d in enumerate(tour) if tg.is_solid(d[0]))
    tour = tour[k:] + tour[:k]
    if stats is not None:
        stats["flips"] = flips
    return DOW([g.anchor(d) for d in tour], [d[0] for d in tour])
