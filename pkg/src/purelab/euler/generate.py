"""Small 4-regular multigraphs and transition systems, exhaustive or random."""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from ..canon import canonical_form
from ..graph import Graph
from .multigraph import Multigraph, TransitionSystem


def vertex_pairings(darts: list) -> Iterator[list]:
    """All perfect matchings of a list of darts."""
    if not darts:
        yield []
        return
    a = darts[0]
    for i in range(1, len(darts)):
        rest = darts[1:i] + darts[i + 1 :]
        for tail in vertex_pairings(rest):
            yield [(a, darts[i])] + tail


def multigraph_key(m: Multigraph) -> bytes:
    """Isomorphism key: the incidence graph with vertices black and edge nodes white."""
    n = m.n
    size = n + m.edge_count
    rows = [0] * size
    for e, (u, v) in enumerate(m.edges):
        x = n + e
        for y in {u, v}:
            rows[x] |= 1 << y
            rows[y] |= 1 << x
    return canonical_form(Graph(size, rows, (1 << n) - 1))


def four_regular_multigraphs(n: int, loops: bool = True) -> list[Multigraph]:
    """Connected 4-regular multigraphs on n vertices, one per isomorphism class."""
    pairs = [(i, j) for i in range(n) for j in range(i, n) if loops or i != j]
    last = {}
    for k, (i, j) in enumerate(pairs):
        last[i] = k
        last[j] = k
    seen, out = set(), []
    deg = [0] * n
    mult = []

    def rec(k):
        if k == len(pairs):
            if all(d == 4 for d in deg):
                edges = [p for p, c in zip(pairs, mult) for _ in range(c)]
                m = Multigraph(n, edges)
                if m.is_connected():
                    key = multigraph_key(m)
                    if key not in seen:
                        seen.add(key)
                        out.append(m)
            return
        i, j = pairs[k]
        room = (4 - deg[i]) // 2 if i == j else min(4 - deg[i], 4 - deg[j])
        for c in range(room + 1):
            deg[i] += 2 * c if i == j else c
            if i != j:
                deg[j] += c
            if (last[i] != k or deg[i] == 4) and (last[j] != k or deg[j] == 4):
                mult.append(c)
                rec(k + 1)
                mult.pop()
            deg[i] -= 2 * c if i == j else c
            if i != j:
                deg[j] -= c

    rec(0)
    return out


def transition_systems(m: Multigraph) -> Iterator[TransitionSystem]:
    """Every transition system of m, skipping repeats with the same transitions."""
    per = [list(vertex_pairings(list(m.darts_at(v)))) for v in range(m.n)]
    seen = set()
    for choice in itertools.product(*per):
        ts = TransitionSystem.from_pairs(m, [p for c in choice for p in c])
        key = frozenset(ts.transitions())
        if key not in seen:
            seen.add(key)
            yield ts


def random_four_regular(rng: random.Random, n: int, loops: bool = False) -> Multigraph:
    """A connected 4-regular multigraph from a random stub pairing."""
    if n < 1 or (n < 2 and not loops):
        raise ValueError(f"no connected 4-regular multigraph on {n} vertices")
    while True:
        stubs = [v for v in range(n) for _ in range(4)]
        rng.shuffle(stubs)
        edges = [(stubs[2 * i], stubs[2 * i + 1]) for i in range(2 * n)]
        if not loops and any(u == v for u, v in edges):
            continue
        m = Multigraph(n, edges)
        if m.is_connected():
            return m


def random_transition_system(rng: random.Random, m: Multigraph) -> TransitionSystem:
    pairs = []
    for v in range(m.n):
        pairs += rng.choice(list(vertex_pairings(list(m.darts_at(v)))))
    return TransitionSystem.from_pairs(m, pairs)
