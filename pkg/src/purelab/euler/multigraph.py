"""Eulerian multigraphs as darts, transition systems, tours and transition repair.

Each edge ``e = (u, v)`` owns two darts, ``(e, 0)`` anchored at u and
``(e, 1)`` anchored at v; a loop has both darts at the same vertex. A
transition system pairs the darts at every vertex. Following a dart along its
edge and then through the pairing at the far end traces the tours of the
system. Transitions are compared by ``(vertex, sorted edge ids)``, so the two
darts of a loop or of an edge seen from either side need no special handling.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence

import networkx as nx

from ..errors import (
    DegreeTooSmall, FormatError, LoopObstruction, NotADecomposition, NotConnected, NotEulerian,
)

Dart = tuple  # (edge id, side)


def opposite(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


class Multigraph:
    __slots__ = ("n", "edges", "_darts_at")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        self.n = n
        self.edges = [(int(u), int(v)) for u, v in edges]
        at = [[] for _ in range(n)]
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} = ({u},{v}) out of range")
            at[u].append((e, 0))
            at[v].append((e, 1))
        self._darts_at = [tuple(x) for x in at]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def anchor(self, d: Dart) -> int:
        return self.edges[d[0]][d[1]]

    def darts_at(self, v: int) -> tuple:
        return self._darts_at[v]

    def degree(self, v: int) -> int:
        return len(self._darts_at[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self._darts_at]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def is_eulerian(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees())

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for e, s in self._darts_at[u]:
                w = self.edges[e][1 - s]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(range(self.n))
        for e, (u, v) in enumerate(self.edges):
            h.add_edge(u, v, key=e)
        return h

    def __eq__(self, other) -> bool:
        return isinstance(other, Multigraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.edges)))

    def __repr__(self) -> str:
        return f"Multigraph({self.n}, {self.edges})"


def transition_key(m: Multigraph, a: Dart, b: Dart) -> tuple:
    """The transition {vertex, edge, edge} formed by pairing darts a and b."""
    x, y = a[0], b[0]
    return (m.anchor(a), (x, y) if x <= y else (y, x))


class TransitionSystem:
    """A perfect pairing of the darts at every vertex; ``partner`` maps each dart to its mate."""

    __slots__ = ("m", "partner")

    def __init__(self, m: Multigraph, partner: dict):
        self.m = m
        self.partner = dict(partner)

    def validate(self) -> None:
        m = self.m
        darts = {(e, s) for e in range(m.edge_count) for s in (0, 1)}
        if set(self.partner) != darts:
            raise NotADecomposition("the pairing must cover every dart exactly once")
        for a, b in self.partner.items():
            if a == b or self.partner.get(b) != a:
                raise NotADecomposition(f"dart {a} is not matched consistently")
            if m.anchor(a) != m.anchor(b):
                raise NotADecomposition(f"darts {a} and {b} sit at different vertices")

    @classmethod
    def from_pairs(cls, m: Multigraph, pairs: Iterable[tuple]) -> "TransitionSystem":
        partner = {}
        for a, b in pairs:
            a, b = tuple(a), tuple(b)
            if a in partner or b in partner:
                raise NotADecomposition(f"dart used twice in ({a}, {b})")
            partner[a] = b
            partner[b] = a
        ts = cls(m, partner)
        ts.validate()
        return ts

    @classmethod
    def from_tours(cls, m: Multigraph, tours: Iterable[Sequence[Dart]]) -> "TransitionSystem":
        """Pair the arriving and leaving darts at every step of every closed tour.

        A tour is the list of darts by which it leaves each successive vertex.
        """
        used = set()
        pairs = []
        for tour in tours:
            tour = [tuple(d) for d in tour]
            if not tour:
                raise NotADecomposition("empty tour")
            for i, d in enumerate(tour):
                if d[0] in used:
                    raise NotADecomposition(f"edge {d[0]} used twice")
                used.add(d[0])
                arrive = opposite(tour[i - 1])
                if m.anchor(arrive) != m.anchor(d):
                    raise NotADecomposition(f"tour is not closed at step {i}")
                pairs.append((arrive, d))
        if len(used) != m.edge_count:
            raise NotADecomposition("the tours do not cover every edge")
        return cls.from_pairs(m, pairs)

    def pairs(self) -> list[tuple]:
        return sorted((a, b) for a, b in self.partner.items() if a < b)

    def pairs_at(self, v: int) -> list[tuple]:
        return [(a, b) for a, b in self.pairs() if self.m.anchor(a) == v]

    def transitions(self) -> set:
        return {transition_key(self.m, a, b) for a, b in self.pairs()}

    def has_loop_transition(self) -> bool:
        return any(a[0] == b[0] for a, b in self.pairs())

    def tours(self) -> list[list[Dart]]:
        return tours_of(self.m, self.partner)

    def is_orthogonal(self, other) -> bool:
        other_keys = other.transitions() if isinstance(other, TransitionSystem) else set(other)
        return not (self.transitions() & other_keys)

    def __eq__(self, other) -> bool:
        return isinstance(other, TransitionSystem) and self.m == other.m and self.partner == other.partner

    def __repr__(self) -> str:
        return f"TransitionSystem({self.pairs()})"


def tours_of(m: Multigraph, partner: dict) -> list[list[Dart]]:
    """Tours traced by a complete pairing, each starting at its smallest dart."""
    seen = set()
    out = []
    for e in range(m.edge_count):
        for s in (0, 1):
            d0 = (e, s)
            if d0 in seen or opposite(d0) in seen:
                continue
            tour = []
            d = d0
            while True:
                tour.append(d)
                seen.add(d)
                d = partner[opposite(d)]
                if d == d0:
                    break
            out.append(tour)
    return out


def tour_vertices(m: Multigraph, tour: Sequence[Dart]) -> list[int]:
    return [m.anchor(d) for d in tour]


def tour_transitions(m: Multigraph, tour: Sequence[Dart]) -> list[tuple]:
    return [transition_key(m, opposite(tour[i - 1]), tour[i]) for i in range(len(tour))]


def is_euler_tour(m: Multigraph, tour: Sequence[Dart]) -> bool:
    if sorted(d[0] for d in tour) != list(range(m.edge_count)):
        return False
    return all(m.anchor(opposite(tour[i - 1])) == m.anchor(tour[i]) for i in range(len(tour)))


# text format --------------------------------------------------------------

def _fmt_dart(m: Multigraph, d: Dart) -> str:
    return f"{d[0]}.{d[1]}" if m.is_loop(d[0]) else str(d[0])


def format_mgraph(m: Multigraph, ts: Optional[TransitionSystem] = None) -> str:
    lines = [f"mgraph {m.n} {m.edge_count}"]
    lines += [f"e {e} {u} {v}" for e, (u, v) in enumerate(m.edges)]
    if ts is not None:
        for v in range(m.n):
            parts = [f"{_fmt_dart(m, a)},{_fmt_dart(m, b)}" for a, b in ts.pairs_at(v)]
            lines.append(f"t {v} : " + " ".join(parts))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_dart(m: Multigraph, tok: str, v: int, lineno: int) -> Dart:
    mt = re.fullmatch(r"(\d+)(?:\.([01]))?", tok)
    if not mt:
        raise FormatError(f"line {lineno}: bad dart {tok!r}")
    e = int(mt.group(1))
    if e >= m.edge_count:
        raise FormatError(f"line {lineno}: unknown edge {e}")
    if mt.group(2) is not None:
        d = (e, int(mt.group(2)))
        if m.anchor(d) != v:
            raise FormatError(f"line {lineno}: dart {tok} is not at vertex {v}")
        return d
    if m.is_loop(e):
        raise FormatError(f"line {lineno}: loop {e} needs a side (.0 or .1)")
    u, w = m.edges[e]
    if v == u:
        return (e, 0)
    if v == w:
        return (e, 1)
    raise FormatError(f"line {lineno}: edge {e} is not incident with {v}")


def parse_mgraphs(text: str) -> list[tuple[Multigraph, Optional[TransitionSystem]]]:
    out = []
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    k = 0
    while k < len(lines):
        lineno, ln = lines[k]
        head = ln.split()
        if head[0] != "mgraph" or len(head) != 3:
            raise FormatError(f"line {lineno}: expected 'mgraph <n> <m>'")
        try:
            n, count = int(head[1]), int(head[2])
        except ValueError:
            raise FormatError(f"line {lineno}: bad header") from None
        k += 1
        edges = {}
        trans = []
        while True:
            if k >= len(lines):
                raise FormatError("missing 'end'")
            lineno, ln = lines[k]
            k += 1
            tok = ln.split()
            if tok[0] == "end":
                break
            if tok[0] == "e":
                if len(tok) != 4:
                    raise FormatError(f"line {lineno}: expected 'e <id> <u> <v>'")
                try:
                    e, u, v = map(int, tok[1:])
                except ValueError:
                    raise FormatError(f"line {lineno}: bad edge line") from None
                if e in edges:
                    raise FormatError(f"line {lineno}: duplicate edge id {e}")
                edges[e] = (u, v)
            elif tok[0] == "t":
                if len(tok) < 3 or tok[2] != ":":
                    raise FormatError(f"line {lineno}: expected 't <v> : <id,id> ...'")
                trans.append((lineno, int(tok[1]), tok[3:]))
            else:
                raise FormatError(f"line {lineno}: unknown line {tok[0]!r}")
        if sorted(edges) != list(range(count)):
            raise FormatError(f"edge ids must be 0..{count - 1}")
        try:
            m = Multigraph(n, [edges[e] for e in range(count)])
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        ts = None
        if trans:
            pairs = []
            for ln_no, v, toks in trans:
                for t in toks:
                    a, sep, b = t.partition(",")
                    if not sep:
                        raise FormatError(f"line {ln_no}: bad pair {t!r}")
                    pairs.append((_parse_dart(m, a, v, ln_no), _parse_dart(m, b, v, ln_no)))
            try:
                ts = TransitionSystem.from_pairs(m, pairs)
            except NotADecomposition as exc:
                raise FormatError(str(exc)) from None
        out.append((m, ts))
    return out


def parse_mgraph(text: str) -> tuple[Multigraph, Optional[TransitionSystem]]:
    items = parse_mgraphs(text)
    if len(items) != 1:
        raise FormatError(f"expected one multigraph, found {len(items)}")
    return items[0]


# admissibility -------------------------------------------------------------

def _require_min_degree(m: Multigraph, low: int = 3) -> None:
    if m.n and m.min_degree() < low:
        raise DegreeTooSmall(f"minimum degree {m.min_degree()} is below {low}")


def edge_blocks(m: Multigraph) -> list[int]:
    """Block index of every edge (a loop is a block of its own)."""
    h = nx.Graph()
    for e, (u, v) in enumerate(m.edges):
        if u == v:
            h.add_edges_from([(("v", u), ("l", e, 0)), (("l", e, 0), ("l", e, 1)), (("l", e, 1), ("v", u))])
        else:
            h.add_edges_from([(("v", u), ("e", e)), (("e", e), ("v", v))])
    block = [-1] * m.edge_count
    for i, comp in enumerate(nx.biconnected_components(h)):
        for node in comp:
            if node[0] == "e":
                block[node[1]] = i
            elif node[0] == "l":
                block[node[1]] = i
    return block


def forced_transitions(m: Multigraph, ts: TransitionSystem) -> list[tuple]:
    """Transitions of ts that every cycle decomposition must contain."""
    _require_min_degree(m)
    block = edge_blocks(m)
    out = []
    for a, b in ts.pairs():
        if a[0] == b[0]:
            out.append(transition_key(m, a, b))
            continue
        blk = block[a[0]]
        if blk != block[b[0]]:
            continue
        v = m.anchor(a)
        if sum(1 for d in m.darts_at(v) if block[d[0]] == blk) == 2:
            out.append(transition_key(m, a, b))
    return out


def is_admissible(m: Multigraph, ts: TransitionSystem) -> bool:
    return not forced_transitions(m, ts)


# Euler tours and transition repair -------------------------------------------

def euler_tour(m: Multigraph, start: int = 0) -> list[Dart]:
    """An Euler tour (Hierholzer), as the list of leaving darts."""
    if not m.is_eulerian():
        raise NotEulerian("some vertex has odd degree")
    if not m.is_connected():
        raise NotConnected("the multigraph is not connected")
    if m.edge_count == 0:
        return []
    used = [False] * m.edge_count
    ptr = [0] * m.n
    stack = [(None, start)]
    circuit = []
    while stack:
        dart, v = stack[-1]
        darts = m.darts_at(v)
        while ptr[v] < len(darts) and used[darts[ptr[v]][0]]:
            ptr[v] += 1
        if ptr[v] == len(darts):
            stack.pop()
            if dart is not None:
                circuit.append(dart)
        else:
            d = darts[ptr[v]]
            used[d[0]] = True
            stack.append((d, m.anchor(opposite(d))))
    circuit.reverse()
    return circuit


def faulty_positions(m: Multigraph, tour: Sequence[Dart], keys: set) -> list[int]:
    return [i for i, t in enumerate(tour_transitions(m, tour)) if t in keys]


def _reroute(tour: list, j: int) -> list:
    """Reverse the closed sub-walk tour[0:j]; both ends sit at the same vertex."""
    return [opposite(d) for d in reversed(tour[:j])] + tour[j:]


def orthogonal_euler_tour(
    m: Multigraph,
    ts: TransitionSystem,
    tour: Optional[Sequence[Dart]] = None,
    history: Optional[list] = None,
) -> list[Dart]:
    """An Euler tour sharing no transition with ts.

    Starting from ``tour`` (or a Hierholzer tour), a faulty transition is moved
    to the seam of the tour and one of the closed sub-walks through its vertex
    is reversed; every step removes at least one faulty transition. The faulty
    counts seen along the way are appended to ``history``.
    """
    _require_min_degree(m, 4)
    if not m.is_connected():
        raise NotConnected("the multigraph is not connected")
    if not m.is_eulerian():
        raise NotEulerian("some vertex has odd degree")
    keys = ts.transitions()
    for v in range(m.n):
        if m.degree(v) != 4:
            continue
        for e, s in m.darts_at(v):
            if s == 0 and m.is_loop(e) and (v, (e, e)) not in keys:
                raise LoopObstruction(f"the loop transition of edge {e} at vertex {v} is not in the system")
    t = list(tour) if tour is not None else euler_tour(m)
    if not is_euler_tour(m, t):
        raise NotADecomposition("the starting tour is not an Euler tour")
    faulty = faulty_positions(m, t, keys)
    if history is not None:
        history.append(len(faulty))
    while faulty:
        i = faulty[0]
        t = t[i:] + t[:i]
        v = m.anchor(t[0])
        best = None
        for j in range(1, len(t)):
            if m.anchor(t[j]) != v:
                continue
            cand = _reroute(t, j)
            f = faulty_positions(m, cand, keys)
            if len(f) < len(faulty) and (best is None or len(f) < len(best[1])):
                best = (cand, f)
        if best is None:
            raise LoopObstruction(f"no rerouting at vertex {v} removes a shared transition")
        t, faulty = best
        if history is not None:
            history.append(len(faulty))
    return t
