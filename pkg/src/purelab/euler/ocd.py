"""Orthogonal cycle decompositions and the cycle double cover pipeline.

Two independent routes decide whether a transition system has an orthogonal
cycle decomposition. The parity route reads a black anticlique off the parity
class of the corresponding bicoloured graph, replays the moves that reach it as
twists of the alternating tour and splits the tour at the anticlique. The
search route picks a pairing at every vertex, avoiding the system's
transitions, and backtracks as soon as a partial tour repeats a vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import BudgetExceeded, NoPerfectMatching, NotCubic, NotConnected
from ..graph import Graph, bits
from ..parity import ParityMove, apply_moves, find_black_anticlique, purity
from ..search import DEFAULT_BUDGET
from .correspondence import correspondence, halve
from .dow import alternance_graph, cycles_from_anticlique, twist
from .multigraph import Multigraph, TransitionSystem, opposite, transition_key, _require_min_degree

Cycle = list  # edge ids in traversal order


# verification --------------------------------------------------------------

def cycle_vertices(m: Multigraph, cycle) -> Optional[list[int]]:
    """Vertices of a closed trail given by its edge ids, or None if the edges do not chain."""
    if not cycle:
        return None
    e0 = cycle[0]
    for start in m.edges[e0]:
        cur = start
        verts = []
        ok = True
        for e in cycle:
            u, v = m.edges[e]
            if cur == u:
                verts.append(u)
                cur = v
            elif cur == v:
                verts.append(v)
                cur = u
            else:
                ok = False
                break
        if ok and cur == start:
            return verts
    return None


def cycle_transitions(m: Multigraph, cycle) -> set:
    verts = cycle_vertices(m, cycle)
    k = len(cycle)
    return {(verts[i], tuple(sorted((cycle[i - 1], cycle[i])))) for i in range(k)}


def is_cycle(m: Multigraph, cycle) -> bool:
    verts = cycle_vertices(m, cycle)
    return verts is not None and len(set(verts)) == len(verts) and len(set(cycle)) == len(cycle)


def verify_decomposition(m: Multigraph, ts: TransitionSystem, cycles) -> bool:
    """Every edge in exactly one cycle, every member a cycle, no transition shared with ts."""
    used = sorted(e for c in cycles for e in c)
    if used != list(range(m.edge_count)):
        return False
    keys = ts.transitions()
    for c in cycles:
        if not is_cycle(m, c):
            return False
        if len(c) > 1 and cycle_transitions(m, c) & keys:
            return False
        if len(c) == 1 and (m.edges[c[0]][0], (c[0], c[0])) in keys:
            return False
    return True


# parity route --------------------------------------------------------------

def _moves_to_word(corr, moves):
    w = corr.word
    for mv in moves:
        if not isinstance(mv, ParityMove):
            raise ValueError("strong moves have no tour counterpart")
        if mv.v is None:
            w = twist(w, corr.pairing[mv.u][0])
        else:
            a, b = corr.pairing[mv.u][0], corr.pairing[mv.v][0]
            w = twist(twist(twist(w, a), b), a)
    return w


def ocd_by_parity(m: Multigraph, ts: TransitionSystem, budget: int = DEFAULT_BUDGET) -> Optional[list[Cycle]]:
    """Orthogonal decomposition of a connected 4-regular system via its parity class, or None if pure."""
    corr = correspondence(m, ts)
    rep = purity(corr.graph, budget)
    if rep.pure:
        if not rep.orbit.complete:
            raise BudgetExceeded(budget)
        return None
    moves = rep.witness_word
    h = apply_moves(corr.graph, moves)
    a = find_black_anticlique(h)
    w = _moves_to_word(corr, moves)
    if halve(alternance_graph(w), corr.pairing) != h:  # pragma: no cover - guards the twist rule
        raise AssertionError("twists and parity moves disagree")
    letters = [corr.pairing[v][0] for v in bits(a)]
    pieces = cycles_from_anticlique(w, letters)
    cycles = [[e for e in p.edges if corr.tg.is_solid(e)] for p in pieces]
    cycles = [c for c in cycles if c]
    if not verify_decomposition(m, ts, cycles):  # pragma: no cover
        raise AssertionError("decomposition read from the anticlique is invalid")
    return cycles


# search route --------------------------------------------------------------

def _pairings(darts: list):
    if not darts:
        yield []
        return
    a = darts[0]
    for i in range(1, len(darts)):
        rest = darts[1:i] + darts[i + 1 :]
        for tail in _pairings(rest):
            yield [(a, darts[i])] + tail


def ocd_by_search(m: Multigraph, ts: TransitionSystem, budget: int = DEFAULT_BUDGET) -> Optional[list[Cycle]]:
    """Backtracking over vertex pairings avoiding ts; first decomposition found, or None."""
    _require_min_degree(m)
    keys = ts.transitions()
    order = sorted(range(m.n), key=lambda v: (-m.degree(v), v))
    options = []
    for v in order:
        opts = []
        seen = set()
        for p in _pairings(list(m.darts_at(v))):
            tk = [transition_key(m, a, b) for a, b in p]
            if any(t in keys for t in tk):
                continue
            sig = frozenset(tk)
            if sig in seen:
                continue
            seen.add(sig)
            opts.append(p)
        options.append(opts)
    partner: dict = {}
    nodes = 0

    def trail_ok(a, b) -> bool:
        # vertices passed through by the partial trail that uses the pair (a, b)
        verts = [m.anchor(a)]
        cur = b
        while True:
            arr = opposite(cur)
            if arr == a:
                return len(set(verts)) == len(verts)
            nxt = partner.get(arr)
            if nxt is None:
                break
            verts.append(m.anchor(arr))
            cur = nxt
        cur = a
        while True:
            arr = opposite(cur)
            nxt = partner.get(arr)
            if nxt is None:
                break
            verts.append(m.anchor(arr))
            cur = nxt
        return len(set(verts)) == len(verts)

    def rec(k):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(budget, nodes)
        if k == len(order):
            return True
        for p in options[k]:
            for a, b in p:
                partner[a] = b
                partner[b] = a
            if all(trail_ok(a, b) for a, b in p) and rec(k + 1):
                return True
            for a, b in p:
                del partner[a]
                del partner[b]
        return False

    if not rec(0):
        return None
    tours = TransitionSystem(m, partner).tours()
    cycles = [[d[0] for d in t] for t in tours]
    if not verify_decomposition(m, ts, cycles):  # pragma: no cover
        raise AssertionError("search produced an invalid decomposition")
    return cycles


def orthogonal_cycle_decomposition(
    m: Multigraph, ts: TransitionSystem, method: str = "auto", budget: int = DEFAULT_BUDGET
) -> Optional[list[Cycle]]:
    """``method`` is 'parity', 'search' or 'auto' (parity when 4-regular and connected)."""
    if method == "auto":
        four = all(d == 4 for d in m.degrees()) and m.is_connected()
        method = "parity" if four else "search"
    if method == "parity":
        return ocd_by_parity(m, ts, budget)
    if method == "search":
        return ocd_by_search(m, ts, budget)
    raise ValueError(f"unknown method {method!r}")


# cycle double covers -------------------------------------------------------

def _require_cubic(g: Graph) -> None:
    if any(g.degree(v) != 3 for v in range(g.n)):
        raise NotCubic("every vertex must have degree 3")
    if not g.is_connected():
        raise NotConnected("the graph is not connected")


def line_graph_system(g: Graph) -> tuple[Multigraph, TransitionSystem, list]:
    """Line graph of a cubic graph with the triangle system: at each edge-vertex the two
    line edges of the same end's triangle are paired."""
    _require_cubic(g)
    gedges = g.edges()
    inc = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(gedges):
        inc[u].append(i)
        inc[v].append(i)
    ledges = []
    tri = []  # line edges of each vertex's triangle
    for u in range(g.n):
        a, b, c = inc[u]
        ids = []
        for x, y in ((a, b), (b, c), (a, c)):
            ids.append(len(ledges))
            ledges.append((x, y))
        tri.append(ids)
    m = Multigraph(len(gedges), ledges)
    pairs = []
    for u in range(g.n):
        for x in inc[u]:
            ds = [(e, s) for e in tri[u] for s in (0, 1) if m.anchor((e, s)) == x]
            pairs.append(tuple(ds))
    return m, TransitionSystem.from_pairs(m, pairs), gedges


def perfect_matchings(g: Graph):
    """Perfect matchings as lists of edges (u, v), u < v, in lexicographic order."""
    def rec(free):
        if not free:
            yield []
            return
        u = (free & -free).bit_length() - 1
        for v in bits(g.rows[u] & free):
            for rest in rec(free & ~(1 << u) & ~(1 << v)):
                yield [(u, v)] + rest
    yield from rec(g.vertex_mask)


def factor_system(g: Graph, matching) -> tuple[Multigraph, TransitionSystem, list, list]:
    """Contract a perfect matching; the complementary 2-factor gives the transitions."""
    gedges = g.edges()
    mset = set(matching)
    node = {}
    for k, (u, v) in enumerate(matching):
        node[u] = k
        node[v] = k
    factor = [i for i, e in enumerate(gedges) if e not in mset]
    medges = [(node[gedges[i][0]], node[gedges[i][1]]) for i in factor]
    m = Multigraph(len(matching), medges)
    pairs = []
    for x in range(g.n):
        ds = [(j, s) for j, i in enumerate(factor) for s in (0, 1) if gedges[i][s] == x]
        pairs.append(tuple(ds))
    return m, TransitionSystem.from_pairs(m, pairs), factor, gedges


def _factor_cycles(g: Graph, factor, gedges) -> list[Cycle]:
    left = set(factor)
    out = []
    while left:
        first = min(left)
        u, v = gedges[first]
        cyc = [first]
        left.discard(first)
        cur = v
        while cur != u:
            nxt = next(i for i in left if cur in gedges[i])
            left.discard(nxt)
            cyc.append(nxt)
            a, b = gedges[nxt]
            cur = b if a == cur else a
        out.append(cyc)
    return out


def is_cycle_double_cover(g: Graph, cycles) -> bool:
    gedges = g.edges()
    count = [0] * len(gedges)
    for c in cycles:
        deg = {}
        for i in c:
            count[i] += 1
            for x in gedges[i]:
                deg[x] = deg.get(x, 0) + 1
        if len(set(c)) != len(c) or any(d != 2 for d in deg.values()):
            return False
        # connected
        verts = set(deg)
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for i in c:
                a, b = gedges[i]
                for y in ((b,) if a == x else (a,) if b == x else ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        if seen != verts:
            return False
    return all(k == 2 for k in count)


@dataclass
class CdcResult:
    route: str
    cycles: Optional[list]
    obstruction: Optional[str] = None
    tried: int = 0
    notes: list = field(default_factory=list)


def cdc_by_line_graph(g: Graph, method: str = "auto", budget: int = DEFAULT_BUDGET) -> CdcResult:
    m, ts, gedges = line_graph_system(g)
    ocd = orthogonal_cycle_decomposition(m, ts, method, budget)
    if ocd is None:
        return CdcResult("line", None, "pure", 1)
    # a line-graph cycle passes from edge to edge through distinct ends: a cycle of g
    cycles = []
    for c in ocd:
        verts = cycle_vertices(m, c)
        cycles.append(verts)
    if not is_cycle_double_cover(g, cycles):  # pragma: no cover
        raise AssertionError("line graph route produced an invalid cover")
    return CdcResult("line", cycles, None, 1)


def cdc_by_factor(g: Graph, method: str = "auto", budget: int = DEFAULT_BUDGET) -> CdcResult:
    _require_cubic(g)
    tried = 0
    for matching in perfect_matchings(g):
        tried += 1
        m, ts, factor, gedges = factor_system(g, matching)
        ocd = orthogonal_cycle_decomposition(m, ts, method, budget)
        if ocd is None:
            continue
        index = {e: i for i, e in enumerate(gedges)}
        medge = {k: index[e] for k, e in enumerate(matching)}
        cycles = []
        for c in ocd:
            verts = cycle_vertices(m, c)
            lifted = []
            for pos, j in enumerate(c):
                lifted.append(factor[j])
                nxt = c[(pos + 1) % len(c)]
                # the shared contracted vertex; its matching edge sits between the two ends
                x = verts[(pos + 1) % len(c)]
                a = set(gedges[factor[j]])
                b = set(gedges[factor[nxt]])
                if not (a & b):
                    lifted.append(medge[x])
            cycles.append(lifted)
        cycles += _factor_cycles(g, factor, gedges)
        if not is_cycle_double_cover(g, cycles):  # pragma: no cover
            raise AssertionError("factor route produced an invalid cover")
        return CdcResult("factor", cycles, None, tried)
    if tried == 0:
        raise NoPerfectMatching("the graph has no perfect matching")
    return CdcResult("factor", None, "pure", tried)


def cdc_search(g: Graph, route: str = "both", method: str = "auto", budget: int = DEFAULT_BUDGET) -> CdcResult:
    """Cycle double cover of a connected cubic graph; ``route`` is 'line', 'factor' or 'both'."""
    if route == "line":
        return cdc_by_line_graph(g, method, budget)
    if route == "factor":
        return cdc_by_factor(g, method, budget)
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    res = cdc_by_line_graph(g, method, budget)
    if res.cycles is not None:
        return res
    other = cdc_by_factor(g, method, budget)
    other.notes.append("line graph route blocked")
    return other
