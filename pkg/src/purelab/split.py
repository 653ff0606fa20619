"""Splits, rooted graphs and essential decompositions.

A split cuts the vertex set in two sides of size at least two whose crossing
edges form a complete bipartite graph between the two frontiers. Contracting
either side to a single root vertex gives a rooted graph, and the six root/leaf
constructions below turn a split into pairs of smaller bicoloured graphs. If
both members of one pair are pure, the whole graph is pure, which gives a
recursive purity prover that never enumerates the large class.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .canon import canonical_form, key_hex
from .errors import BudgetExceeded, NonAdjacent, NotASplit, NotPure, RootIsolated
from .graph import Graph, bits, delete_vertex, mask_of, popcount
from .parity import _black_move, _white_move, class_keys, is_pure
from .search import DEFAULT_BUDGET


@dataclass(frozen=True)
class Split:
    v1: int
    v2: int

    def sides(self) -> tuple[list[int], list[int]]:
        return list(bits(self.v1)), list(bits(self.v2))

    def swapped(self) -> "Split":
        return Split(self.v2, self.v1)

    def __str__(self) -> str:
        a, b = self.sides()
        return f"{' '.join(map(str, a))} | {' '.join(map(str, b))}"


def _as_mask(s) -> int:
    return s if isinstance(s, int) else mask_of(s)


def make_split(v1, v2) -> Split:
    return Split(_as_mask(v1), _as_mask(v2))


def frontiers(g: Graph, s: Split) -> tuple[int, int]:
    """(N(v2) within v1, N(v1) within v2)."""
    r = c = 0
    for u in bits(s.v1):
        nu = g.rows[u] & s.v2
        if nu:
            r |= 1 << u
            c |= nu
    return r, c


def is_split(g: Graph, s: Split) -> bool:
    if s.v1 & s.v2 or (s.v1 | s.v2) != g.vertex_mask:
        return False
    if popcount(s.v1) < 2 or popcount(s.v2) < 2:
        return False
    r, c = frontiers(g, s)
    return all(g.rows[u] & s.v2 == c for u in bits(r))


def _check_split(g: Graph, s: Split) -> None:
    if not is_split(g, s):
        raise NotASplit(f"{s} is not a split")


def find_splits(g: Graph, budget: int = DEFAULT_BUDGET) -> list[Split]:
    """All splits, each once (vertex 0 always on the first side). Empty means prime.

    Vertices are assigned to sides in order. The crossing edges between the
    assigned vertices must already form a complete bipartite graph between the
    two frontiers, and that property survives restriction, so a violating
    partial assignment is cut immediately.
    """
    n = g.n
    if n < 4:
        return []
    rows = g.rows
    out: list[Split] = []
    nodes = 0

    def rec(x, a, b, r, c):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(budget, nodes)
        if x == n:
            if popcount(a) >= 2 and popcount(b) >= 2:
                out.append(Split(a, b))
            return
        bit = 1 << x
        # x on the first side
        nx = rows[x] & b
        if not nx:
            rec(x + 1, a | bit, b, r, c)
        elif not c:
            rec(x + 1, a | bit, b, bit, nx)
        elif nx == c:
            rec(x + 1, a | bit, b, r | bit, c)
        # x on the second side
        ny = rows[x] & a
        if not ny:
            rec(x + 1, a, b | bit, r, c)
        elif not r:
            rec(x + 1, a, b | bit, ny, bit)
        elif ny == r:
            rec(x + 1, a, b | bit, r, c | bit)

    rec(1, 1, 0, 0, 0)
    return out


def is_prime(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    return not find_splits(g, budget)


# rooted graphs ----------------------------------------------------------

@dataclass(frozen=True)
class RootedGraph:
    """A graph whose root has no colour; the root's bit in ``g.black`` is ignored.

    ``labels[i]`` is the vertex of the original graph that vertex i stands for
    (the root maps to None).
    """

    g: Graph
    root: int
    labels: Optional[tuple] = None

    def __post_init__(self):
        if not 0 <= self.root < self.g.n:
            raise ValueError("root out of range")
        if self.g.black is None:
            raise ValueError("the non-root vertices must be coloured")
        if (self.g.black >> self.root) & 1:
            object.__setattr__(self, "g", Graph(self.g.n, self.g.rows, self.g.black & ~(1 << self.root)))

    @property
    def root_neighbours(self) -> list[int]:
        return self.g.neighbours(self.root)


def rooted_from_vertex(g: Graph, u: int) -> RootedGraph:
    """(g, u) with the colour of u forgotten."""
    return RootedGraph(g, u, tuple(range(g.n)))


def _contract(g: Graph, keep: int, other: int) -> RootedGraph:
    keep_list = list(bits(keep))
    index = {v: i for i, v in enumerate(keep_list)}
    z = len(keep_list)
    rows = [0] * (z + 1)
    black = 0
    for v in keep_list:
        i = index[v]
        for w in bits(g.rows[v] & keep):
            rows[i] |= 1 << index[w]
        if g.rows[v] & other:
            rows[i] |= 1 << z
            rows[z] |= 1 << i
        if g.is_black(v):
            black |= 1 << i
    return RootedGraph(Graph(z + 1, rows, black), z, tuple(keep_list) + (None,))


def induced_rooted_graphs(g: Graph, s: Split) -> tuple[RootedGraph, RootedGraph]:
    """Contract the far side of the split to a root, once for each side; the root is the last vertex."""
    _check_split(g, s)
    if g.black is None:
        raise ValueError("a bicoloured graph is required")
    return _contract(g, s.v1, s.v2), _contract(g, s.v2, s.v1)


def _with_root(rg: RootedGraph, black: bool) -> Graph:
    b = rg.g.black | ((1 << rg.root) if black else 0)
    return Graph(rg.g.n, rg.g.rows, b)


def root_graphs(rg: RootedGraph) -> tuple[Graph, Graph, Graph]:
    """(rw, rb, rc): root white, root black, and white-style complement at the root followed by a black root."""
    rw = _with_root(rg, False)
    rb = _with_root(rg, True)
    h = _white_move(rw, rg.root)
    rc = Graph(h.n, h.rows, h.black | (1 << rg.root))
    return rw, rb, rc


def lowest_root_neighbour(rg: RootedGraph) -> int:
    nz = rg.g.rows[rg.root]
    if not nz:
        raise RootIsolated("the root has no neighbour")
    return (nz & -nz).bit_length() - 1


def pair_complement(g: Graph, u: int, v: int) -> Graph:
    """Complement with respect to {u, v}, where u is black and v is a neighbour of u."""
    if not g.has_edge(u, v):
        raise NonAdjacent(f"{u} and {v} are not adjacent")
    if not g.is_black(u):
        raise ValueError(f"vertex {u} must be black")
    if g.is_black(v):
        return _black_move(g, v, u)
    # v is white; complementing at v turns u white
    return _white_move(_white_move(g, v), u)


def lc_graph(rg: RootedGraph, v: Optional[int] = None) -> Graph:
    if v is None:
        v = lowest_root_neighbour(rg)
    elif not rg.g.has_edge(rg.root, v):
        raise NonAdjacent(f"{v} is not adjacent to the root")
    return delete_vertex(pair_complement(_with_root(rg, True), rg.root, v), rg.root)


def leaf_graphs(rg: RootedGraph, v: Optional[int] = None) -> tuple[Graph, Graph, Optional[Graph]]:
    """(lw, lb, lc_v). lc_v is None when the root is isolated; v defaults to the lowest root neighbour."""
    z = rg.root
    lw = delete_vertex(_with_root(rg, False), z)
    lb = delete_vertex(_white_move(_with_root(rg, False), z), z)
    lc = lc_graph(rg, v) if rg.g.rows[z] else None
    return lw, lb, lc


@dataclass(frozen=True)
class Decomposition:
    """One root/leaf pair. kind is 'w', 'b', 'c' or 'empty'; root_side is 1 or 2."""

    kind: str
    root_side: int
    root_graph: Graph
    leaf_graph: Graph

    @property
    def graphs(self) -> tuple[Graph, Graph]:
        return self.root_graph, self.leaf_graph


EMPTY = Graph(0, (), 0)


def essential_decompositions(g: Graph, s: Split) -> list[Decomposition]:
    """The root/leaf pairs along a split.

    Six pairs when an edge crosses the split; otherwise the four w/b pairs and
    one pair of empty graphs.
    """
    g1, g2 = induced_rooted_graphs(g, s)
    out = []
    crossing = bool(g1.g.rows[g1.root])
    for side, (ri, lj) in ((1, (g1, g2)), (2, (g2, g1))):
        rw, rb, rc = root_graphs(ri)
        lw, lb, lc = leaf_graphs(lj)
        out.append(Decomposition("w", side, rw, lw))
        out.append(Decomposition("b", side, rb, lb))
        if crossing:
            out.append(Decomposition("c", side, rc, lc))
    if not crossing:
        out.append(Decomposition("empty", 0, EMPTY, EMPTY))
    return out


# recursive purity prover -------------------------------------------------

_PENTAGON_KEYS: Optional[frozenset] = None


def _pentagon_keys() -> frozenset:
    global _PENTAGON_KEYS
    if _PENTAGON_KEYS is None:
        c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)], "wwwww")
        _PENTAGON_KEYS = class_keys(c5)
    return _PENTAGON_KEYS


def _fmt_side(vs) -> str:
    return "(" + " ".join(map(str, vs)) + ")"


def purity_by_decomposition(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    small: int = 6,
    memo: Optional[dict] = None,
) -> Optional[str]:
    """A certificate that g is pure, built from splits, or None.

    None does not mean impure: the prover only follows essential decompositions
    down to the white one-point graph, the pentagon class, and graphs with at
    most ``small`` vertices decided by enumeration.
    """
    if g.black is None:
        raise ValueError("a bicoloured graph is required")
    memo = {} if memo is None else memo
    return _prove(g, g.n, budget, small, memo)


def _prove(g: Graph, depth: int, budget: int, small: int, memo: dict) -> Optional[str]:
    key = canonical_form(g)
    if key in memo:
        return memo[key]
    cert = None
    if g.n == 0:
        cert = None
    elif g.n == 1:
        cert = None if g.black else "(base k1)"
    elif g.n == 5 and key in _pentagon_keys():
        cert = "(base pentagon)"
    elif g.n <= small:
        cert = f"(base small {key_hex(key)})" if is_pure(g, budget) else None
    elif depth > 0:
        cert = _prove_by_split(g, key, depth, budget, small, memo)
    memo[key] = cert
    return cert


def _prove_by_split(g, key, depth, budget, small, memo) -> Optional[str]:
    for s in find_splits(g, budget):
        a, b = s.sides()
        for d in essential_decompositions(g, s):
            if d.kind == "empty":
                continue
            left = _prove(d.root_graph, depth - 1, budget, small, memo)
            if left is None:
                continue
            right = _prove(d.leaf_graph, depth - 1, budget, small, memo)
            if right is None:
                continue
            v1, v2 = (a, b) if d.root_side == 1 else (b, a)
            return (
                f"(pure {key_hex(key)} by-split {_fmt_side(v1)} {_fmt_side(v2)} "
                f"left {left} right {right})"
            )
    return None


# critical and tight vertices ---------------------------------------------

def _require_pure(g: Graph, budget: int) -> None:
    if g.black is None:
        raise ValueError("a bicoloured graph is required")
    if not is_pure(g, budget):
        raise NotPure("the graph is not pure")


def induced_root_graphs(g: Graph, u: int) -> tuple[Graph, Graph, Graph]:
    return root_graphs(rooted_from_vertex(g, u))


def critical_vertices(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Mask of vertices u for which some root graph induced by u is impure."""
    _require_pure(g, budget)
    out = 0
    for u in range(g.n):
        if any(not is_pure(h, budget) for h in set(induced_root_graphs(g, u))):
            out |= 1 << u
    return out


def tight_vertices(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Mask of vertices u such that g - u is impure."""
    _require_pure(g, budget)
    out = 0
    for u in range(g.n):
        if not is_pure(delete_vertex(g, u), budget):
            out |= 1 << u
    return out
