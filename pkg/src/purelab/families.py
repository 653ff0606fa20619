"""Generators for the named graph families and a few number-theoretic helpers."""
from __future__ import annotations

from typing import Iterable

from .graph import Graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("negative order")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def closed_connection_set(n: int, connection: Iterable[int]) -> set[int]:
    s = set()
    for c in connection:
        c %= n
        if c == 0:
            raise ValueError("0 is not allowed in a connection set")
        s.add(c)
        s.add((-c) % n)
    return s


def circulant(n: int, connection: Iterable[int]) -> Graph:
    """Cay(Z_n, S) where S is the given set closed under negation."""
    s = closed_connection_set(n, connection)
    return Graph.from_edges(n, [(i, (i + c) % n) for i in range(n) for c in s if i < (i + c) % n])


def connection_set(g: Graph) -> set[int]:
    """Neighbours of 0 in a graph assumed to be a circulant."""
    return set(g.neighbours(0))


def _isprime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


def quadratic_residues(p: int) -> set[int]:
    if p < 3 or not _isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    return {x * x % p for x in range(1, p)}


def paley(p: int) -> Graph:
    if not _isprime(p) or p % 4 != 1:
        raise ValueError("Paley graphs need a prime p with p = 1 mod 4")
    return circulant(p, quadratic_residues(p))


def pentagon_bouquet(m: int) -> Graph:
    """m pentagons glued at vertex 0; pentagon i uses vertices 4i+1..4i+4 in cyclic order."""
    if m < 1:
        raise ValueError("m must be at least 1")
    edges = []
    for i in range(m):
        a = [0] + [4 * i + k for k in range(1, 5)]
        edges += [(a[k], a[(k + 1) % 5]) for k in range(5)]
    return Graph.from_edges(4 * m + 1, edges)


def fdf_chain(m: int) -> Graph:
    """m copies of two pentagons sharing a vertex, cut vertices 0..m-1 joined by a path."""
    if m < 1:
        raise ValueError("m must be at least 1")
    edges = [(i, i + 1) for i in range(m - 1)]
    for i in range(m):
        base = m + 8 * i
        for half in range(2):
            ring = [i] + [base + 4 * half + k for k in range(4)]
            edges += [(ring[k], ring[(k + 1) % 5]) for k in range(5)]
    return Graph.from_edges(9 * m, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def k5_two_pentagons_ts():
    """K5 with the transition system made of the cycles (0,1,2,3,4) and (0,2,4,1,3)."""
    from .euler.multigraph import Multigraph, TransitionSystem

    cycles = [(0, 1, 2, 3, 4), (0, 2, 4, 1, 3)]
    edges = []
    tours = []
    for cyc in cycles:
        tour = []
        for k in range(5):
            u, v = cyc[k], cyc[(k + 1) % 5]
            tour.append((len(edges), 0))
            edges.append((u, v))
        tours.append(tour)
    m = Multigraph(5, edges)
    return m, TransitionSystem.from_tours(m, tours)


def strongly_regular_mod(g: Graph, s: int, params) -> bool:
    """Is g strongly regular modulo s with parameters (v, k, lambda, mu)?"""
    if s < 2:
        raise ValueError("modulus must be at least 2")
    v, k, lam, mu = params
    if (g.n - v) % s:
        return False
    rows = g.rows
    for a in range(g.n):
        if (bin(rows[a]).count("1") - k) % s:
            return False
        for b in range(a + 1, g.n):
            common = bin(rows[a] & rows[b]).count("1")
            want = lam if (rows[a] >> b) & 1 else mu
            if (common - want) % s:
                return False
    return True


def _ints(params) -> list[int]:
    return [int(x) for x in params]


def gen(kind: str, params=()):
    """Build a family member from a kind name and a list of string or int parameters."""
    params = list(params)
    if kind == "cycle":
        return cycle(*_ints(params))
    if kind == "path":
        return path(*_ints(params))
    if kind == "complete":
        return complete(*_ints(params))
    if kind == "circulant":
        if len(params) != 2:
            raise ValueError("circulant needs a modulus and a connection list like 1,3,4")
        conn = params[1]
        if isinstance(conn, str):
            conn = [int(x) for x in conn.split(",") if x]
        return circulant(int(params[0]), conn)
    if kind == "paley":
        return paley(*_ints(params))
    if kind == "pentagon_bouquet":
        return pentagon_bouquet(*_ints(params))
    if kind == "fdf_chain":
        return fdf_chain(*_ints(params))
    if kind == "petersen":
        return petersen()
    if kind == "complete_bipartite":
        return complete_bipartite(*_ints(params))
    if kind == "k5_two_pentagons_ts":
        return k5_two_pentagons_ts()
    raise ValueError(f"unknown family {kind!r}")


KINDS = (
    "cycle", "path", "complete", "circulant", "paley", "pentagon_bouquet",
    "fdf_chain", "petersen", "complete_bipartite", "k5_two_pentagons_ts",
)
