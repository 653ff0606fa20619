"""Canonical keys for (optionally coloured) graphs.

Two graphs get the same key iff a colour-preserving isomorphism exists. The
colour classes form the initial cell partition (black cell before white cell,
a single cell when uncoloured) and the partition is refined and searched by
individualization-refinement. nauty (through pynauty) is used when installed;
``canonical_form_python`` is a self-contained implementation of the same
scheme, used as a fallback and as a cross-check in the tests.
"""
from __future__ import annotations

import os

from .graph import Graph, bits, popcount

try:
    import pynauty
except ImportError:  # pragma: no cover - exercised only without pynauty
    pynauty = None

CanonKey = bytes

_UNCOLOURED = 255


def _header(g: Graph, tag: int) -> bytes:
    nb = _UNCOLOURED if g.black is None else popcount(g.black)
    return bytes((tag, g.n, nb))


def _cells(g: Graph) -> list[list[int]]:
    if g.black is None:
        return [list(range(g.n))] if g.n else []
    black = list(bits(g.black))
    white = list(bits(g.white))
    return [c for c in (black, white) if c]


def _nauty_graph(g: Graph):
    adj = {u: list(bits(r)) for u, r in enumerate(g.rows) if r}
    cells = _cells(g)
    colouring = [set(c) for c in cells] if len(cells) > 1 else []
    return pynauty.Graph(g.n, adjacency_dict=adj, vertex_coloring=colouring)


def canonical_form_nauty(g: Graph) -> CanonKey:
    if g.n == 0:
        return _header(g, 1)
    return _header(g, 1) + pynauty.certificate(_nauty_graph(g))


# pure python individualization-refinement ---------------------------------

def _refine(rows, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; sub-cells ordered by neighbour-count signature."""
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new = []
        split = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict = {}
            for v in c:
                r = rows[v]
                sig = tuple(popcount(r & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
                for sig in sorted(groups):
                    new.append(groups[sig])
            else:
                new.append(c)
        cells = new
        if not split:
            return cells


def _encode(g: Graph, order: list[int]) -> bytes:
    """Encoding of g relabeled so that order[i] becomes vertex i."""
    pos = {v: i for i, v in enumerate(order)}
    out = bytearray()
    if g.black is not None:
        out += bytes(1 if (g.black >> v) & 1 else 0 for v in order)
    for v in order:
        m = 0
        for w in bits(g.rows[v]):
            m |= 1 << pos[w]
        out += m.to_bytes(8, "little")
    return bytes(out)


def _orbits_under(gens, n, fixed) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        if all(p[x] == x for x in fixed):
            for x in range(n):
                a, b = find(x), find(p[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labeling_python(g: Graph) -> tuple[list[int], bytes]:
    """Return (order, encoding) where order lists vertices in canonical position."""
    n = g.n
    if n == 0:
        return [], b""
    rows = g.rows
    best: list = [None, None]  # encoding, order
    gens: list[list[int]] = []

    def search(cells, prefix):
        cells = _refine(rows, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            enc = _encode(g, order)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, order
            elif enc == best[0]:
                # two leaves with equal encodings differ by an automorphism
                perm = [0] * n
                for a, b in zip(best[1], order):
                    perm[b] = a
                gens.append(perm)
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[idx]
        done = []
        for v in target:
            if done:
                orb = _orbits_under(gens, n, prefix)
                if any(orb[v] == orb[w] for w in done):
                    continue
            rest = [w for w in target if w != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:], prefix + [v])
            done.append(v)

    search(_cells(g), [])
    return best[1], best[0]


def canonical_form_python(g: Graph) -> CanonKey:
    _, enc = canonical_labeling_python(g)
    return _header(g, 2) + enc


def _select_backend():
    choice = os.environ.get("PURELAB_CANON", "auto")
    if choice == "python" or pynauty is None:
        return canonical_form_python
    return canonical_form_nauty


canonical_form = _select_backend()


def key_hex(key: CanonKey) -> str:
    return key.hex()


# automorphisms ------------------------------------------------------------

def automorphism_generators(g: Graph) -> list[list[int]]:
    if g.n == 0:
        return []
    if pynauty is not None:
        gens = pynauty.autgrp(_nauty_graph(g))[0]
        return [list(p) for p in gens]
    return _automorphisms_brute(g)


def automorphism_group(g: Graph, limit: int = 100000) -> set[tuple[int, ...]]:
    """All colour-preserving automorphisms as tuples p with p[u] the image of u."""
    ident = tuple(range(g.n))
    group = {ident}
    gens = [tuple(p) for p in automorphism_generators(g)]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(q[p[x]] for x in range(g.n))
                if r not in group:
                    group.add(r)
                    if len(group) > limit:
                        raise ValueError("automorphism group too large to list")
                    nxt.append(r)
        frontier = nxt
    return group


def is_automorphism(g: Graph, perm) -> bool:
    return g.relabel(perm) == g


def _automorphisms_brute(g: Graph) -> list[list[int]]:
    out = []
    n = g.n
    perm = [-1] * n
    used = [False] * n

    def extend(u):
        if u == n:
            out.append(list(perm))
            return
        for w in range(n):
            if used[w] or g.degree(w) != g.degree(u):
                continue
            if g.black is not None and ((g.black >> u) & 1) != ((g.black >> w) & 1):
                continue
            ok = all(g.has_edge(u, x) == g.has_edge(w, perm[x]) for x in range(u))
            if ok:
                perm[u] = w
                used[w] = True
                extend(u + 1)
                used[w] = False
        perm[u] = -1

    extend(0)
    return out
