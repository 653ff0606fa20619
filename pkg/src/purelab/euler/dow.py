"""Double occurrence words: alternance graphs, twists, switches and anticlique splitting.

A word may carry the edges of the tour it was read from: ``edges[i]`` is the
edge taken from ``letters[i]`` to ``letters[i + 1]`` (cyclically). Every
rearrangement below moves the edges along with the letters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import BudgetExceeded, FormatError, NotAlternating, NotAnticlique, NotDoubleOccurrence
from ..graph import Graph, bits, mask_of
from ..parity import natural_colouring

REALIZE_LIMIT = 8


@dataclass(frozen=True)
class DOW:
    letters: tuple
    edges: Optional[tuple] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.edges is not None:
            object.__setattr__(self, "edges", tuple(self.edges))
            if len(self.edges) != len(self.letters):
                raise ValueError("one edge per letter position is required")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))

    def positions(self) -> dict:
        pos: dict = {}
        for i, a in enumerate(self.letters):
            pos.setdefault(a, []).append(i)
        return pos

    def alphabet(self) -> list:
        """Letters sorted when they are all integers, else in order of first appearance."""
        seen = list(dict.fromkeys(self.letters))
        if all(isinstance(a, int) for a in seen):
            return sorted(seen)
        return seen

    def rotate(self, k: int) -> "DOW":
        k %= max(len(self.letters), 1)
        e = None if self.edges is None else self.edges[k:] + self.edges[:k]
        return DOW(self.letters[k:] + self.letters[:k], e)


def check_double_occurrence(w: DOW) -> None:
    for a, p in w.positions().items():
        if len(p) != 2:
            raise NotDoubleOccurrence(f"letter {a!r} occurs {len(p)} times")


def parse_dow(text: str) -> DOW:
    toks = text.split()
    if len(toks) == 1:
        toks = list(toks[0])
    if not toks:
        raise FormatError("empty word")
    letters = [int(t) if t.lstrip("-").isdigit() else t for t in toks]
    w = DOW(letters)
    try:
        check_double_occurrence(w)
    except NotDoubleOccurrence as exc:
        raise FormatError(str(exc)) from None
    return w


def format_dow(w: DOW) -> str:
    return str(w) + "\n"


def interlaced(pa: Sequence[int], pb: Sequence[int]) -> bool:
    (i, j), (k, l) = pa, pb
    return i < k < j < l or k < i < l < j


def alternance_graph(w: DOW) -> Graph:
    """Letters adjacent iff they alternate; vertex i is ``w.alphabet()[i]``; natural colouring."""
    check_double_occurrence(w)
    alpha = w.alphabet()
    pos = w.positions()
    n = len(alpha)
    p = [pos[a] for a in alpha]
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if interlaced(p[a], p[b]):
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return natural_colouring(Graph(n, rows))


def equivalent(w1: DOW, w2: DOW) -> bool:
    """Equal up to rotation and reversal (letters only)."""
    a, b = list(w1.letters), list(w2.letters)
    if len(a) != len(b):
        return False
    for cand in (b, b[::-1]):
        for k in range(len(cand)):
            if cand[k:] + cand[:k] == a:
                return True
    return not a


def twist(w: DOW, u) -> DOW:
    """Reverse the stretch strictly between the two occurrences of u."""
    check_double_occurrence(w)
    i, j = w.positions()[u]
    L = w.letters
    letters = L[: i + 1] + L[i + 1 : j][::-1] + L[j:]
    edges = None
    if w.edges is not None:
        E = w.edges
        edges = E[:i] + E[i:j][::-1] + E[j:]
    return DOW(letters, edges)


def switch(w: DOW, u, v) -> DOW:
    """Exchange the second and fourth of the four stretches cut out by u, v, u, v."""
    check_double_occurrence(w)
    pos = w.positions()
    if not interlaced(pos[u], pos[v]):
        raise NotAlternating(f"{u!r} and {v!r} do not alternate")
    w = w.rotate(pos[u][0])
    pos = w.positions()
    a, c = pos[v]
    b = pos[u][1]
    L = w.letters
    letters = L[:a] + (v,) + L[c + 1 :] + (u,) + L[b + 1 : c] + (v,) + L[a + 1 : b]
    edges = None
    if w.edges is not None:
        E = w.edges
        edges = E[:a] + E[c:] + E[b:c] + E[a:b]
    return DOW(letters, edges)


def is_anticlique(g: Graph, a: int) -> bool:
    dominated = a
    for v in bits(a):
        if g.rows[v] & a:
            return False
        dominated |= g.rows[v]
    return dominated == g.vertex_mask


def cycles_from_anticlique(w: DOW, a) -> list[DOW]:
    """Split the tour at the letters of an anticlique of its alternance graph; |a| + 1 closed pieces.

    Edges default to position indices, so alternation of a piece can be read
    off the parity of its edges.
    """
    check_double_occurrence(w)
    alpha = w.alphabet()
    index = {x: i for i, x in enumerate(alpha)}
    amask = mask_of(index[x] for x in a)
    if not is_anticlique(alternance_graph(w), amask):
        raise NotAnticlique("the letters do not form an anticlique of the alternance graph")
    L = list(w.letters)
    E = list(w.edges) if w.edges is not None else list(range(len(L)))
    pending = set(a)
    out = []
    while pending:
        # an innermost pair of a pending letter: no pending letter strictly inside
        split = None
        for i, x in enumerate(L):
            if x not in pending:
                continue
            for j in range(i + 1, len(L)):
                if L[j] in pending:
                    if L[j] == x:
                        split = (i, j)
                    break
            if split:
                break
        if split is None:
            raise NotAnticlique("pending letters interleave")  # cannot happen for an anticlique
        i, j = split
        out.append(DOW(L[i:j], E[i:j]))
        L = L[: i + 1] + L[j + 1 :]
        E = E[:i] + E[j:]
        pending.discard(L[i])
    out.append(DOW(L, E))
    return out


def is_cycle_piece(piece: DOW) -> bool:
    return len(set(piece.letters)) == len(piece.letters)


def realize(g: Graph, limit: int = REALIZE_LIMIT) -> Optional[DOW]:
    """A word over 0..n-1 whose alternance graph is g (colours ignored), or None."""
    n = g.n
    if n > limit:
        raise BudgetExceeded(limit, n)
    if n == 0:
        return DOW(())
    rows = g.rows

    def rec(word: list, k: int):
        if k == n:
            return word
        m = len(word)
        for i in range(m + 1):
            for j in range(i, m + 1):
                cand = word[:i] + [k] + word[i:j] + [k] + word[j:]
                inside = cand[i + 1 : j + 1]
                # letters placed once between the two k's alternate with k
                odd = 0
                for x in set(inside):
                    if inside.count(x) == 1:
                        odd |= 1 << x
                if odd != rows[k] & ((1 << k) - 1):
                    continue
                found = rec(cand, k + 1)
                if found is not None:
                    return found
        return None

    found = rec([0, 0], 1)
    return None if found is None else DOW(found)
