"""Local complementation on uncoloured graphs, words, reduction and orbits."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .canon import canonical_form
from .errors import BudgetExceeded, NonAdjacent, NotReduced
from .graph import Graph, bits, mask_of
from .search import DEFAULT_BUDGET, iso_bfs

Word = list


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range for n={g.n}")


def lc_rows(rows: Sequence[int], u: int) -> list[int]:
    rows = list(rows)
    nb = rows[u]
    m = nb
    while m:
        low = m & -m
        v = low.bit_length() - 1
        rows[v] ^= nb & ~low
        m ^= low
    return rows


def local_complement(g: Graph, u: int) -> Graph:
    """Complement the subgraph induced by N(u). Colours, if any, are left untouched."""
    _check_vertex(g, u)
    return Graph(g.n, lc_rows(g.rows, u), g.black)


def apply_word(g: Graph, s) -> Graph:
    rows = g.rows
    for u in s:
        _check_vertex(g, u)
        rows = lc_rows(rows, u)
    return Graph(g.n, rows, g.black)


def bracket(u: int, v: int) -> list[int]:
    return [u, v, u]


def edge_triple_complement(g: Graph, u: int, v: int) -> Graph:
    """G·uvu for an edge uv, computed in closed form.

    With A = N(u) minus N[v], B = N(v) minus N[u] and C = N(u) ∩ N(v), toggle
    every pair in {u,v}×(A∪B), A×B, A×C and B×C.
    """
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise NonAdjacent(f"{u} and {v} are not adjacent")
    rows = list(g.rows)
    bu, bv = 1 << u, 1 << v
    nu, nv = rows[u] & ~bv, rows[v] & ~bu
    common = nu & nv
    only_u = nu & ~common
    only_v = nv & ~common
    uv = bu | bv

    def toggle(x_mask, y_mask):
        for x in bits(x_mask):
            rows[x] ^= y_mask & ~(1 << x)
        for y in bits(y_mask):
            rows[y] ^= x_mask & ~(1 << y)

    toggle(uv, only_u | only_v)
    toggle(only_u, only_v)
    toggle(only_u, common)
    toggle(only_v, common)
    return Graph(g.n, rows, g.black)


# reduced words -----------------------------------------------------------

def word_blocks(g: Graph, s) -> Optional[list[tuple[int, ...]]]:
    """Split s into blocks of a reduced word, or return None if s is not reduced.

    Blocks are single letters or brackets (a, b) standing for aba, where the
    edge ab must be present in the graph reached just before the block.
    """
    s = list(s)
    blocks = []
    seen = set()
    rows = g.rows
    i = 0
    while i < len(s):
        a = s[i]
        if a in seen:
            return None
        if i + 2 < len(s) and s[i + 2] == a and s[i + 1] != a:
            b = s[i + 1]
            if b in seen or not (rows[a] >> b) & 1:
                return None
            blocks.append((a, b))
            seen.update((a, b))
            for x in (a, b, a):
                rows = lc_rows(rows, x)
            i += 3
        else:
            blocks.append((a,))
            seen.add(a)
            rows = lc_rows(rows, a)
            i += 1
    return blocks


def is_reduced(g: Graph, s) -> bool:
    return word_blocks(g, s) is not None


def _flatten(blocks) -> list[int]:
    out = []
    for b in blocks:
        out.extend(b if len(b) == 1 else (b[0], b[1], b[0]))
    return out


def _universal_rows(k: int, edges) -> tuple[int, ...]:
    """Letters 0..k-1 with the given edges, plus two outside vertices per subset of letters."""
    n = k + 2 * (1 << k)
    rows = [0] * n
    for a, b in edges:
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    for sub in range(1 << k):
        for c in range(2):
            x = k + 2 * sub + c
            for a in range(k):
                if (sub >> a) & 1:
                    rows[a] |= 1 << x
                    rows[x] |= 1 << a
    return tuple(rows)


@lru_cache(maxsize=65536)
def _universal_equal(k: int, edges: tuple, s: tuple, t: tuple) -> bool:
    rows = _universal_rows(k, edges)
    a, b = rows, rows
    for x in s:
        a = lc_rows(a, x)
    for x in t:
        b = lc_rows(b, x)
    return tuple(a) == tuple(b)


def locally_equivalent(g: Graph, s, t) -> bool:
    """True iff G's = G't for every graph G' agreeing with g on the letters of s and t.

    Decided on the universal extension of the induced subgraph on the letters,
    which realises every possible attachment of outside vertices.
    """
    letters = sorted(set(s) | set(t))
    idx = {v: i for i, v in enumerate(letters)}
    edges = tuple((idx[a], idx[b]) for a in letters for b in letters if a < b and g.has_edge(a, b))
    return _universal_equal(len(letters), edges, tuple(idx[x] for x in s), tuple(idx[x] for x in t))


def _rewrite_last(g: Graph, s: list[int], u0: int) -> list[int]:
    """Apply one rewriting step moving the last occurrence of u0 (at index >= 2) earlier."""
    p = max(i for i, x in enumerate(s) if x == u0)
    a = s[p - 1]
    if a == u0:  # case 1
        return s[:p - 1] + s[p + 1:]
    before_a = apply_word(g, s[:p - 1])
    if not before_a.has_edge(a, u0):  # case 2
        return s[:p - 1] + [u0, a] + s[p + 1:]
    b = s[p - 2]
    head, tail = s[:p - 2], s[p + 1:]
    if b == u0:  # case 3
        return head + [a, u0, a] + tail
    if b == a:  # case 4
        return head + [u0] + tail
    v, u = b, a
    e = apply_word(g, head)
    uu0, uv, vu0 = e.has_edge(u, u0), e.has_edge(u, v), e.has_edge(v, u0)
    if uu0 and not uv and not vu0:  # case 5
        mid = [u, u0, v]
    elif uu0 and uv:  # cases 6 and 7
        mid = [u, u0, u, v]
    elif uu0 and vu0:  # case 8
        mid = [u0, u, v, u]
    elif uv and vu0:
        # u0 and u only become adjacent through v; not one of the listed cases
        mid = [u, u0, v, u]
    else:  # pragma: no cover - excluded by the case 2 test above
        raise AssertionError("unreachable rewriting configuration")
    return head + mid + tail


def _pull_forward(g: Graph, s: list[int], u0: int) -> list[int]:
    while u0 in s and max(i for i, x in enumerate(s) if x == u0) >= 2:
        s = _rewrite_last(g, s, u0)
    return s


def _enumerate_reduced(g: Graph, letters: list[int]):
    """All reduced words whose support is a subset of ``letters`` (small sets only)."""
    def rec(rows, remaining, prefix):
        yield prefix
        for a in remaining:
            rest = remaining - {a}
            yield from rec(lc_rows(rows, a), rest, prefix + [a])
            for b in rest:
                if (rows[a] >> b) & 1:
                    r2 = lc_rows(lc_rows(lc_rows(rows, a), b), a)
                    yield from rec(r2, rest - {b}, prefix + [a, b, a])
    yield from rec(g.rows, frozenset(letters), [])


def _reduce_prefix_search(g: Graph, p: list[int], u0: int) -> list[int]:
    """Find a reduced word locally equivalent to p with u0 at index 0 or 1 if present."""
    for cand in _enumerate_reduced(g, sorted(set(p))):
        if u0 in cand and cand.index(u0) > 1:
            continue
        if locally_equivalent(g, p, cand):
            return cand
    raise AssertionError("no reduced form found for a short word")  # pragma: no cover


def reduce_word(g: Graph, s, priority: Optional[int] = None, rng: Optional[random.Random] = None) -> list[int]:
    """Return a reduced word equivalent to s under the local rules.

    The result uses only letters of s; if ``priority`` occurs in the result it
    is at index 0 or 1. When no priority letter applies the next letter to
    process is the first letter of the remaining word, or a random one if
    ``rng`` is given.
    """
    s = list(s)
    for u in s:
        _check_vertex(g, u)
    if is_reduced(g, s) and (priority not in s or s.index(priority) <= 1):
        return s
    return _reduce(g, s, priority, rng)


def _reduce(g: Graph, s: list[int], pri, rng) -> list[int]:
    out: list[int] = []
    while s:
        if pri is not None and pri in s:
            u0 = pri
        else:
            pri = None
            u0 = rng.choice(sorted(set(s))) if rng is not None else s[0]
        s = _pull_forward(g, s, u0)
        if u0 not in s:
            continue
        if s[0] == u0:
            if len(s) > 1 and s[1] == u0:
                s = s[2:]
                continue
            out.append(u0)
            g = local_complement(g, u0)
            s = s[1:]
            pri = None
            continue
        v = s[0]
        if not g.has_edge(v, u0):
            s = [u0, v] + s[2:]
            continue
        g2 = apply_word(g, [v, u0])
        t = _reduce(g2, s[2:], v, rng)
        if v not in t:
            return out + [v, u0] + t
        if t[0] == v:
            return out + [v, u0, v] + t[1:]
        w = t[0]
        blocks = word_blocks(g2, t)
        if blocks[0] == (w, v):
            # v u0 [wv] rest  ~  w u0 rest
            return out + [w, u0] + _flatten(blocks[1:])
        second = blocks[1]
        rest = _flatten(blocks[2:])
        if second == (v,):
            if g2.has_edge(v, w):
                return out + [w, u0, w] + rest
            return out + [v, u0, v, w] + rest
        # t = w [v x] rest: settle the short prefix directly
        prefix = [v, u0] + _flatten(blocks[:2])
        return out + _reduce_prefix_search(g, prefix, u0) + rest
    return out


def split_word_by_components(g: Graph, s) -> list[int]:
    """Regroup a reduced word by the components of the subgraph induced by its letters.

    Within each component group single letters precede brackets, and no single
    letter is adjacent (at that point) to a bracket letter of its group.
    """
    blocks = word_blocks(g, s)
    if blocks is None:
        raise NotReduced("word is not reduced")
    support = mask_of(x for b in blocks for x in b)
    comps = g.components(support)
    out: list[int] = []
    state = g
    for comp in comps:
        group = [b for b in blocks if (comp >> b[0]) & 1]
        group = _normal_form(state, group)
        word = _flatten(group)
        out.extend(word)
        state = apply_word(state, word)
    return out


def _normal_form(g: Graph, blocks: list[tuple]) -> list[tuple]:
    """Singles first, then brackets, with no single adjacent to a bracket letter."""
    blocks = list(blocks)
    for _ in range(4 * len(blocks) + 4):
        blocks = _singles_first(g, blocks)
        r = sum(1 for b in blocks if len(b) == 1)
        singles = [b[0] for b in blocks[:r]]
        after = apply_word(g, singles)
        bracket_letters = mask_of(x for b in blocks[r:] for x in b)
        target = None
        for u in singles:
            hit = after.rows[u] & bracket_letters
            if hit:
                target = (hit & -hit).bit_length() - 1
                break
        if target is None:
            return blocks
        blocks = _bracket_to_front(g, blocks, r, target)
        blocks = _absorb_first_bracket(g, blocks, r)
    raise AssertionError("normal form did not converge")  # pragma: no cover


def _try(g: Graph, prefix_blocks, old, candidates):
    state = apply_word(g, _flatten(prefix_blocks))
    old_word = _flatten(old)
    for cand in candidates:
        if word_blocks(state, _flatten(cand)) == list(cand) and locally_equivalent(state, old_word, _flatten(cand)):
            return list(cand)
    return None


def _singles_first(g: Graph, blocks):
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks) - 1):
            b, c = blocks[i], blocks[i + 1]
            if len(b) == 2 and len(c) == 1:
                x, y = b
                z = c[0]
                new = _try(g, blocks[:i], [b, c], [[(z,), (x, y)], [(z,), (x,), (y,)], [(z,), (y,), (x,)]])
                if new is None:  # pragma: no cover
                    raise AssertionError("no single/bracket exchange applies")
                blocks = blocks[:i] + new + blocks[i + 2:]
                changed = True
                break
    return blocks


def _bracket_to_front(g: Graph, blocks, r, letter):
    """Move the bracket containing ``letter`` to index r, with ``letter`` first."""
    k = next(i for i in range(r, len(blocks)) if letter in blocks[i])
    if blocks[k][0] != letter:
        blocks = blocks[:k] + [(blocks[k][1], blocks[k][0])] + blocks[k + 1:]
    while k > r:
        (u, v), (w, x) = blocks[k - 1], blocks[k]
        new = _try(g, blocks[:k - 1], [(u, v), (w, x)], [[(w, x), (u, v)], [(w, u), (v, x)], [(w, v), (u, x)]])
        if new is None:  # pragma: no cover
            raise AssertionError("no bracket exchange applies")
        blocks = blocks[:k - 1] + new + blocks[k + 1:]
        k -= 1
    return blocks


def _absorb_first_bracket(g: Graph, blocks, r):
    j = r
    while j > 0:
        single, br = blocks[j - 1], blocks[j]
        x, y = br
        u = single[0]
        new = _try(g, blocks[:j - 1], [single, br], [[(x,), (y,), (u,)], [(y,), (x,), (u,)]])
        if new is not None:
            return blocks[:j - 1] + new + blocks[j + 1:]
        new = _try(g, blocks[:j - 1], [single, br], [[br, single]])
        if new is None:  # pragma: no cover
            raise AssertionError("bracket cannot pass single letter")
        blocks = blocks[:j - 1] + new + blocks[j + 1:]
        j -= 1
    return blocks


# orbits ------------------------------------------------------------------

def _lc_moves(g: Graph):
    for u in range(g.n):
        if g.rows[u]:
            yield u, local_complement(g, u)


@dataclass
class LabeledOrbit:
    states: list  # row tuples
    neighbours: list  # per state, list of state indices (one per vertex with a non-trivial move)


@dataclass
class Orbit:
    reps: dict  # CanonKey -> Graph, iteration in ascending key order
    count_labeled: Optional[int] = None
    labeled: Optional[LabeledOrbit] = field(default=None, repr=False)

    @property
    def count_iso(self) -> int:
        return len(self.reps)


def enumerate_labeled_orbit(g: Graph, budget: int = DEFAULT_BUDGET) -> LabeledOrbit:
    start = g.rows
    index = {start: 0}
    states = [start]
    nbrs: list = []
    i = 0
    while i < len(states):
        rows = states[i]
        out = []
        for u in range(g.n):
            if not rows[u]:
                continue
            child = tuple(lc_rows(rows, u))
            j = index.get(child)
            if j is None:
                j = len(states)
                if j >= budget:
                    raise BudgetExceeded(budget, j)
                index[child] = j
                states.append(child)
            out.append(j)
        nbrs.append(out)
        i += 1
    return LabeledOrbit(states, nbrs)


def enumerate_complementation_class(g: Graph, labeled: bool = False, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Orbit:
    g = g.uncoloured()
    if labeled:
        lab = enumerate_labeled_orbit(g, budget)
        reps = {}
        for rows in lab.states:
            h = Graph(g.n, rows)
            reps.setdefault(canonical_form(h), h)
        return Orbit(dict(sorted(reps.items())), len(lab.states), lab)
    orb = iso_bfs(g, _lc_moves, budget=budget, jobs=jobs)
    return Orbit(dict(orb.sorted_reps()), None, None)


def complementation_diameter(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Diameter of the complementation graph on the labeled orbit of g.

    Eccentricity is constant on isomorphic orbit members (an isomorphism
    between members is an automorphism of the complementation graph), so one
    BFS per isomorphism class suffices.
    """
    import numpy as np

    g = g.uncoloured()
    lab = enumerate_labeled_orbit(g, budget)
    size = len(lab.states)
    width = max((len(x) for x in lab.neighbours), default=0)
    if width == 0:
        return 0
    table = np.full((size, width), -1, dtype=np.int64)
    for i, row in enumerate(lab.neighbours):
        table[i, :len(row)] = row
    seen_keys = set()
    best = 0
    for i, rows in enumerate(lab.states):
        key = canonical_form(Graph(g.n, rows))
        if key in seen_keys:
            continue
        seen_keys.add(key)
        best = max(best, _eccentricity(table, i))
    return best


def _eccentricity(table, source: int) -> int:
    import numpy as np

    dist = np.full(table.shape[0], -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source])
    d = 0
    while True:
        nxt = table[frontier].ravel()
        nxt = nxt[nxt >= 0]
        nxt = np.unique(nxt)
        nxt = nxt[dist[nxt] < 0]
        if nxt.size == 0:
            return d
        d += 1
        dist[nxt] = d
        frontier = nxt


def complement_reachable(g: Graph) -> bool:
    """True iff the complement of g lies in its complementation class."""
    from .families import strongly_regular_mod

    return strongly_regular_mod(g.uncoloured(), 2, (1, 0, 0, 1))


def complement_in_orbit(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    """Search oracle: is the labeled complement of g reached by local complementations?"""
    g = g.uncoloured()
    target = g.complement().rows
    lab = enumerate_labeled_orbit(g, budget)
    return target in set(lab.states)
