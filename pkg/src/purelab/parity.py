"""Bicoloured complementation: parity moves, parity classes, black anticliques, purity,
complementation sets and inverses."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complement import lc_rows
from .errors import IllegalMove, NotAComplementationSet, NotInvertible
from .graph import Graph, bits, mask_of, popcount
from .search import DEFAULT_BUDGET, IsoOrbit, iso_bfs


def natural_colouring(g: Graph) -> Graph:
    black = 0
    for u, r in enumerate(g.rows):
        if popcount(r) & 1:
            black |= 1 << u
    return Graph(g.n, g.rows, black)


def is_naturally_coloured(g: Graph) -> bool:
    return g.black is not None and natural_colouring(g).black == g.black


@dataclass(frozen=True)
class ParityMove:
    """A white vertex (v is None) or an edge between two black vertices."""

    u: int
    v: Optional[int] = None

    @property
    def is_white(self) -> bool:
        return self.v is None

    @property
    def mask(self) -> int:
        return (1 << self.u) | (0 if self.v is None else 1 << self.v)

    def letters(self) -> list[int]:
        return [self.u] if self.v is None else [self.u, self.v, self.u]

    def __str__(self) -> str:
        return str(self.u) if self.v is None else f"[{self.u} {self.v}]"


def white_vertex(u: int) -> ParityMove:
    return ParityMove(u)


def black_edge(u: int, v: int) -> ParityMove:
    return ParityMove(min(u, v), max(u, v))


def _white_move(g: Graph, u: int) -> Graph:
    rows = lc_rows(g.rows, u)
    return Graph(g.n, rows, g.black ^ rows[u])


def _black_move(g: Graph, u: int, v: int) -> Graph:
    rows = lc_rows(lc_rows(lc_rows(g.rows, u), v), u)
    return Graph(g.n, rows, g.black)


def parity_complement(g: Graph, move: ParityMove) -> Graph:
    if g.black is None:
        raise IllegalMove("parity moves need a bicoloured graph")
    u, v = move.u, move.v
    if not 0 <= u < g.n or (v is not None and not 0 <= v < g.n):
        raise IllegalMove("vertex out of range")
    if v is None:
        if g.is_black(u):
            raise IllegalMove(f"vertex {u} is black")
        return _white_move(g, u)
    if not (g.is_black(u) and g.is_black(v)):
        raise IllegalMove(f"edge ({u},{v}) does not join two black vertices")
    if not g.has_edge(u, v):
        raise IllegalMove(f"vertices {u} and {v} are not adjacent")
    return _black_move(g, u, v)


def black_vertex_complement(g: Graph, u: int) -> Graph:
    """Local complement at a black vertex with colours unchanged (strong-purity moves)."""
    if not g.is_black(u):
        raise IllegalMove(f"vertex {u} is white")
    return Graph(g.n, lc_rows(g.rows, u), g.black)


def legal_moves(g: Graph, strong: bool = False):
    """Yield (move, result) for every legal parity move, black edges once per edge."""
    black = g.black
    for u in range(g.n):
        if not (black >> u) & 1:
            yield ParityMove(u), _white_move(g, u)
    for u in bits(black):
        for v in bits(g.rows[u] & black):
            if v > u:
                yield ParityMove(u, v), _black_move(g, u, v)
    if strong:
        for u in bits(black):
            yield ("black", u), Graph(g.n, lc_rows(g.rows, u), black)


def _expand(g):
    return legal_moves(g)


def _expand_strong(g):
    return legal_moves(g, strong=True)


def word_letters(moves) -> list[int]:
    out = []
    for m in moves:
        if isinstance(m, ParityMove):
            out.extend(m.letters())
        else:
            out.append(m[1])
    return out


def apply_moves(g: Graph, moves) -> Graph:
    for m in moves:
        g = parity_complement(g, m) if isinstance(m, ParityMove) else black_vertex_complement(g, m[1])
    return g


class ParityClass(IsoOrbit):
    def witness_word(self, key) -> list:
        return self.word_to(key)


def _require_colours(g: Graph) -> Graph:
    if g.black is None:
        raise ValueError("a bicoloured graph is required (use natural_colouring)")
    return g


def enumerate_parity_class(g: Graph, budget: int = DEFAULT_BUDGET, strong: bool = False, jobs: int = 1, stop=None) -> ParityClass:
    _require_colours(g)
    orb = iso_bfs(g, _expand_strong if strong else _expand, budget=budget, stop=stop, jobs=jobs)
    return ParityClass(orb.seed_key, orb.reps, orb.parent, orb.complete)


def enumerate_labeled_parity_class(g: Graph, budget: int = DEFAULT_BUDGET) -> list[Graph]:
    """Every labeled member of the parity class, in discovery order."""
    _require_colours(g)
    seen = {g}
    order = [g]
    i = 0
    while i < len(order):
        for _, h in legal_moves(order[i]):
            if h not in seen:
                seen.add(h)
                order.append(h)
                if len(order) > budget:
                    from .errors import BudgetExceeded

                    raise BudgetExceeded(budget, len(order))
        i += 1
    return order


def class_keys(g: Graph, budget: int = DEFAULT_BUDGET) -> frozenset:
    """Identifier of the parity class: the set of member keys."""
    return frozenset(enumerate_parity_class(g, budget).reps)


def class_id(g: Graph, budget: int = DEFAULT_BUDGET) -> bytes:
    return min(class_keys(g, budget))


# anticliques -------------------------------------------------------------

def find_black_anticlique(g: Graph) -> Optional[int]:
    """An independent set of black vertices dominating every vertex, as a mask, or None."""
    _require_colours(g)
    n = g.n
    full = g.vertex_mask
    black = g.black
    closed = [g.rows[v] | (1 << v) for v in range(n)]
    deg = [popcount(r) for r in g.rows]

    def rec(chosen, dominated, excluded):
        undominated = full & ~dominated
        if not undominated:
            return chosen
        avail = black & ~dominated & ~excluded
        best_c, best_size = 0, n + 1
        for x in bits(undominated):
            c = closed[x] & avail
            if not c:
                return None
            size = popcount(c)
            if size < best_size:
                best_c, best_size = c, size
                if size == 1:
                    break
        cands = sorted(bits(best_c), key=lambda v: (-deg[v], v))
        skip = 0
        for v in cands:
            found = rec(chosen | (1 << v), dominated | closed[v], excluded | skip)
            if found is not None:
                return found
            skip |= 1 << v
        return None

    return rec(0, 0, 0)


def is_black_anticlique(g: Graph, a: int) -> bool:
    if a & ~g.black:
        return False
    dominated = a
    for v in bits(a):
        if g.rows[v] & a:
            return False
        dominated |= g.rows[v]
    return dominated == g.vertex_mask


@dataclass
class PurityReport:
    pure: bool
    orbit: ParityClass
    witness_key: Optional[bytes] = None
    anticlique: Optional[int] = None

    @property
    def count(self) -> Optional[int]:
        return len(self.orbit) if self.orbit.complete else None

    @property
    def witness_graph(self) -> Optional[Graph]:
        return None if self.witness_key is None else self.orbit.reps[self.witness_key]

    @property
    def witness_word(self) -> Optional[list]:
        return None if self.witness_key is None else self.orbit.word_to(self.witness_key)


def purity(g: Graph, budget: int = DEFAULT_BUDGET, strong: bool = False, full: bool = False, jobs: int = 1) -> PurityReport:
    """Decide purity. With ``full`` the whole class is enumerated before looking for a witness."""
    _require_colours(g)
    if full:
        orb = enumerate_parity_class(g, budget, strong=strong, jobs=jobs)
        for key in sorted(orb.reps):
            a = find_black_anticlique(orb.reps[key])
            if a is not None:
                return PurityReport(False, orb, key, a)
        return PurityReport(True, orb)
    hit = []

    def stop(key, h):
        a = find_black_anticlique(h)
        if a is not None:
            hit.append((key, a))
            return True
        return False

    orb = enumerate_parity_class(g, budget, strong=strong, jobs=jobs, stop=stop)
    if hit:
        return PurityReport(False, orb, hit[0][0], hit[0][1])
    return PurityReport(True, orb)


def is_pure(g: Graph, budget: int = DEFAULT_BUDGET, strong: bool = False) -> bool:
    return purity(g, budget, strong).pure


# complementation sets ----------------------------------------------------

def _moves_using(h: Graph, rem: int):
    """Legal parity moves whose letters all lie in rem."""
    black = h.black
    for u in bits(rem & ~black):
        yield ParityMove(u)
    for u in bits(rem & black):
        for v in bits(h.rows[u] & black & rem):
            if v > u:
                yield ParityMove(u, v)


def _moves_led_by(h: Graph, rem: int, u: int):
    """Legal moves inside rem whose first block starts with u."""
    black = h.black
    if not (black >> u) & 1:
        yield ParityMove(u)
    else:
        for v in bits(h.rows[u] & black & rem):
            yield black_edge(u, v)


def _candidate_sequences(h: Graph, rem: int):
    """Opening moves of a reduced parity word on rem with its lowest letter at index 0 or 1."""
    u = (rem & -rem).bit_length() - 1
    for m in _moves_led_by(h, rem, u):
        yield [m]
    for w in bits(rem & ~h.black & ~(1 << u)):
        h2 = _white_move(h, w)
        for m in _moves_led_by(h2, rem & ~(1 << w), u):
            yield [ParityMove(w), m]


def find_parity_word(g: Graph, s: int, exhaustive: bool = False, budget: int = DEFAULT_BUDGET) -> Optional[list]:
    """A reduced parity word (as moves) with support exactly s, or None.

    By default only words whose lowest remaining letter sits at index 0 or 1 are
    tried at each step; any reduced word can be rearranged into that shape, so
    the search stays complete. ``exhaustive`` tries every legal next move.
    """
    _require_colours(g)
    failed = set()

    def rec(h: Graph, rem: int):
        if rem == 0:
            return []
        key = (rem, h.rows, h.black)
        if key in failed:
            return None
        if exhaustive:
            seqs = ([m] for m in _moves_using(h, rem))
        else:
            seqs = _candidate_sequences(h, rem)
        for seq in seqs:
            h2 = h
            r2 = rem
            for m in seq:
                h2 = parity_complement(h2, m)
                r2 &= ~m.mask
            tail = rec(h2, r2)
            if tail is not None:
                return list(seq) + tail
        failed.add(key)
        if len(failed) > budget:
            from .errors import BudgetExceeded

            raise BudgetExceeded(budget, len(failed))
        return None

    return rec(g, s)


def complement_with_set(g: Graph, s, exhaustive: bool = False) -> Graph:
    mask = s if isinstance(s, int) else mask_of(s)
    word = find_parity_word(g, mask, exhaustive=exhaustive)
    if word is None:
        raise NotAComplementationSet("no reduced parity word has this support")
    return apply_moves(g, word)


def invert(g: Graph) -> Graph:
    if g.black is None:
        g = natural_colouring(g)
    word = find_parity_word(g, g.vertex_mask)
    if word is None:
        raise NotInvertible("the vertex set is not a complementation set")
    return apply_moves(g, word)


def is_invertible(g: Graph) -> bool:
    if g.black is None:
        g = natural_colouring(g)
    return find_parity_word(g, g.vertex_mask) is not None
