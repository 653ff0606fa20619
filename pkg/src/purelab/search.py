"""Breadth-first orbit search shared by the complementation and parity engines."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional

from .canon import canonical_form
from .errors import BudgetExceeded

DEFAULT_BUDGET = 5_000_000


class IsoOrbit:
    """Result of an isomorphism-level BFS.

    ``reps`` maps canonical key to the labeled representative that was expanded,
    ``parent`` maps a key to (parent key, move) so a witness word can be rebuilt.
    """

    def __init__(self, seed_key, reps, parent, complete=True):
        self.seed_key = seed_key
        self.reps = reps
        self.parent = parent
        self.complete = complete

    def __len__(self):
        return len(self.reps)

    def keys(self) -> list[bytes]:
        return sorted(self.reps)

    def sorted_reps(self):
        return [(k, self.reps[k]) for k in sorted(self.reps)]

    def word_to(self, key) -> list:
        moves = []
        while True:
            par = self.parent[key]
            if par is None:
                break
            key, move = par
            moves.append(move)
        moves.reverse()
        return moves


def _expand_chunk(args):
    expand, graphs = args
    out = []
    for g in graphs:
        out.append([(m, c, canonical_form(c)) for m, c in expand(g)])
    return out


def iso_bfs(
    seed,
    expand: Callable[[object], Iterable[tuple[object, object]]],
    budget: int = DEFAULT_BUDGET,
    stop: Optional[Callable[[bytes, object], bool]] = None,
    jobs: int = 1,
) -> IsoOrbit:
    """BFS over isomorphism classes.

    ``expand(g)`` yields (move, child) pairs. ``stop(key, g)`` may end the
    search early (the orbit is then marked incomplete). With ``jobs > 1`` the
    children of each frontier are computed by worker processes; insertion
    happens in frontier order so the result does not depend on ``jobs``.
    ``expand`` must be a picklable module-level callable in that case.
    """
    seed_key = canonical_form(seed)
    reps = {seed_key: seed}
    parent = {seed_key: None}
    if stop is not None and stop(seed_key, seed):
        return IsoOrbit(seed_key, reps, parent, complete=False)
    frontier = [(seed_key, seed)]
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while frontier:
            graphs = [g for _, g in frontier]
            if pool is None:
                expanded = _expand_chunk((expand, graphs))
            else:
                size = max(1, len(graphs) // (4 * jobs))
                chunks = [graphs[i:i + size] for i in range(0, len(graphs), size)]
                expanded = [x for part in pool.map(_expand_chunk, [(expand, c) for c in chunks]) for x in part]
            nxt = []
            for (pkey, _), children in zip(frontier, expanded):
                for move, child, key in children:
                    if key in reps:
                        continue
                    reps[key] = child
                    parent[key] = (pkey, move)
                    if len(reps) > budget:
                        raise BudgetExceeded(budget, len(reps))
                    if stop is not None and stop(key, child):
                        return IsoOrbit(seed_key, reps, parent, complete=False)
                    nxt.append((key, child))
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return IsoOrbit(seed_key, reps, parent, complete=True)
