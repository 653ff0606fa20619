"""Simple labeled graphs on at most 64 vertices with an optional black/white colouring.

Adjacency is stored as one integer bit row per vertex. Colours are stored as a
bit mask of black vertices; an uncoloured graph has ``black is None``.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .errors import FormatError

MAX_N = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    __slots__ = ("n", "rows", "black", "_hash")

    def __init__(self, n: int, rows: Sequence[int], black: Optional[int] = None):
        self.n = n
        self.rows = tuple(rows)
        self.black = black
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], colours=None) -> "Graph":
        if not 0 <= n <= MAX_N:
            raise ValueError(f"vertex count {n} outside 0..{MAX_N}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError("loops are not allowed in a simple graph")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, _colour_mask(n, colours))

    @classmethod
    def empty(cls, n: int, colours=None) -> "Graph":
        return cls.from_edges(n, (), colours)

    def validate(self) -> None:
        full = (1 << self.n) - 1
        for u, r in enumerate(self.rows):
            if r & ~full or (r >> u) & 1:
                raise ValueError(f"bad adjacency row {u}")
            for v in bits(r):
                if not (self.rows[v] >> u) & 1:
                    raise ValueError("adjacency is not symmetric")
        if self.black is not None and self.black & ~full:
            raise ValueError("colour mask out of range")

    # queries ------------------------------------------------------------
    @property
    def coloured(self) -> bool:
        return self.black is not None

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def white(self) -> int:
        if self.black is None:
            raise ValueError("graph is uncoloured")
        return self.vertex_mask & ~self.black

    def is_black(self, u: int) -> bool:
        if self.black is None:
            raise ValueError("graph is uncoloured")
        return bool((self.black >> u) & 1)

    def is_white(self, u: int) -> bool:
        return not self.is_black(u)

    def colours(self) -> Optional[str]:
        if self.black is None:
            return None
        return "".join("b" if (self.black >> u) & 1 else "w" for u in range(self.n))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbours(self, u: int) -> list[int]:
        return list(bits(self.rows[u]))

    def degree(self, u: int) -> int:
        return popcount(self.rows[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.rows[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.vertex_mask

    def components(self, within: Optional[int] = None) -> list[int]:
        """Connected components of the subgraph induced by ``within`` as masks, by lowest vertex."""
        rest = self.vertex_mask if within is None else within
        out = []
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.rows[u]
                frontier = nxt & rest & ~comp
                comp |= frontier
            out.append(comp)
            rest &= ~comp
        return out

    # derived graphs -----------------------------------------------------
    def with_colours(self, colours) -> "Graph":
        return Graph(self.n, self.rows, _colour_mask(self.n, colours))

    def uncoloured(self) -> "Graph":
        return Graph(self.n, self.rows, None)

    def complement(self) -> "Graph":
        full = self.vertex_mask
        return Graph(self.n, [full & ~r & ~(1 << u) for u, r in enumerate(self.rows)], self.black)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex u renamed perm[u]."""
        rows = [0] * self.n
        for u, r in enumerate(self.rows):
            m = 0
            for v in bits(r):
                m |= 1 << perm[v]
            rows[perm[u]] = m
        black = None
        if self.black is not None:
            black = mask_of(perm[u] for u in bits(self.black))
        return Graph(self.n, rows, black)

    # dunder -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.rows == other.rows
            and self.black == other.black
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows, self.black))
        return self._hash

    def __repr__(self) -> str:
        col = self.colours()
        return f"Graph(n={self.n}, edges={self.edges()}" + (f", colours={col!r})" if col else ")")


def _colour_mask(n: int, colours) -> Optional[int]:
    """Accept None, a 'bw' string, a sequence of 'b'/'w'/bool, or an int mask of black vertices."""
    if colours is None:
        return None
    if isinstance(colours, int) and not isinstance(colours, bool):
        if colours >> n:
            raise ValueError("colour mask out of range")
        return colours
    colours = list(colours)
    if len(colours) != n:
        raise ValueError(f"expected {n} colours, got {len(colours)}")
    m = 0
    for u, c in enumerate(colours):
        if c in ("b", "black", True, 1):
            m |= 1 << u
        elif c not in ("w", "white", False, 0):
            raise ValueError(f"unknown colour {c!r}")
    return m


def induced_subgraph(g: Graph, s) -> Graph:
    """Subgraph induced by ``s`` (a mask or an iterable of vertices), relabeled ascending."""
    mask = s if isinstance(s, int) else mask_of(s)
    if mask >> g.n:
        raise ValueError("vertex set out of range")
    keep = list(bits(mask))
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        r = 0
        for w in bits(g.rows[v] & mask):
            r |= 1 << index[w]
        rows.append(r)
    black = None
    if g.black is not None:
        black = mask_of(index[v] for v in bits(g.black & mask))
    return Graph(len(keep), rows, black)


def delete_vertex(g: Graph, u: int) -> Graph:
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range")
    return induced_subgraph(g, g.vertex_mask & ~(1 << u))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    rows = list(a.rows) + [r << a.n for r in b.rows]
    black = None
    if a.black is not None or b.black is not None:
        black = (a.black or 0) | ((b.black or 0) << a.n)
    return Graph(a.n + b.n, rows, black)


# text format ------------------------------------------------------------

def format_graph(g: Graph) -> str:
    col = g.colours()
    lines = [f"bgraph {g.n}", "colours -" if col is None else f"colours {col}".rstrip()]
    lines += [f"e {u} {v}" for u, v in g.edges()]
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_graphs(text: str) -> list[Graph]:
    graphs = []
    lines = [ln.strip() for ln in text.splitlines()]
    i = 0
    while i < len(lines):
        line = lines[i]
        if not line or line.startswith("#"):
            i += 1
            continue
        head = line.split()
        if head[0] != "bgraph" or len(head) != 2:
            raise FormatError(f"line {i + 1}: expected 'bgraph <n>'")
        try:
            n = int(head[1])
        except ValueError:
            raise FormatError(f"line {i + 1}: bad vertex count") from None
        if not 0 <= n <= MAX_N:
            raise FormatError(f"line {i + 1}: vertex count out of range")
        i += 1
        if i >= len(lines) or not lines[i].startswith("colours"):
            raise FormatError(f"line {i + 1}: expected 'colours' line")
        spec = lines[i][len("colours"):].strip()
        if spec == "-":
            colours = None
        elif len(spec) == n and set(spec) <= {"b", "w"}:
            colours = spec
        else:
            raise FormatError(f"line {i + 1}: bad colours {spec!r}")
        i += 1
        edges = []
        while True:
            if i >= len(lines):
                raise FormatError("missing 'end'")
            line = lines[i]
            i += 1
            if line == "end":
                break
            parts = line.split()
            if len(parts) != 3 or parts[0] != "e":
                raise FormatError(f"line {i}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"line {i}: bad edge") from None
            if not (0 <= u < v < n):
                raise FormatError(f"line {i}: edge must satisfy 0 <= u < v < n")
            edges.append((u, v))
        graphs.append(Graph.from_edges(n, edges, colours))
    return graphs


def parse_graph(text: str) -> Graph:
    gs = parse_graphs(text)
    if len(gs) != 1:
        raise FormatError(f"expected one graph, found {len(gs)}")
    return gs[0]


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for u in range(g.n):
        if g.black is not None and g.is_black(u):
            out.append(f'  {u} [style=filled, fillcolor=black, fontcolor=white];')
        else:
            out.append(f"  {u} [style=solid];")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
