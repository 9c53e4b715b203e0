"""Simple graphs, weighted targets, and the structural utilities everything
else builds on.

Vertices are always 0..n-1.  ``Graph`` is a finite simple graph (no loops, no
parallel edges); ``TargetGraph`` is a symmetric matrix of nonnegative exact
rationals, diagonal entries being loop weights.  Both are immutable values:
edge deletion, contraction etc. return new objects, so any number of
operations may run concurrently on shared inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

Edge = tuple[int, int]


class ParseError(ValueError):
    """Malformed graph or target text; names the offending line or byte."""


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on vertices 0..n-1 with a normalized edge set
    (every pair stored as (min, max))."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or not normalized for n={self.n}")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(n, frozenset(_norm(u, v) for u, v in pairs))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def add_edge(self, u: int, v: int) -> "Graph":
        e = _norm(u, v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if e in self.edges:
            raise ValueError(f"edge {e} already present")
        return Graph(self.n, self.edges | {e})

    def delete_edge(self, u: int, v: int) -> "Graph":
        e = _norm(u, v)
        if e not in self.edges:
            raise ValueError(f"edge {e} not present")
        return Graph(self.n, self.edges - {e})

    def delete_vertices(self, vs: Iterable[int]) -> "Graph":
        """Induced subgraph on the remaining vertices, ids renumbered to
        0..n-k-1 preserving relative order."""
        dead = set(vs)
        for v in dead:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        keep = [v for v in range(self.n) if v not in dead]
        remap = {v: i for i, v in enumerate(keep)}
        new_edges = [
            (remap[u], remap[v]) for u, v in self.edges if u not in dead and v not in dead
        ]
        return Graph.from_edges(len(keep), new_edges)

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1


@dataclass(frozen=True)
class Bipartition:
    """A proper 2-coloring: every edge crosses left-right."""

    left: frozenset[int]
    right: frozenset[int]


@dataclass(frozen=True)
class TargetGraph:
    """Symmetric k x k matrix of nonnegative exact rationals; diagonal
    entries are loop weights.  A simple target has entries in {0,1}."""

    w: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.w)
        for i, row in enumerate(self.w):
            if len(row) != k:
                raise ValueError(f"row {i} has length {len(row)}, expected {k}")
            for j, x in enumerate(row):
                if x < 0:
                    raise ValueError(f"negative weight at ({i},{j})")
                if self.w[j][i] != x:
                    raise ValueError(f"asymmetric weights at ({i},{j})")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "TargetGraph":
        return TargetGraph(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @property
    def k(self) -> int:
        return len(self.w)

    @cached_property
    def edge_weight_sum(self) -> Fraction:
        """Sum over ordered pairs: loops count once, other edges twice.
        Equals hom(K_2, .)"""
        return sum((x for row in self.w for x in row), Fraction(0))

    @cached_property
    def is_simple(self) -> bool:
        return all(x == 0 or x == 1 for row in self.w for x in row)

    def is_connected(self) -> bool:
        """Connectivity of the support graph (loops join nothing)."""
        k = self.k
        if k == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in range(k):
                if v not in seen and v != u and self.w[u][v] > 0:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == k

    def describe(self) -> str:
        if self.is_simple:
            loops = sum(1 for i in range(self.k) if self.w[i][i] == 1)
            return f"simple k={self.k} loops={loops} S={self.edge_weight_sum}"
        return f"weighted k={self.k} S={self.edge_weight_sum}"


# ---------------------------------------------------------------------------
# Standard graphs and targets
# ---------------------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def path_graph(n: int) -> Graph:
    """Path on n vertices (n-1 edges)."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cube_graph() -> Graph:
    """Q_3: vertices are 3-bit strings, edges flip one bit."""
    edges = []
    for v in range(8):
        for b in (1, 2, 4):
            if v < v ^ b:
                edges.append((v, v ^ b))
    return Graph.from_edges(8, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return Graph.from_edges(g.n + h.n, list(g.edges) + shifted)


def complete_target(q: int) -> TargetGraph:
    """K_q as a 0/1 target (no loops); hom(H, K_q) counts proper q-colorings."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    one, zero = Fraction(1), Fraction(0)
    return TargetGraph(tuple(tuple(one if i != j else zero for j in range(q)) for i in range(q)))


# Hard-core target: K_2 with a loop at vertex 0.  A map hits an independent
# set exactly where it takes the loopless vertex 1.
IND_OUT = 0
IND_IN = 1


def hard_core_target() -> TargetGraph:
    return TargetGraph.from_rows([[1, 1], [1, 0]])


# Widom-Rowlinson target: path a-b-c with a loop at every vertex.  a and c
# (red/blue) are the non-adjacent end colors, b (white) the middle.
WR_A = 0
WR_B = 1
WR_C = 2


def widom_rowlinson_target() -> TargetGraph:
    return TargetGraph.from_rows([[1, 1, 0], [1, 1, 1], [0, 1, 1]])


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_edgelist(text: str) -> Graph:
    """Parse the "n m" header format: m lines "u v", 0-based ids,
    '#' starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty input, expected 'n m' header")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: header must be 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: header must be two integers, got {header!r}") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: negative count in header")
    if len(rows) - 1 != m:
        raise ParseError(f"header promises {m} edges, found {len(rows) - 1} edge lines")
    edges = set()
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: edge line must be 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: edge line must be two integers, got {line!r}") from None
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        e = _norm(u, v)
        if e in edges:
            raise ParseError(f"line {lineno}: duplicate edge {e}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges]
    return "\n".join(lines) + "\n"


def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes([126, 126]) + bytes(((n >> (6 * i)) & 63) + 63 for i in range(5, -1, -1))
    raise ValueError("graph too large for graph6")


def _g6_decode_n(data: bytes) -> tuple[int, int]:
    """Returns (n, bytes consumed)."""
    if not data:
        raise ParseError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise ParseError("truncated graph6 vertex count")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        return n, 4
    if len(data) < 8:
        raise ParseError("truncated graph6 vertex count")
    n = 0
    for b in data[2:8]:
        n = (n << 6) | (b - 63)
    return n, 8


def parse_graph6(text: str) -> Graph:
    """Header-free graph6: bytes 63..126, upper triangle packed column-wise
    in 6-bit groups."""
    s = text.strip()
    data = s.encode("ascii", errors="replace")
    for pos, b in enumerate(data):
        if not (63 <= b <= 126):
            raise ParseError(f"byte {pos}: value {b} outside graph6 range 63..126")
    n, used = _g6_decode_n(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[used:]
    if len(body) != nbytes:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {nbytes} for n={n}")
    bits = []
    for b in body:
        x = b - 63
        bits.extend((x >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits in graph6 body")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    out = bytearray(_g6_encode_n(g.n))
    bits = []
    es = g.edges
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in es else 0)
    while len(bits) % 6:
        bits.append(0)
    for p in range(0, len(bits), 6):
        x = 0
        for b in bits[p:p + 6]:
            x = (x << 1) | b
        out.append(x + 63)
    return out.decode("ascii")


def parse_graph(text: str, fmt: str) -> Graph:
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def parse_target(text: str) -> TargetGraph:
    """Target file: first a vertex count k, then k rows of k entries, each an
    integer or 'p/q' rational; whitespace separated, '#' comments allowed."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty target input")
    lineno, header = rows[0]
    try:
        k = int(header)
    except ValueError:
        raise ParseError(f"line {lineno}: expected vertex count, got {header!r}") from None
    if k < 0:
        raise ParseError(f"line {lineno}: negative vertex count")
    if len(rows) - 1 != k:
        raise ParseError(f"expected {k} matrix rows, found {len(rows) - 1}")
    mat = []
    for i, (lineno, line) in enumerate(rows[1:]):
        parts = line.split()
        if len(parts) != k:
            raise ParseError(f"line {lineno}: expected {k} entries, got {len(parts)}")
        row = []
        for tok in parts:
            try:
                row.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"line {lineno}: bad rational {tok!r}") from None
        mat.append(row)
    try:
        return TargetGraph.from_rows(mat)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def to_target_text(t: TargetGraph) -> str:
    lines = [str(t.k)]
    for row in t.w:
        lines.append(" ".join(str(x) if x.denominator > 1 else str(x.numerator) for x in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------

def connected_components(g: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by minimum."""
    seen = [False] * g.n
    comps = []
    adj = g.adjacency
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _two_color(g: Graph) -> tuple[Optional[list[int]], Optional[Edge]]:
    """BFS 2-coloring from each component minimum.  Returns (colors, None) on
    success or (partial colors, conflicting edge) on an odd cycle."""
    color: list[int] = [-1] * g.n
    adj = g.adjacency
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            nxt = []
            for u in queue:
                for v in adj[u]:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        nxt.append(v)
                    elif color[v] == color[u]:
                        return color, _norm(u, v)
            queue = nxt
    return color, None


def bipartition(g: Graph) -> Optional[Bipartition]:
    """Deterministic bipartition: the smallest vertex of each component goes
    left.  None when the graph has an odd cycle."""
    color, conflict = _two_color(g)
    if conflict is not None:
        return None
    left = frozenset(v for v in range(g.n) if color[v] == 0)
    right = frozenset(v for v in range(g.n) if color[v] == 1)
    return Bipartition(left, right)


def odd_closed_walk(g: Graph) -> Optional[list[int]]:
    """A closed walk of odd length witnessing non-bipartiteness, as a vertex
    list with first == last; None for bipartite graphs."""
    adj = g.adjacency
    for s in range(g.n):
        depth = {s: 0}
        parent = {s: -1}
        queue = [s]
        while queue:
            nxt = []
            for u in queue:
                for v in adj[u]:
                    if v not in depth:
                        depth[v] = depth[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif depth[v] == depth[u]:
                        # same BFS level: path(s..u) + edge + path(v..s) is odd
                        up, vp = [u], [v]
                        while up[-1] != s:
                            up.append(parent[up[-1]])
                        while vp[-1] != s:
                            vp.append(parent[vp[-1]])
                        return list(reversed(up)) + vp
            queue = nxt
    return None


def identify_vertices(g: Graph, u: int, v: int) -> Graph:
    """Merge v into u (any loop this creates is dropped, parallels collapse),
    then renumber preserving order.  The chromatic identification H/uv."""
    if u == v:
        raise ValueError("cannot identify a vertex with itself")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex pair ({u},{v}) out of range")
    lo, hi = min(u, v), max(u, v)

    def remap(x: int) -> int:
        if x == hi:
            x = lo
        return x if x < hi else x - 1

    edges = set()
    for a, b in g.edges:
        a2, b2 = remap(a), remap(b)
        if a2 != b2:
            edges.add(_norm(a2, b2))
    return Graph(g.n - 1, frozenset(edges))


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Contraction G/e for the deletion-contraction recursion: endpoints are
    identified into the smaller id, parallels merge, loops are discarded."""
    e = _norm(*e)
    if e not in g.edges:
        raise ValueError(f"edge {e} not in graph")
    return identify_vertices(g, e[0], e[1])


def spanning_tree(g: Graph) -> Graph:
    """BFS tree from vertex 0, neighbors visited in ascending order."""
    if g.n == 0:
        return g
    adj = g.adjacency
    seen = [False] * g.n
    seen[0] = True
    tree = []
    queue = [0]
    count = 1
    while queue:
        nxt = []
        for u in queue:
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    tree.append((u, v))
                    nxt.append(v)
        queue = nxt
    if count < g.n:
        raise ValueError("graph is disconnected, no spanning tree")
    return Graph.from_edges(g.n, tree)


def _find_even_cycle(g: Graph, alive: set[int], max_len: int) -> Optional[tuple[int, ...]]:
    """Shortest even cycle of length <= max_len inside `alive`, shortest
    length first, then lexicographically least traversal."""
    adj = g.adjacency
    for t in range(4, max_len + 1, 2):
        for s in sorted(alive):
            path = [s]
            onpath = {s}

            def dfs() -> Optional[tuple[int, ...]]:
                u = path[-1]
                if len(path) == t:
                    if s in adj[u] and path[1] < path[-1]:
                        return tuple(path)
                    return None
                for w in adj[u]:
                    if w in alive and w > s and w not in onpath:
                        path.append(w)
                        onpath.add(w)
                        found = dfs()
                        if found is not None:
                            return found
                        path.pop()
                        onpath.discard(w)
                return None

            found = dfs()
            if found is not None:
                return found
    return None


def greedy_cycle_packing(g: Graph, max_len: int) -> list[tuple[int, ...]]:
    """Vertex-disjoint even cycles of length <= max_len: repeatedly take a
    shortest even cycle among the remaining vertices and remove it.  Not a
    maximum packing, but any valid packing is enough for the bounds built
    on it."""
    if max_len < 4:
        raise ValueError("even cycles need max_len >= 4")
    alive = set(range(g.n))
    cycles = []
    while True:
        c = _find_even_cycle(g, alive, max_len)
        if c is None:
            return cycles
        cycles.append(c)
        alive -= set(c)


def cycle_edges(cycle: tuple[int, ...]) -> list[Edge]:
    return [_norm(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle via BFS from every vertex; None if acyclic."""
    best: Optional[int] = None
    adj = g.adjacency
    for s in range(g.n):
        depth = {s: 0}
        parent = {s: -1}
        queue = [s]
        while queue:
            nxt = []
            for u in queue:
                for v in adj[u]:
                    if v not in depth:
                        depth[v] = depth[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif v != parent[u]:
                        cand = depth[u] + depth[v] + 1
                        if best is None or cand < best:
                            best = cand
            queue = nxt
    return best
