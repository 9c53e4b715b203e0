"""Shared brute-force oracles and graph strategies.

The oracles enumerate maps/subsets directly with itertools and never touch
the library's counting code paths, so every agreement test compares two
genuinely independent routes.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from homverify.graphs import Graph, TargetGraph


def brute_hom(g: Graph, t: TargetGraph, constraint=None) -> Fraction:
    """Sum over all maps of the product of edge weights."""
    allowed = [list(range(t.k)) for _ in range(g.n)]
    if constraint is not None:
        for v, ts in constraint.allowed.items():
            allowed[v] = sorted(ts)
    total = Fraction(0)
    for phi in itertools.product(*allowed):
        w = Fraction(1)
        for u, v in g.edges:
            w *= t.w[phi[u]][phi[v]]
            if not w:
                break
        total += w
    return total


def brute_ind(g: Graph) -> int:
    count = 0
    for r in range(g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            s = set(sub)
            if all(not (u in s and v in s) for u, v in g.edges):
                count += 1
    return count


def brute_wr(g: Graph) -> int:
    count = 0
    for phi in itertools.product("abc", repeat=g.n):
        if all({phi[u], phi[v]} != {"a", "c"} for u, v in g.edges):
            count += 1
    return count


def brute_chrom(g: Graph, q: int) -> int:
    count = 0
    for phi in itertools.product(range(q), repeat=g.n):
        if all(phi[u] != phi[v] for u, v in g.edges):
            count += 1
    return count


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


@st.composite
def graphs_with_edge(draw, min_n: int = 2, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.integers(1, (1 << len(pairs)) - 1))
    g = Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
    e = draw(st.sampled_from(sorted(g.edges)))
    return g, e


@st.composite
def weighted_targets(draw, min_k: int = 1, max_k: int = 3):
    k = draw(st.integers(min_k, max_k))
    tenths = st.integers(0, 10)
    mat = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            x = Fraction(draw(tenths), 10)
            mat[i][j] = mat[j][i] = x
    return TargetGraph(tuple(tuple(row) for row in mat))
