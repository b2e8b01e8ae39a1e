"""Graph corpora for scans and acceptance runs.

``connected_graphs(n)`` lists every connected graph on ``n`` vertices up to
isomorphism, using a brute-force canonical form (fine for n <= 6).

``random_connected_graphs(n, count, seed)`` draws Erdos-Renyi graphs
G(n, p) with ``p = 0.5`` from ``random.Random(f"{seed}:{n}")`` and keeps
the connected ones, in draw order, until ``count`` are collected. The same
``(n, count, seed)`` therefore always yields the same list, and a longer
list extends a shorter one.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .graph import Graph, build_graph


def _canonical(n, edges, perms):
    return min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges)) for p in perms)


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices, one per isomorphism class."""
    if n > 6:
        raise ValueError("exhaustive enumeration is limited to n <= 6")
    if n == 1:
        return [build_graph([], 1, "K1")]
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        g = build_graph(edges, n)
        if not g.is_connected():
            continue
        key = _canonical(n, edges, perms)
        if key not in seen:
            seen[key] = build_graph(key, n, f"conn{n}_{len(seen)}")
    return list(seen.values())


def small_connected_corpus(max_n: int = 5, min_n: int = 2) -> list[Graph]:
    return [g for n in range(min_n, max_n + 1) for g in connected_graphs(n)]


def random_graphs(n: int, seed: int, p: float = 0.5) -> Iterator[Graph]:
    """Endless stream of G(n, p) draws (connected or not)."""
    rng = random.Random(f"{seed}:{n}")
    pairs = list(itertools.combinations(range(n), 2))
    i = 0
    while True:
        edges = [e for e in pairs if rng.random() < p]
        yield build_graph(edges, n, f"rand{n}_s{seed}_{i}")
        i += 1


def random_connected_graphs(n: int, count: int, seed: int, p: float = 0.5) -> list[Graph]:
    if n == 1:
        return []
    out = []
    for g in random_graphs(n, seed, p):
        if g.is_connected():
            out.append(g)
            if len(out) == count:
                return out
    return out
