"""Simple undirected graphs with precomputed metric data.

Vertices are ``0..n-1``. Every graph carries its all-pairs distance matrix,
eccentricities, connected components and, for fast set algebra, a table of
distance balls encoded as integer bitmasks (bit ``u`` of ``ball(v, r)`` is set
iff ``d(u, v) <= r``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphInputError, PreconditionError

UNREACHABLE = 10**9

FAMILIES = ("path", "cycle", "complete", "grid", "spider", "tworcliques")


class Graph:
    """Immutable simple graph. Build it with :func:`build_graph`."""

    __slots__ = (
        "n", "adj", "edges", "dist", "ecc", "components", "component_of",
        "_balls", "nbr_mask", "full_mask", "name",
    )

    def __init__(self, n: int, adj: Sequence[Sequence[int]], name: str = ""):
        self.n = n
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.edges = tuple((u, v) for u in range(n) for v in self.adj[u] if u < v)
        self.name = name
        self.dist = tuple(tuple(row) for row in _bfs_all_pairs(n, self.adj))

        comp_of = [-1] * n
        comps = []
        for s in range(n):
            if comp_of[s] < 0:
                members = [v for v in range(n) if self.dist[s][v] < UNREACHABLE]
                for v in members:
                    comp_of[v] = len(comps)
                comps.append(tuple(members))
        self.components = tuple(comps)
        self.component_of = tuple(comp_of)
        self.ecc = tuple(
            max(d for d in self.dist[v] if d < UNREACHABLE) for v in range(n)
        )

        balls = []
        for v in range(n):
            by_radius = [0] * (self.ecc[v] + 1)
            for u in range(n):
                d = self.dist[v][u]
                if d < UNREACHABLE:
                    by_radius[d] |= 1 << u
            acc = 0
            for r in range(len(by_radius)):
                acc |= by_radius[r]
                by_radius[r] = acc
            balls.append(tuple(by_radius))
        self._balls = tuple(balls)
        self.nbr_mask = tuple(sum(1 << u for u in self.adj[v]) for v in range(n))
        self.full_mask = (1 << n) - 1

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Graph{label} n={self.n} m={len(self.edges)}>"

    def __eq__(self, other):
        return isinstance(other, Graph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __reduce__(self):
        # rebuild from adjacency so pickling works despite the setattr guard
        return (Graph, (self.n, self.adj, self.name))

    def __setattr__(self, key, value):
        if hasattr(self, "full_mask"):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, key, value)

    # -- metric helpers -------------------------------------------------

    def ball(self, v: int, r: int) -> int:
        """Bitmask of ``N_r[v]``; radii beyond ``ecc(v)`` give the whole component."""
        if r < 0:
            return 0
        table = self._balls[v]
        return table[r] if r < len(table) else table[-1]

    def cover(self, v: int, power: int) -> int:
        """Vertices hearing ``v`` when it broadcasts with ``power`` (empty for 0)."""
        return self.ball(v, power) if power > 0 else 0

    def sphere(self, v: int, r: int) -> int:
        """Bitmask of vertices at distance exactly ``r`` from ``v``."""
        return self.ball(v, r) & ~self.ball(v, r - 1)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def degree(self, v: int) -> int:
        return len(self.adj[v])


def _bfs_all_pairs(n, adj):
    rows = []
    for s in range(n):
        dist = [UNREACHABLE] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] == UNREACHABLE:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        rows.append(dist)
    return rows


def build_graph(edges: Iterable[tuple[int, int]], n: int, name: str = "") -> Graph:
    """Build a graph on ``n`` vertices, deduplicating repeated edges.

    Raises :class:`GraphInputError` for loops or out-of-range endpoints.
    """
    if n < 1:
        raise GraphInputError(f"vertex count must be positive, got {n}")
    adj = [set() for _ in range(n)]
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"loop edge {(u, v)} is not allowed")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj, name)


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``vs`` with its own distances, plus the old->new map."""
    keep = sorted(set(vs))
    if not keep:
        raise PreconditionError("induced subgraph needs a nonempty vertex set")
    mapping = {old: new for new, old in enumerate(keep)}
    edges = [
        (mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping
    ]
    return build_graph(edges, len(keep), name=g.name and f"{g.name}[sub]"), mapping


def radius(g: Graph) -> int:
    if not g.is_connected():
        raise PreconditionError("radius is defined for connected graphs only")
    return min(g.ecc)


def diameter(g: Graph) -> int:
    if not g.is_connected():
        raise PreconditionError("diameter is defined for connected graphs only")
    return max(g.ecc)


def centers(g: Graph) -> list[int]:
    r = radius(g)
    return [v for v in range(g.n) if g.ecc[v] == r]


# -- families ------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family with integer parameters.

    Numbering conventions:

    * ``path(n)``, ``cycle(n)``: vertices in order along the path/cycle.
    * ``complete(n)``: ``K_n``.
    * ``grid(m, n)``: vertex ``i*n + j`` is row ``i``, column ``j``.
    * ``spider(n)``: ``K_{1,n}`` with every edge subdivided once; center 0,
      midpoints ``1..n``, leaf ``n+i`` hangs off midpoint ``i``.
    * ``tworcliques(r)``: two copies of ``K_{r+1}`` (``0..r`` and
      ``r+1..2r+1``) joined by the matching ``(i, r+1+i)`` for ``i=1..r``;
      vertices 0 and ``r+1`` stay unmatched.
    """

    family: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphInputError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        need = 2 if self.family == "grid" else 1
        if len(self.params) != need:
            raise GraphInputError(f"{self.family} takes {need} parameter(s), got {self.params}")
        lo = {"path": 1, "cycle": 3, "complete": 1, "grid": 1, "spider": 2, "tworcliques": 3}
        if min(self.params) < lo[self.family]:
            raise GraphInputError(
                f"{self.family} parameters must be >= {lo[self.family]}, got {self.params}"
            )

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``name:a`` or ``name:a,b`` (``grid:3,3`` or ``grid:3x3``)."""
        name, _, rest = text.partition(":")
        try:
            params = tuple(int(p) for p in rest.replace("x", ",").split(",") if p)
        except ValueError:
            raise GraphInputError(f"bad family parameters in {text!r}") from None
        return cls(name.strip().lower(), params)

    def __str__(self):
        return f"{self.family}:{','.join(map(str, self.params))}"


def generate(spec: FamilySpec) -> Graph:
    fam, p = spec.family, spec.params
    if fam == "path":
        n = p[0]
        return build_graph([(i, i + 1) for i in range(n - 1)], n, str(spec))
    if fam == "cycle":
        n = p[0]
        return build_graph([(i, (i + 1) % n) for i in range(n)], n, str(spec))
    if fam == "complete":
        n = p[0]
        return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)], n, str(spec))
    if fam == "grid":
        m, n = p
        edges = []
        for i in range(m):
            for j in range(n):
                if j + 1 < n:
                    edges.append((i * n + j, i * n + j + 1))
                if i + 1 < m:
                    edges.append((i * n + j, (i + 1) * n + j))
        return build_graph(edges, m * n, str(spec))
    if fam == "spider":
        n = p[0]
        edges = [(0, i) for i in range(1, n + 1)] + [(i, n + i) for i in range(1, n + 1)]
        return build_graph(edges, 2 * n + 1, str(spec))
    # tworcliques
    r = p[0]
    k = r + 1
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    edges += [(k + i, k + j) for i in range(k) for j in range(i + 1, k)]
    edges += [(i, k + i) for i in range(1, k)]
    return build_graph(edges, 2 * k, str(spec))
