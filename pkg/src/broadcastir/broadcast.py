"""Broadcasts and their basic predicates.

A broadcast on a graph with ``n`` vertices is a length-``n`` tuple of
non-negative powers with ``f[v] <= ecc(v)``. Vertex sets are handled
internally as integer bitmasks; :class:`BroadcastAnalysis` exposes them as
frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphInputError, InvalidBroadcastError, TrivialComponentError
from .graph import Graph

Broadcast = tuple  # tuple[int, ...], one power per vertex


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def require_nontrivial(g: Graph) -> None:
    iso = g.isolated_vertices()
    if iso:
        raise TrivialComponentError(iso)


def check_broadcast(g: Graph, f: Sequence[int]) -> Broadcast:
    """Validate ``f`` against ``g`` and return it as a tuple."""
    require_nontrivial(g)
    if len(f) != g.n:
        raise GraphInputError(f"broadcast has {len(f)} entries for a graph on {g.n} vertices")
    for v, p in enumerate(f):
        if p < 0 or p > g.ecc[v]:
            raise InvalidBroadcastError(v, p, g.ecc[v])
    return tuple(int(p) for p in f)


def zero(g: Graph) -> Broadcast:
    return (0,) * g.n


def cost(f: Sequence[int]) -> int:
    return sum(f)


def positive(f: Sequence[int]) -> list[int]:
    return [v for v, p in enumerate(f) if p > 0]


def leq(f: Sequence[int], h: Sequence[int]) -> bool:
    """Pointwise ``f <= h``."""
    return all(a <= b for a, b in zip(f, h))


def lt(f: Sequence[int], h: Sequence[int]) -> bool:
    """``f <= h`` with strict inequality somewhere."""
    return leq(f, h) and any(a < b for a, b in zip(f, h))


# -- bitmask kernels (no validation) ---------------------------------------


def dominated_mask(g: Graph, f: Sequence[int]) -> int:
    m = 0
    for v, p in enumerate(f):
        if p:
            m |= g.cover(v, p)
    return m


def undominated_mask(g: Graph, f: Sequence[int]) -> int:
    return g.full_mask & ~dominated_mask(g, f)


def pb_masks(g: Graph, f: Sequence[int]) -> dict[int, int]:
    """Private boundary of every broadcasting vertex, by literal decrement.

    ``PB_f(v)`` is the part of ``N_f[v]`` left undominated once ``f(v)`` drops
    by one, i.e. ``N_f[v]`` minus ``N_{f(v)-1}[v]`` minus everyone else's cover.
    """
    vplus = [v for v, p in enumerate(f) if p]
    covers = [g.cover(v, f[v]) for v in vplus]
    k = len(covers)
    suffix = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] | covers[i]
    out = {}
    prefix = 0
    for i, v in enumerate(vplus):
        others = prefix | suffix[i + 1]
        out[v] = covers[i] & ~(g.cover(v, f[v] - 1) | others)
        prefix |= covers[i]
    return out


def irredundant_fast(g: Graph, f: Sequence[int]) -> bool:
    return all(pb_masks(g, f).values())


# -- public predicates -------------------------------------------------------


@dataclass(frozen=True)
class BroadcastAnalysis:
    """Derived vertex sets of a broadcast."""

    vplus: frozenset
    vone: frozenset
    vplusplus: frozenset
    undominated: frozenset
    fneigh: dict
    boundary: dict
    pneigh: dict
    pbound: dict
    epbound: dict

    def to_json(self) -> dict:
        def s(x):
            return sorted(x)

        return {
            "vplus": s(self.vplus),
            "vone": s(self.vone),
            "vplusplus": s(self.vplusplus),
            "undominated": s(self.undominated),
            "per_vertex": {
                str(v): {
                    "fneigh": s(self.fneigh[v]),
                    "boundary": s(self.boundary[v]),
                    "pneigh": s(self.pneigh[v]),
                    "pbound": s(self.pbound[v]),
                    "epbound": s(self.epbound[v]),
                }
                for v in sorted(self.vplus)
            },
        }


def analyze(g: Graph, f: Sequence[int]) -> BroadcastAnalysis:
    f = check_broadcast(g, f)
    vplus = positive(f)
    covers = {v: g.cover(v, f[v]) for v in vplus}
    pbs = pb_masks(g, f)
    fneigh, boundary, pneigh, pbound, epbound = {}, {}, {}, {}, {}
    for v in vplus:
        others = 0
        for w in vplus:
            if w != v:
                others |= covers[w]
        fneigh[v] = frozenset(bits(covers[v]))
        boundary[v] = frozenset(bits(g.sphere(v, f[v])))
        pneigh[v] = frozenset(bits(covers[v] & ~others))
        pbound[v] = frozenset(bits(pbs[v]))
        epbound[v] = pbound[v] - {v}
    return BroadcastAnalysis(
        vplus=frozenset(vplus),
        vone=frozenset(v for v in vplus if f[v] == 1),
        vplusplus=frozenset(v for v in vplus if f[v] > 1),
        undominated=frozenset(bits(undominated_mask(g, f))),
        fneigh=fneigh,
        boundary=boundary,
        pneigh=pneigh,
        pbound=pbound,
        epbound=epbound,
    )


def is_dominating(g: Graph, f: Sequence[int]) -> bool:
    f = check_broadcast(g, f)
    return undominated_mask(g, f) == 0


def is_irredundant(g: Graph, f: Sequence[int]) -> bool:
    """Every broadcasting vertex has a nonempty private boundary (true for f = 0)."""
    f = check_broadcast(g, f)
    return irredundant_fast(g, f)


def is_minimal_dominating(g: Graph, f: Sequence[int]) -> bool:
    f = check_broadcast(g, f)
    return undominated_mask(g, f) == 0 and irredundant_fast(g, f)


def has_epb_everywhere(g: Graph, f: Sequence[int]) -> bool:
    f = check_broadcast(g, f)
    return all(pb & ~(1 << v) for v, pb in pb_masks(g, f).items())
