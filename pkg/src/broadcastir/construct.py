"""Build a dominating broadcast from a maximal irredundant one.

Given a maximal irredundant broadcast ``f`` the construction produces a
dominating broadcast ``g`` with ``4*cost(g) <= 5*cost(f)``:

1. Broadcasters whose cover balls intersect are joined in the *overlap
   graph*; its components are classed A1..A4 by their total power (A4 means
   total >= 4).
2. Some two- and one-vertex components (classes B, C, D, together E) are
   costly to dominate on their own; each of them annihilates a broadcaster
   in another component, and they are chained with it into a cluster.
3. Every cluster and every leftover A4 component is dominated from one
   central vertex at power ``1 + total``; the surcharge is at most a quarter
   of the total because the total is at least 4. Every remaining A1..A3
   component is dominated at exactly its own cost.

Each undominated vertex is assigned to the territory of the least-index
component it annihilates, so territories are disjoint. Every step asserts
its own preconditions and bounds; failures are collected as diagnostics and
raised together as :class:`ConstructionError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .broadcast import bits, check_broadcast, cost, pb_masks, undominated_mask
from .errors import InvariantViolation, PreconditionError
from .graph import UNREACHABLE, Graph, induced_subgraph
from .irredundance import _d_f, is_maximal_irredundant


class ConstructionError(InvariantViolation):
    def __init__(self, diagnostics, trace=None):
        self.diagnostics = diagnostics
        self.trace = trace
        lines = "; ".join(f"[{d['case']}] component {d['component']}: {d['message']}" for d in diagnostics)
        super().__init__(f"construction failed: {lines}")


@dataclass
class Component:
    index: int
    vertices: tuple
    total: int
    a_class: str  # "A1" .. "A4"
    e_class: str | None = None  # "B", "C", "D" or None
    core: int = 0  # bitmask of the union of cover balls
    annihilators: int = 0  # every undominated vertex annihilating a member
    territory: int = 0  # core plus the undominated vertices assigned here
    targets: tuple = ()  # broadcasters annihilated by this component (E only)
    target: int | None = None
    role: tuple = ()  # class-specific vertex roles, e.g. (v, w)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "vertices": list(self.vertices),
            "total": self.total,
            "class": self.a_class,
            "e_class": self.e_class,
            "core": bits(self.core),
            "territory": bits(self.territory),
            "targets": list(self.targets),
            "target": self.target,
        }


@dataclass
class OverlapGraph:
    vertices: tuple
    edges: tuple
    components: list  # list[Component]
    comp_of: dict

    def classes(self) -> dict:
        out = {"A1": [], "A2": [], "A3": [], "A4": []}
        for c in self.components:
            out[c.a_class].append(c.index)
        return out


@dataclass
class ChainCluster:
    members: list
    territory: int
    total: int
    center: int | None = None

    def to_json(self) -> dict:
        return {
            "members": list(self.members),
            "territory": bits(self.territory),
            "total": self.total,
            "rad_bound": self.total + 1,
            "center": self.center,
        }


@dataclass
class ConstructionTrace:
    f: tuple
    overlap: OverlapGraph
    clusters: list
    a4_prime: list
    assignments: list = field(default_factory=list)  # dicts: case, component(s), vertex, power
    checks: list = field(default_factory=list)  # numeric bound assertions
    diagnostics: list = field(default_factory=list)
    notes: list = field(default_factory=list)  # non-fatal departures from the textbook cases
    g: tuple | None = None

    @property
    def cost_f(self) -> int:
        return cost(self.f)

    @property
    def cost_g(self) -> int:
        return cost(self.g) if self.g is not None else -1

    @property
    def bound_holds(self) -> bool:
        return self.g is not None and 4 * self.cost_g <= 5 * self.cost_f

    def to_json(self) -> dict:
        return {
            "f": {str(v): p for v, p in enumerate(self.f) if p},
            "components": [c.to_json() for c in self.overlap.components],
            "overlap_edges": [list(e) for e in self.overlap.edges],
            "clusters": [c.to_json() for c in self.clusters],
            "a4_prime": list(self.a4_prime),
            "assignments": list(self.assignments),
            "checks": list(self.checks),
            "diagnostics": list(self.diagnostics),
            "notes": list(self.notes),
            "g": None if self.g is None else {str(v): p for v, p in enumerate(self.g) if p},
            "cost_f": self.cost_f,
            "cost_g": self.cost_g,
            "bound_4g_le_5f": self.bound_holds,
        }


# -- helpers -------------------------------------------------------------------


def _sub_metrics(g: Graph, mask: int):
    """Eccentricities inside the subgraph induced by ``mask`` (keyed by old vertex)."""
    sub, mapping = induced_subgraph(g, bits(mask))
    ecc = {}
    for old, new in mapping.items():
        row = sub.dist[new]
        ecc[old] = max(row)
    return ecc


def _center(g: Graph, mask: int):
    ecc = _sub_metrics(g, mask)
    best = min(ecc.values())
    c = min(v for v, e in ecc.items() if e == best)
    return c, ecc


def _bounds(g: Graph, mask: int):
    ecc = _sub_metrics(g, mask)
    return min(ecc.values()), max(ecc.values())


def _has_nonadjacent_pair(g: Graph, mask: int) -> bool:
    vs = bits(mask)
    return any(not g.nbr_mask[a] >> b & 1 for i, a in enumerate(vs) for b in vs[i + 1:])


# -- overlap graph and classes -----------------------------------------------


def build_overlap_graph(g: Graph, f: Sequence[int], check: bool = True) -> OverlapGraph:
    """Components of the graph on broadcasters whose cover balls intersect."""
    f = check_broadcast(g, f)
    if check and not is_maximal_irredundant(g, f):
        raise PreconditionError("f is not maximal irredundant")
    return _overlap(g, f)


def _overlap(g, f):
    vplus = [v for v, p in enumerate(f) if p]
    cover = {v: g.cover(v, f[v]) for v in vplus}
    edges = tuple(
        (a, b) for i, a in enumerate(vplus) for b in vplus[i + 1:] if cover[a] & cover[b]
    )
    nbrs = {v: [] for v in vplus}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    comps, comp_of = [], {}
    for s in vplus:
        if s in comp_of:
            continue
        stack, members = [s], []
        comp_of[s] = len(comps)
        while stack:
            x = stack.pop()
            members.append(x)
            for y in nbrs[x]:
                if y not in comp_of:
                    comp_of[y] = len(comps)
                    stack.append(y)
        members.sort()
        total = sum(f[x] for x in members)
        core = 0
        for x in members:
            core |= cover[x]
        comps.append(
            Component(len(comps), tuple(members), total, f"A{min(total, 4)}", core=core)
        )
    return OverlapGraph(tuple(vplus), edges, comps, comp_of)


class _Ctx:
    """Shared data for one construction run."""

    def __init__(self, g, f):
        self.g, self.f = g, f
        self.umask = undominated_mask(g, f)
        self.pbs = pb_masks(g, f)
        self.vplus = [v for v, p in enumerate(f) if p]

    def u_annihilates(self, u, x):
        return self.pbs[x] & ~self.g.nbr_mask[u] == 0

    def annihilators_of(self, x):
        return [u for u in bits(self.umask) if self.u_annihilates(u, x)]

    def boundary(self, x):
        return self.g.sphere(x, self.f[x])

    def nonadjacent_to(self, u, mask):
        return self.g.nbr_mask[u] & mask == 0

    def v_annihilates(self, v, z):
        """Dominated vertex ``v`` annihilates broadcaster ``z``."""
        k = _d_f(self.g, self.f, self.umask, v)
        return k is not None and self.pbs[z] & ~self.g.ball(v, self.f[v] + k) == 0


def _classify_one(ctx: _Ctx, comp: Component):
    g, f = ctx.g, ctx.f
    if comp.a_class not in ("A2", "A3"):
        return None
    xs = comp.vertices
    if len(xs) == 2:
        for v, w in (xs, xs[::-1]):
            # B: f(v)=1, f(w) in {1,2}, d(v,w)=f(w), with far-side annihilators on both ends
            if f[v] == 1 and f[w] in (1, 2) and g.dist[v][w] == f[w]:
                bw, bv = ctx.boundary(w), ctx.boundary(v)
                uv = [u for u in ctx.annihilators_of(v) if ctx.nonadjacent_to(u, bw)]
                uw = [u for u in ctx.annihilators_of(w) if ctx.nonadjacent_to(u, bv)]
                if uv and uw:
                    return "B", (v, w)
        for v, w in (xs, xs[::-1]):
            # C: f(v)=1, f(w)=2, d(v,w)=3, w annihilated, some v' in PB(v) far from B_f(w)
            if f[v] == 1 and f[w] == 2 and g.dist[v][w] == 3 and ctx.annihilators_of(w):
                bw = ctx.boundary(w)
                if any(ctx.nonadjacent_to(x, bw) for x in bits(ctx.pbs[v])):
                    return "C", (v, w)
    if len(xs) == 1:
        (w,) = xs
        if f[w] in (2, 3) and ctx.annihilators_of(w) and _has_nonadjacent_pair(g, ctx.pbs[w]):
            return "D", (w,)
    return None


def _targets(ctx: _Ctx, comp: Component):
    g, f = ctx.g, ctx.f
    inside = set(comp.vertices)
    if comp.e_class == "B":
        v, w = comp.role
        reach = g.sphere(v, f[v] + 1) | g.sphere(w, f[w] + 1)
        return [z for z in ctx.vplus if z not in inside and ctx.pbs[z] & ~reach == 0]
    w = comp.role[-1]
    return [z for z in ctx.vplus if z not in inside and ctx.v_annihilates(w, z)]


def classify_BCD(g: Graph, f: Sequence[int], og: OverlapGraph | None = None) -> dict:
    """Map component index -> "B" | "C" | "D" for the members of E."""
    f = check_broadcast(g, f)
    og = og or _overlap(g, f)
    ctx = _Ctx(g, f)
    out = {}
    for comp in og.components:
        res = _classify_one(ctx, comp)
        if res:
            out[comp.index] = res[0]
    return out


def find_annihilation_target(g: Graph, f: Sequence[int], X: Sequence[int]):
    """``(z, component index)`` annihilated by the E-member with vertex set ``X``."""
    f = check_broadcast(g, f)
    og = _overlap(g, f)
    ctx = _Ctx(g, f)
    comp = og.components[og.comp_of[min(X)]]
    if set(comp.vertices) != set(X):
        raise PreconditionError(f"{sorted(X)} is not a component of the overlap graph")
    res = _classify_one(ctx, comp)
    if not res:
        raise PreconditionError(f"component {sorted(X)} is not in B, C or D")
    comp.e_class, comp.role = res
    for z in _targets(ctx, comp):
        if og.components[og.comp_of[z]].a_class != "A1":
            return z, og.comp_of[z]
    raise InvariantViolation(f"component {sorted(X)} annihilates no broadcaster outside A1")


# -- the construction ------------------------------------------------------------


def construct_dominating(g: Graph, f: Sequence[int], check: bool = True) -> ConstructionTrace:
    """Run the construction; raises :class:`ConstructionError` on any failed assertion."""
    f = check_broadcast(g, f)
    if check and not is_maximal_irredundant(g, f):
        raise PreconditionError("f is not maximal irredundant")
    ctx = _Ctx(g, f)
    og = _overlap(g, f)
    comps = og.components
    diags = []

    def fail(case, comp, message):
        diags.append({"case": case, "component": comp, "message": message})

    def note(case, comp, message):
        trace.notes.append({"case": case, "component": comp, "message": message})

    # territories --------------------------------------------------------
    for u in bits(ctx.umask):
        owners = sorted({og.comp_of[x] for x in ctx.vplus if ctx.u_annihilates(u, x)})
        if not owners:
            fail("territory", None, f"undominated vertex {u} annihilates no broadcaster")
            continue
        for ci in owners:
            comps[ci].annihilators |= 1 << u
        comps[owners[0]].territory |= 1 << u
    for c in comps:
        c.territory |= c.core

    trace = ConstructionTrace(f, og, [], [])
    checks = trace.checks

    # bounds on the full territories G_X and G'_X
    for c in comps:
        rad_x, diam_x = _bounds(g, c.core | c.annihilators)
        rad_c, diam_c = _bounds(g, c.core)
        ok = diam_x <= 2 * c.total + 2 and rad_x <= c.total + 1 and diam_c <= 2 * c.total and rad_c <= c.total
        checks.append({
            "check": "territory_bounds", "component": c.index, "total": c.total,
            "diam_GX": diam_x, "rad_GX": rad_x, "diam_GX_core": diam_c, "rad_GX_core": rad_c, "ok": ok,
        })
        if not ok:
            fail("territory_bounds", c.index, f"diam/rad bounds violated ({diam_x},{rad_x},{diam_c},{rad_c})")

    # classes B, C, D and their targets ---------------------------------------
    E = []
    for c in comps:
        res = _classify_one(ctx, c)
        if res:
            c.e_class, c.role = res
            c.targets = tuple(_targets(ctx, c))
            good = [z for z in c.targets if comps[og.comp_of[z]].a_class != "A1"]
            if not good:
                fail(c.e_class, c.index, "no annihilation target outside A1")
                continue
            c.target = good[0]
            E.append(c.index)

    # chains ------------------------------------------------------------------
    placed = {}
    for seed in E:
        if seed in placed:
            continue
        k = len(trace.clusters)
        members = [seed]
        placed[seed] = k
        second = og.comp_of[comps[seed].target]
        if second in placed:
            fail("chain", seed, f"target component {second} already belongs to cluster {placed[second]}")
            continue
        members.append(second)
        placed[second] = k
        grew = True
        while grew:
            grew = False
            in_cluster = {x for m in members for x in comps[m].vertices}
            for other in E:
                if other not in placed and in_cluster.intersection(comps[other].targets):
                    members.append(other)
                    placed[other] = k
                    grew = True
                    break
        territory = 0
        for m in members:
            territory |= comps[m].territory
        trace.clusters.append(ChainCluster(members, territory, sum(comps[m].total for m in members)))

    trace.a4_prime = [c.index for c in comps if c.a_class == "A4" and c.index not in placed]

    # assemble g --------------------------------------------------------------
    out = [0] * g.n

    def assign(case, comp, vertex, power, territory, radius_needed):
        capped = min(power, g.ecc[vertex])
        if out[vertex]:
            fail(case, comp, f"vertex {vertex} already assigned")
        out[vertex] = capped
        ecc = _sub_metrics(g, territory)[vertex]
        ok = ecc <= power
        checks.append({"check": "piece_dominates_territory", "case": case, "component": comp,
                       "vertex": vertex, "power": capped, "territory_ecc": ecc, "ok": ok})
        if not ok:
            fail(case, comp, f"vertex {vertex} with power {power} misses its territory (ecc {ecc})")
        trace.assignments.append({"case": case, "component": comp, "vertex": vertex,
                                  "power": capped, "nominal_power": power,
                                  "territory": bits(territory)})

    for a in trace.a4_prime:
        c = comps[a]
        center, _ = _center(g, c.territory)
        assign("1:A4'", a, center, 1 + c.total, c.territory, c.total + 1)

    for cl in trace.clusters:
        rad, diam = _bounds(g, cl.territory)
        ok = rad <= cl.total + 1 and diam <= 2 * cl.total + 2 and cl.total >= 4
        checks.append({"check": "cluster_bounds", "members": list(cl.members), "total": cl.total,
                       "rad": rad, "diam": diam, "ok": ok})
        if not ok:
            fail("3:cluster", cl.members, f"cluster bounds violated (total {cl.total}, rad {rad}, diam {diam})")
        cl.center, _ = _center(g, cl.territory)
        assign("3:cluster", cl.members, cl.center, 1 + cl.total, cl.territory, cl.total + 1)

    for c in comps:
        if c.index in placed or c.a_class == "A4":
            continue
        _small_case(ctx, c, assign, fail, note)

    g_out = tuple(out)
    trace.g = g_out
    covered = 0
    for c in comps:
        covered |= c.territory
    if covered != g.full_mask:
        fail("coverage", None, f"vertices {bits(g.full_mask & ~covered)} lie in no territory")
    if undominated_mask(g, g_out):
        fail("dominating", None, f"g leaves {bits(undominated_mask(g, g_out))} undominated")
    if not 4 * cost(g_out) <= 5 * cost(f):
        fail("cost", None, f"4*{cost(g_out)} > 5*{cost(f)}")
    trace.diagnostics = diags
    if diags:
        raise ConstructionError(diags, trace)
    return trace


def _small_case(ctx: _Ctx, c: Component, assign, fail, note):
    """Components of A1..A3 outside E, dominated at their own cost."""
    g, f = ctx.g, ctx.f
    xs = c.vertices
    if c.a_class == "A1":
        (x,) = xs
        assign("4a", c.index, x, 1, c.territory, 1)
        return
    if len(xs) == 1:
        (x,) = xs
        anns = ctx.annihilators_of(x)
        if anns:
            u = anns[0]
            du = g.dist[x][u]
            nbr = [y for y in g.adj[x] if g.dist[y][u] == du - 1]
            if not nbr:
                fail("4b", c.index, f"no neighbour of {x} on a geodesic to {u}")
                return
            assign("4b", c.index, nbr[0], f[x], c.territory, f[x])
        else:
            assign("4b", c.index, x, f[x], c.territory, f[x])
        return
    if len(xs) == 2:
        x, y = sorted(xs, key=lambda v: (f[v], v))
        if c.a_class == "A3" and g.dist[x][y] == 3 and ctx.annihilators_of(y):
            bx = ctx.boundary(x)
            cand = [yp for yp in bits(ctx.pbs[y]) if g.nbr_mask[yp] & bx]
            if cand:
                assign("4d", c.index, cand[0], 3, c.territory, 3)
                return
            # No such vertex need exist; the territory still has a centre of
            # eccentricity <= 3, which keeps the cost at f(x) + f(y).
            note("4d", c.index, f"no vertex of PB({y}) is adjacent to B_f({x}); using territory centre")
            center, _ = _center(g, c.territory)
            assign("4d*", c.index, center, 3, c.territory, 3)
            return
        if c.a_class == "A3" and g.dist[x][y] not in (2, 3):
            fail("4c", c.index, f"A3 pair at distance {g.dist[x][y]}")
            return
        center, _ = _center(g, c.territory)
        assign("4c", c.index, center, f[x] + f[y], c.territory, f[x] + f[y])
        return
    if len(xs) == 3 and c.a_class == "A3":
        ecc = _sub_metrics(g, c.territory)
        cover = {x: g.cover(x, f[x]) for x in xs}
        middles = [y for y in xs if all(cover[y] & cover[o] for o in xs if o != y)]
        if not middles:
            fail("4e", c.index, "no middle vertex in the triple")
            return
        y = min(middles, key=lambda v: (ecc[v], v))
        assign("4e", c.index, y, 3, c.territory, 3)
        return
    fail("4", c.index, f"unexpected component shape {xs}")
