"""Exact broadcast and set parameters with verified witnesses.

All searches are exponential and meant for small graphs. Every parameter of
a disconnected graph is the sum over its components; each component is
solved on its own induced subgraph and the witnesses are stitched together.

``max_power`` restricts broadcasts to powers ``<= max_power``; with
``max_power=1`` the broadcast parameters collapse to the classical set
parameters, which is how the set oracle in :func:`set_params` is
cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import irredundance as irr
from .broadcast import (
    bits,
    check_broadcast,
    cost,
    irredundant_fast,
    pb_masks,
    require_nontrivial,
    undominated_mask,
)
from .budget import Budget
from .errors import InvariantViolation
from .graph import Graph, diameter, induced_subgraph, radius

PARAMETERS = ("gamma_b", "Gamma_b", "ir_b", "IR_b", "mp", "gamma", "Gamma", "ir", "IR")


@dataclass
class ParameterResult:
    name: str
    value: int
    witness: object  # broadcast tuple, or frozenset of vertices
    lower_cert: frozenset | None = None

    def to_json(self) -> dict:
        if isinstance(self.witness, frozenset):
            wit = sorted(self.witness)
        else:
            wit = {str(v): p for v, p in enumerate(self.witness) if p > 0}
        out = {"parameter": self.name, "value": self.value, "witness": wit}
        out["certificate"] = None if self.lower_cert is None else sorted(self.lower_cert)
        return out


# -- component plumbing -----------------------------------------------------


def _caps(h: Graph, max_power):
    if max_power is None:
        return list(h.ecc)
    return [min(e, max_power) for e in h.ecc]


def _per_component(g: Graph, solve: Callable, combine_sets=False):
    """Run ``solve(h) -> (value, witness)`` per component and sum."""
    if g.is_connected():
        return solve(g)
    total = 0
    if combine_sets:
        wit = set()
    else:
        wit = [0] * g.n
    for comp in g.components:
        h, mapping = induced_subgraph(g, comp)
        value, w = solve(h)
        total += value
        back = {new: old for old, new in mapping.items()}
        if combine_sets:
            wit.update(back[v] for v in w)
        else:
            for new, p in enumerate(w):
                wit[back[new]] = p
    return total, frozenset(wit) if combine_sets else tuple(wit)


# -- minimum dominating broadcasts -----------------------------------------


def _dominating_within(h: Graph, caps, k: int, budget: Budget) -> Iterator[tuple]:
    """Every dominating broadcast of cost <= k (possibly with repeats).

    Branches on the lowest undominated vertex: some broadcaster must reach
    it, so try every unused vertex with every power that reaches it.
    """
    n = h.n
    f = [0] * n

    def rec(covered, left):
        budget.tick()
        unc = h.full_mask & ~covered
        if not unc:
            yield tuple(f)
            return
        if left == 0:
            return
        u = (unc & -unc).bit_length() - 1
        row = h.dist[u]
        for v in range(n):
            if f[v]:
                continue
            top = min(caps[v], left)
            for p in range(max(row[v], 1), top + 1):
                f[v] = p
                yield from rec(covered | h.ball(v, p), left - p)
            f[v] = 0

    yield from rec(0, k)


def _gamma_b_connected(h: Graph, caps, budget, lower: int = 1):
    hi = radius(h) if all(c == e for c, e in zip(caps, h.ecc)) else h.n
    for k in range(max(lower, 1), hi + 1):
        found = next(_dominating_within(h, caps, k, budget), None)
        if found is not None:
            return cost(found), found
    raise InvariantViolation(f"no dominating broadcast of cost <= {hi} found")


def gamma_b(g: Graph, max_power: int | None = None, budget: Budget | None = None) -> ParameterResult:
    """Broadcast domination number with a multipacking lower certificate."""
    require_nontrivial(g)
    budget = budget or Budget()
    m = mp(g, budget)

    def solve(h):
        caps = _caps(h, max_power)
        lo = _mp_connected(h, budget)[0] if max_power is None else 1
        return _gamma_b_connected(h, caps, budget, lo)

    value, wit = _per_component(g, solve)
    if undominated_mask(g, wit) or cost(wit) != value:
        raise InvariantViolation("gamma_b witness failed re-verification")
    if value < m.value:
        raise InvariantViolation(f"duality violated: gamma_b={value} < mp={m.value}")
    return ParameterResult("gamma_b", value, wit, m.witness if max_power is None else None)


def gamma_b_broadcasts(g: Graph, budget: Budget | None = None) -> Iterator[tuple]:
    """All minimum-cost dominating broadcasts of a connected graph, deduplicated."""
    require_nontrivial(g)
    budget = budget or Budget()
    k = gamma_b(g, budget=budget).value
    seen = set()
    for f in _dominating_within(g, list(g.ecc), k, budget):
        if cost(f) == k and f not in seen:
            seen.add(f)
            yield f


def gamma_b_broadcast_with_epb(g: Graph, budget: Budget | None = None) -> tuple:
    """A minimum dominating broadcast where every broadcaster has an external private boundary."""
    require_nontrivial(g)
    budget = budget or Budget()

    def solve(h):
        for f in gamma_b_broadcasts(h, budget):
            if all(pb & ~(1 << v) for v, pb in pb_masks(h, f).items()):
                return cost(f), f
        raise InvariantViolation(
            f"no gamma_b-broadcast with nonempty external private boundaries on {h.edges}"
        )

    return _per_component(g, solve)[1]


# -- irredundant broadcasts ---------------------------------------------------


def _irredundant_max(h: Graph, caps, budget, dominating: bool):
    """Branch and bound for the costliest irredundant (optionally dominating) broadcast."""
    n = h.n
    rem = [0] * (n + 1)
    reach = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        rem[i] = rem[i + 1] + caps[i]
        reach[i] = reach[i + 1] | h.cover(i, caps[i])
    best = [-1, None]
    f = [0] * n

    def rec(i, covered, pbs, total):
        budget.tick()
        if total + rem[i] <= best[0]:
            return
        if dominating and h.full_mask & ~(covered | reach[i]):
            return
        if i == n:
            best[0], best[1] = total, tuple(f)
            return
        for p in range(caps[i], 0, -1):
            c = h.cover(i, p)
            own = c & ~(h.cover(i, p - 1) | covered)
            if not own:
                continue
            new = [(v, m & ~c) for v, m in pbs]
            if not all(m for _, m in new):
                continue
            f[i] = p
            new.append((i, own))
            rec(i + 1, covered | c, new, total + p)
            f[i] = 0
        rec(i + 1, covered, pbs, total)

    rec(0, 0, [], 0)
    return best[0], best[1]


def IR_b(g: Graph, max_power: int | None = None, budget: Budget | None = None) -> ParameterResult:
    """Upper broadcast irredundance number (irredundant, maximality not required)."""
    require_nontrivial(g)
    budget = budget or Budget()
    value, wit = _per_component(
        g, lambda h: _irredundant_max(h, _caps(h, max_power), budget, dominating=False)
    )
    if not irredundant_fast(g, wit) or cost(wit) != value:
        raise InvariantViolation("IR_b witness failed re-verification")
    return ParameterResult("IR_b", value, wit)


def Gamma_b(g: Graph, max_power: int | None = None, budget: Budget | None = None) -> ParameterResult:
    """Upper broadcast number: costliest minimal dominating broadcast."""
    require_nontrivial(g)
    budget = budget or Budget()
    value, wit = _per_component(
        g, lambda h: _irredundant_max(h, _caps(h, max_power), budget, dominating=True)
    )
    if undominated_mask(g, wit) or not irredundant_fast(g, wit) or cost(wit) != value:
        raise InvariantViolation("Gamma_b witness failed re-verification")
    return ParameterResult("Gamma_b", value, wit)


def irredundant_of_cost(h: Graph, k: int, caps=None, budget: Budget | None = None) -> Iterator[tuple]:
    """Every irredundant broadcast of total cost exactly ``k``, lexicographically descending."""
    n = h.n
    caps = list(h.ecc) if caps is None else caps
    budget = budget or Budget()
    rem = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        rem[i] = rem[i + 1] + caps[i]
    f = [0] * n

    def rec(i, covered, pbs, left):
        budget.tick()
        if left > rem[i]:
            return
        if i == n:
            yield tuple(f)
            return
        for p in range(min(caps[i], left), 0, -1):
            c = h.cover(i, p)
            own = c & ~(h.cover(i, p - 1) | covered)
            if not own:
                continue
            new = [(v, m & ~c) for v, m in pbs]
            if not all(m for _, m in new):
                continue
            f[i] = p
            new.append((i, own))
            yield from rec(i + 1, covered | c, new, left - p)
            f[i] = 0
        yield from rec(i + 1, covered, pbs, left)

    yield from rec(0, 0, [], k)


def _is_maximal(h, f, max_power, budget):
    if max_power is None:
        return irr.maximal_fast(h, f, budget)
    return irr.find_irredundant_extension(h, f, max_power=max_power) is None


def maximal_irredundant_of_cost(
    h: Graph, k: int, max_power: int | None = None, budget: Budget | None = None
) -> Iterator[tuple]:
    budget = budget or Budget()
    for f in irredundant_of_cost(h, k, _caps(h, max_power), budget):
        if _is_maximal(h, f, max_power, budget):
            yield f


def _ir_b_connected(h, max_power, budget):
    for k in range(1, sum(_caps(h, max_power)) + 1):
        f = next(maximal_irredundant_of_cost(h, k, max_power, budget), None)
        if f is not None:
            return k, f
    raise InvariantViolation("no maximal irredundant broadcast found")


def ir_b(g: Graph, max_power: int | None = None, budget: Budget | None = None) -> ParameterResult:
    """Lower broadcast irredundance number: cheapest maximal irredundant broadcast."""
    require_nontrivial(g)
    budget = budget or Budget()
    value, wit = _per_component(g, lambda h: _ir_b_connected(h, max_power, budget))
    if not irredundant_fast(g, wit) or cost(wit) != value:
        raise InvariantViolation("ir_b witness failed re-verification")
    if max_power is None and not irr.is_maximal_irredundant(g, wit, budget):
        raise InvariantViolation("ir_b witness is not maximal irredundant")
    return ParameterResult("ir_b", value, wit)


def ir_b_broadcasts(g: Graph, budget: Budget | None = None) -> list[tuple]:
    """All minimum-cost maximal irredundant broadcasts of a connected graph."""
    require_nontrivial(g)
    budget = budget or Budget()
    k = ir_b(g, budget=budget).value
    return list(maximal_irredundant_of_cost(g, k, None, budget))


# -- multipackings ------------------------------------------------------------


def _mp_constraints(h: Graph):
    """Per-vertex lists of (ball mask, allowance) that can actually bind."""
    per_vertex = [[] for _ in range(h.n)]
    for v in range(h.n):
        for s in range(1, h.ecc[v] + 1):
            ball = h.ball(v, s)
            if ball.bit_count() > s:
                for x in bits(ball):
                    per_vertex[x].append((ball, s))
    return per_vertex


def _mp_connected(h: Graph, budget: Budget):
    cons = _mp_constraints(h)
    n = h.n
    best = [0, 0]

    def rec(i, chosen, size):
        budget.tick()
        if size + (n - i) <= best[0]:
            return
        if i == n:
            best[0], best[1] = size, chosen
            return
        with_i = chosen | (1 << i)
        if all((with_i & ball).bit_count() <= s for ball, s in cons[i]):
            rec(i + 1, with_i, size + 1)
        rec(i + 1, chosen, size)

    rec(0, 0, 0)
    return best[0], frozenset(bits(best[1]))


def verify_multipacking(g: Graph, m) -> bool:
    """Every ``N_s[v]`` with ``1 <= s <= ecc(v)`` holds at most ``s`` vertices of ``m``."""
    mask = 0
    for v in m:
        if not 0 <= v < g.n:
            return False
        mask |= 1 << v
    for v in range(g.n):
        for s in range(1, g.ecc[v] + 1):
            if (g.ball(v, s) & mask).bit_count() > s:
                return False
    return True


def mp(g: Graph, budget: Budget | None = None) -> ParameterResult:
    budget = budget or Budget()
    value, wit = _per_component(g, lambda h: _mp_connected(h, budget), combine_sets=True)
    if not verify_multipacking(g, wit) or len(wit) != value:
        raise InvariantViolation("multipacking witness failed re-verification")
    return ParameterResult("mp", value, wit)


# -- classical set parameters (independent subset oracle) -------------------


def set_params(g: Graph) -> dict[str, ParameterResult]:
    """gamma, Gamma, ir, IR by plain subset enumeration over closed neighbourhoods."""
    n = g.n
    closed = [g.nbr_mask[v] | (1 << v) for v in range(n)]
    irred = [False] * (1 << n)
    dom = [False] * (1 << n)
    for s in range(1 << n):
        members = bits(s)
        union = 0
        for v in members:
            union |= closed[v]
        dom[s] = union == g.full_mask
        ok = True
        for v in members:
            others = 0
            for u in members:
                if u != v:
                    others |= closed[u]
            if not closed[v] & ~others:
                ok = False
                break
        irred[s] = ok

    best = {"gamma": None, "Gamma": None, "ir": None, "IR": None}

    def take(name, s, better):
        cur = best[name]
        if cur is None or better(s.bit_count(), cur.bit_count()):
            best[name] = s

    for s in range(1 << n):
        if dom[s]:
            take("gamma", s, lambda a, b: a < b)
            if irred[s]:
                take("Gamma", s, lambda a, b: a > b)
        if irred[s]:
            take("IR", s, lambda a, b: a > b)
            if all(not irred[s | (1 << x)] for x in range(n) if not s >> x & 1):
                take("ir", s, lambda a, b: a < b)
    return {
        name: ParameterResult(name, s.bit_count(), frozenset(bits(s))) for name, s in best.items()
    }


# -- aggregate reports --------------------------------------------------------


def compute(g: Graph, names: Sequence[str], budget: Budget | None = None) -> list[ParameterResult]:
    budget = budget or Budget()
    out = []
    sets = None
    for name in names:
        if name == "gamma_b":
            out.append(gamma_b(g, budget=budget))
        elif name == "Gamma_b":
            out.append(Gamma_b(g, budget=budget))
        elif name == "ir_b":
            out.append(ir_b(g, budget=budget))
        elif name == "IR_b":
            out.append(IR_b(g, budget=budget))
        elif name == "mp":
            out.append(mp(g, budget))
        elif name in ("gamma", "Gamma", "ir", "IR"):
            sets = sets or set_params(g)
            out.append(sets[name])
        else:
            raise ValueError(f"unknown parameter {name!r}; choose from {PARAMETERS}")
    return out


@dataclass
class ChainReport:
    graph: str
    values: dict
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.values["gamma_b"], self.values["ir_b"])

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "values": dict(self.values),
            "ratio_gamma_b_over_ir_b": str(self.ratio),
            "ok": self.ok,
            "violations": list(self.violations),
        }


def chain_check(g: Graph, budget: Budget | None = None) -> ChainReport:
    """All parameters plus every inequality relating them."""
    require_nontrivial(g)
    budget = budget or Budget()
    res = {r.name: r for r in compute(g, PARAMETERS, budget)}
    v = {k: r.value for k, r in res.items()}
    rep = ChainReport(g.name or str(g.edges), v)
    chain = ["ir_b", "gamma_b", "gamma", "Gamma", "Gamma_b", "IR_b"]
    for a, b in zip(chain, chain[1:]):
        if v[a] > v[b]:
            rep.violations.append(f"{a}={v[a]} > {b}={v[b]}")
    if 4 * v["gamma_b"] > 5 * v["ir_b"]:
        rep.violations.append(f"4*gamma_b={4 * v['gamma_b']} > 5*ir_b={5 * v['ir_b']}")
    if v["gamma_b"] < v["mp"]:
        rep.violations.append(f"gamma_b={v['gamma_b']} < mp={v['mp']}")
    if g.is_connected():
        v["rad"], v["diam"] = radius(g), diameter(g)
        if v["gamma_b"] > min(v["gamma"], v["rad"]):
            rep.violations.append("gamma_b > min(gamma, rad)")
        if v["Gamma_b"] < max(v["Gamma"], v["diam"]):
            rep.violations.append("Gamma_b < max(Gamma, diam)")
    return rep


@dataclass
class ConjectureReport:
    graph: str
    gamma_b: int
    ir_b: int
    n_ir_b_broadcasts: int
    con54_lhs: bool
    con54_rhs: bool
    con_eq_premise: bool
    con_eq_conclusion: bool

    @property
    def con54_counterexample(self) -> bool:
        return self.con54_lhs != self.con54_rhs

    @property
    def con_eq_counterexample(self) -> bool:
        return self.con_eq_premise and not self.con_eq_conclusion

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "gamma_b": self.gamma_b,
            "ir_b": self.ir_b,
            "ir_b_broadcasts": self.n_ir_b_broadcasts,
            "con54": {
                "ratio_is_5_4": self.con54_lhs,
                "all_ir_b_broadcasts_are_matchings": self.con54_rhs,
                "counterexample": self.con54_counterexample,
            },
            "con_eq": {
                "premise": self.con_eq_premise,
                "ir_b_equals_gamma_b": self.con_eq_conclusion,
                "counterexample": self.con_eq_counterexample,
            },
        }


def _induced_matching_of_ones(g: Graph, f) -> bool:
    vplus = [v for v, p in enumerate(f) if p]
    if not vplus or any(f[v] != 1 for v in vplus):
        return False
    vmask = sum(1 << v for v in vplus)
    return all((g.nbr_mask[v] & vmask).bit_count() == 1 for v in vplus)


def conjecture_check(g: Graph, budget: Budget | None = None) -> ConjectureReport:
    """Evaluate both conjectures on one graph (empirical, proves nothing)."""
    require_nontrivial(g)
    budget = budget or Budget()
    gb = gamma_b(g, budget=budget).value
    fs = ir_b_broadcasts(g, budget)
    ib = cost(fs[0])
    return ConjectureReport(
        graph=g.name or str(g.edges),
        gamma_b=gb,
        ir_b=ib,
        n_ir_b_broadcasts=len(fs),
        con54_lhs=4 * gb == 5 * ib,
        con54_rhs=all(_induced_matching_of_ones(g, f) for f in fs),
        con_eq_premise=any(all(p >= 2 for p in f if p) for f in fs),
        con_eq_conclusion=gb == ib,
    )


def conjecture_scan(graphs, budget_factory=Budget) -> list[ConjectureReport]:
    return [conjecture_check(g, budget_factory()) for g in graphs]
