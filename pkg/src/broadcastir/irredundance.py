"""Maximality of irredundant broadcasts.

Two independent deciders live here:

* :func:`is_maximal_irredundant` applies the structural characterisation:
  every non-blocked, non-broadcasting vertex must annihilate some
  broadcaster (condition (i)), and every non-blocked broadcaster must start
  an escalation sequence that ends blocked or dominating (condition (ii)).
* :func:`is_maximal_irredundant_oracle` enumerates every broadcast above
  ``f`` and looks for an irredundant one.

Disconnected graphs are split into components first; components that ``f``
already dominates are maximal on their own and need no further work.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .broadcast import (
    bits,
    check_broadcast,
    irredundant_fast,
    pb_masks,
    undominated_mask,
)
from .budget import Budget
from .errors import BudgetExceeded, PreconditionError
from .graph import UNREACHABLE, Graph, induced_subgraph

BLOCKED_TERMINAL = "BlockedTerminal"
DOMINATED_TERMINAL = "DominatedTerminal"

DEFAULT_ORACLE_STATES = 5_000_000


# -- metric primitives -----------------------------------------------------


def _dist_to_mask(g: Graph, v: int, mask: int) -> int:
    row = g.dist[v]
    return min((row[u] for u in bits(mask)), default=UNREACHABLE)


def _d_f(g: Graph, f: Sequence[int], umask: int, v: int) -> int | None:
    """Smallest k with ``U_f`` meeting ``N_{f(v)+k}[v]``; None if no U_f vertex is reachable."""
    d = _dist_to_mask(g, v, umask)
    if d >= UNREACHABLE:
        return None
    return d - f[v]


def _is_blocked(g: Graph, f: Sequence[int], umask: int, v: int) -> bool:
    row = g.dist[v]
    dmin = _dist_to_mask(g, v, umask)
    if dmin >= UNREACHABLE:
        return False
    nearest = [u for u in bits(umask) if row[u] == dmin]
    for w, p in enumerate(f):
        if p and w != v:
            dvw = row[w]
            if dvw >= dmin:
                continue
            rw = g.dist[w]
            if any(dvw + rw[u] == dmin for u in nearest):
                return True
    return False


def _blocked_mask(g, f, umask):
    return sum(1 << v for v in range(g.n) if _is_blocked(g, f, umask, v))


def blocked_set(g: Graph, f: Sequence[int]) -> frozenset:
    """Vertices with a shortest path to ``U_f`` through another broadcaster."""
    f = check_broadcast(g, f)
    umask = undominated_mask(g, f)
    if not umask:
        raise PreconditionError("blocked vertices are undefined when f dominates the graph")
    return frozenset(bits(_blocked_mask(g, f, umask)))


@dataclass(frozen=True)
class MaximalityContext:
    blocked: frozenset
    vstar: frozenset
    dfv: dict
    ufv: dict


def maximality_context(g: Graph, f: Sequence[int]) -> MaximalityContext:
    f = check_broadcast(g, f)
    umask = undominated_mask(g, f)
    if not umask:
        raise PreconditionError("maximality context needs an undominated vertex")
    blocked = _blocked_mask(g, f, umask)
    dfv, ufv = {}, {}
    for v in range(g.n):
        if umask >> v & 1:
            continue
        k = _d_f(g, f, umask, v)
        if k is None:
            continue
        dfv[v] = k
        ufv[v] = frozenset(u for u in bits(umask) if g.dist[v][u] == k + f[v])
    return MaximalityContext(
        blocked=frozenset(bits(blocked)),
        vstar=frozenset(v for v, p in enumerate(f) if p and not blocked >> v & 1),
        dfv=dfv,
        ufv=ufv,
    )


def _escalate(g, f, umask, v):
    k = _d_f(g, f, umask, v)
    if k is None:
        raise PreconditionError(f"vertex {v} has no undominated vertex in its component")
    out = list(f)
    out[v] = f[v] + k
    return tuple(out)


def escalate(g: Graph, f: Sequence[int], v: int) -> tuple:
    """Raise ``f(v)`` by ``d_f(v)`` so that ``v`` just reaches the nearest undominated vertex."""
    f = check_broadcast(g, f)
    umask = undominated_mask(g, f)
    if not umask:
        raise PreconditionError("escalation needs an undominated vertex")
    if umask >> v & 1:
        raise PreconditionError(f"vertex {v} is undominated; escalation needs a dominated vertex")
    return _escalate(g, f, umask, v)


# -- annihilation ------------------------------------------------------------


def _annihilates_u(g, pbs, u, w):
    return pbs[w] & ~g.nbr_mask[u] == 0


def _annihilates_v(g, f, umask, pbs, v, w):
    k = _d_f(g, f, umask, v)
    if k is None:
        return False
    return pbs[w] & ~g.ball(v, f[v] + k) == 0


def annihilates_from_undominated(g: Graph, f: Sequence[int], u: int, w: int) -> bool:
    """``PB_f(w)`` lies inside the open neighbourhood of the undominated vertex ``u``."""
    f = check_broadcast(g, f)
    umask = undominated_mask(g, f)
    if not umask >> u & 1:
        raise PreconditionError(f"vertex {u} is dominated by f")
    if not f[w]:
        raise PreconditionError(f"vertex {w} does not broadcast")
    return _annihilates_u(g, pb_masks(g, f), u, w)


def annihilates_from_dominated(g: Graph, f: Sequence[int], v: int, w: int) -> bool:
    """``PB_f(w)`` lies inside ``N_{f(v)+d_f(v)}[v]``."""
    f = check_broadcast(g, f)
    umask = undominated_mask(g, f)
    if not umask:
        raise PreconditionError("annihilation by a dominated vertex needs U_f nonempty")
    if umask >> v & 1:
        raise PreconditionError(f"vertex {v} is undominated")
    if not f[w]:
        raise PreconditionError(f"vertex {w} does not broadcast")
    return _annihilates_v(g, f, umask, pb_masks(g, f), v, w)


# -- the characterisation ----------------------------------------------------


@dataclass
class EscalationSequence:
    vertices: list
    broadcasts: list
    terminal: str

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "broadcasts": [list(b) for b in self.broadcasts],
            "terminal": self.terminal,
        }


@dataclass
class MaximalityEvidence:
    maximal: bool
    dominating: bool
    condition_i: bool = True
    witnesses_i: dict = field(default_factory=dict)
    failed_w: int | None = None
    condition_ii: bool | None = None  # None: not evaluated because (i) already failed
    sequences: dict = field(default_factory=dict)
    failed_v0: int | None = None

    def to_json(self) -> dict:
        return {
            "maximal": self.maximal,
            "dominating": self.dominating,
            "condition_i": {
                "holds": self.condition_i,
                "witnesses": {str(w): v for w, v in sorted(self.witnesses_i.items())},
                "failed_w": self.failed_w,
            },
            "condition_ii": {
                "holds": self.condition_ii,
                "sequences": {str(v): s.to_json() for v, s in sorted(self.sequences.items())},
                "failed_v0": self.failed_v0,
            },
        }


def _condition_i(g, f, umask, pbs, blocked):
    vplus = [v for v, p in enumerate(f) if p]
    witnesses = {}
    for w in range(g.n):
        if f[w] or blocked >> w & 1:
            continue
        if umask >> w & 1:
            hit = next((v for v in vplus if _annihilates_u(g, pbs, w, v)), None)
        else:
            hit = next((v for v in vplus if _annihilates_v(g, f, umask, pbs, w, v)), None)
        if hit is None:
            return False, witnesses, w
        witnesses[w] = hit
    return True, witnesses, None


def _terminal(g, f, v):
    umask = undominated_mask(g, f)
    if not umask:
        return DOMINATED_TERMINAL
    if _is_blocked(g, f, umask, v):
        return BLOCKED_TERMINAL
    return None


def _condition_ii(g, f, v0, budget):
    """Depth-first search for an escalation sequence starting at ``v0``."""
    vplus = [v for v, p in enumerate(f) if p]
    start = (tuple(f), v0)
    parent = {start: None}
    stack = [start]
    while stack:
        state = stack.pop()
        fi, vi = state
        budget.tick()
        if parent[state] is not None:
            tag = _terminal(g, fi, vi)
            if tag:
                seq_v, seq_f = [], []
                s = state
                while s is not None:
                    seq_f.append(s[0])
                    seq_v.append(s[1])
                    s = parent[s]
                return EscalationSequence(seq_v[::-1], seq_f[::-1], tag)
        umask = undominated_mask(g, fi)
        nxt = _escalate(g, fi, umask, vi)
        pbs = pb_masks(g, nxt)
        children = [(nxt, w) for w in vplus if w != vi and pbs[w] == 0]
        for child in reversed(children):
            if child not in parent:
                parent[child] = state
                stack.append(child)
    return None


def check_condition_i(g: Graph, f: Sequence[int]) -> tuple[bool, dict]:
    """Condition (i). Returns ``(holds, {w: annihilated broadcaster})``.

    On failure the mapping carries the witnesses found so far plus the key
    ``"failed"`` naming the first vertex without one.
    """
    f = _require_irredundant(g, f)
    ev = _decide(g, f, Budget(None), stop_after_i=True)
    out = dict(ev.witnesses_i)
    if not ev.condition_i:
        out["failed"] = ev.failed_w
    return ev.condition_i, out


def check_condition_ii(g: Graph, f: Sequence[int], v0: int, budget: Budget | None = None):
    """Condition (ii) for one unblocked broadcaster ``v0``.

    Returns ``(holds, EscalationSequence or None)``.
    """
    f = _require_irredundant(g, f)
    if not g.is_connected():
        sub, mapping, fsub = _restrict(g, f, g.component_of[v0])
        ok, seq = check_condition_ii(sub, fsub, mapping[v0], budget)
        return ok, _lift_sequence(seq, g, f, mapping)
    umask = undominated_mask(g, f)
    if not umask:
        raise PreconditionError("condition (ii) is vacuous when f dominates the graph")
    if not f[v0] or _is_blocked(g, f, umask, v0):
        raise PreconditionError(f"vertex {v0} is not an unblocked broadcaster")
    seq = _condition_ii(g, f, v0, budget or Budget())
    return seq is not None, seq


def _require_irredundant(g, f):
    f = check_broadcast(g, f)
    if not irredundant_fast(g, f):
        raise PreconditionError("f is not irredundant")
    return f


def _restrict(g, f, comp_index):
    sub, mapping = induced_subgraph(g, g.components[comp_index])
    fsub = [0] * sub.n
    for old, new in mapping.items():
        fsub[new] = f[old]
    return sub, mapping, tuple(fsub)


def _lift_sequence(seq, g, f, mapping):
    if seq is None:
        return None
    back = {new: old for old, new in mapping.items()}
    lifted = []
    for b in seq.broadcasts:
        full = list(f)
        for new, p in enumerate(b):
            full[back[new]] = p
        lifted.append(tuple(full))
    return EscalationSequence([back[v] for v in seq.vertices], lifted, seq.terminal)


def _decide(g, f, budget, stop_after_i=False):
    """Full decision with evidence; ``f`` is validated and irredundant."""
    if not g.is_connected():
        total = MaximalityEvidence(maximal=True, dominating=True, condition_ii=True)
        for ci in range(len(g.components)):
            sub, mapping, fsub = _restrict(g, f, ci)
            ev = _decide(sub, fsub, budget, stop_after_i)
            back = {new: old for old, new in mapping.items()}
            total.dominating &= ev.dominating
            total.witnesses_i.update({back[w]: back[v] for w, v in ev.witnesses_i.items()})
            total.sequences.update(
                {back[v]: _lift_sequence(s, g, f, mapping) for v, s in ev.sequences.items()}
            )
            if not ev.condition_i and total.condition_i:
                total.condition_i, total.failed_w = False, back[ev.failed_w]
            if ev.condition_ii is False and total.condition_ii is not False:
                total.condition_ii, total.failed_v0 = False, back[ev.failed_v0]
            elif ev.condition_ii is None and total.condition_ii:
                total.condition_ii = None
            total.maximal &= ev.maximal
        return total

    umask = undominated_mask(g, f)
    if not umask:
        return MaximalityEvidence(maximal=True, dominating=True, condition_ii=True)
    pbs = pb_masks(g, f)
    blocked = _blocked_mask(g, f, umask)
    ok_i, witnesses, failed = _condition_i(g, f, umask, pbs, blocked)
    ev = MaximalityEvidence(
        maximal=ok_i, dominating=False, condition_i=ok_i, witnesses_i=witnesses, failed_w=failed
    )
    if not ok_i or stop_after_i:
        return ev
    for v0, p in enumerate(f):
        if not p or blocked >> v0 & 1:
            continue
        seq = _condition_ii(g, f, v0, budget)
        if seq is None:
            ev.maximal = ev.condition_ii = False
            ev.failed_v0 = v0
            return ev
        ev.sequences[v0] = seq
    ev.condition_ii = True
    return ev


def is_maximal_irredundant(
    g: Graph, f: Sequence[int], budget: Budget | None = None, with_evidence: bool = False
):
    """Decide maximality through conditions (i) and (ii).

    Returns a bool, or ``(bool, MaximalityEvidence)`` with ``with_evidence``.
    """
    f = _require_irredundant(g, f)
    ev = _decide(g, f, budget or Budget())
    return (ev.maximal, ev) if with_evidence else ev.maximal


def maximal_fast(g: Graph, f: tuple, budget: Budget) -> bool:
    """Unvalidated maximality test used inside the solvers."""
    umask = undominated_mask(g, f)
    if not umask:
        return True
    if g.is_connected():
        # cheap necessary condition: each undominated vertex sits just outside some ball
        for u in bits(umask):
            row = g.dist[u]
            if not any(p and row[v] == p + 1 for v, p in enumerate(f)):
                return False
    return _decide(g, f, budget).maximal


# -- brute force ---------------------------------------------------------------


def find_irredundant_extension(
    g: Graph, f: Sequence[int], max_states: int = DEFAULT_ORACLE_STATES, max_power: int | None = None
):
    """Some irredundant ``h > f`` (first in lexicographic order), or None.

    ``max_power`` restricts the search to broadcasts with powers at most that
    value. Raises :class:`BudgetExceeded` instead of guessing when the
    enumeration would exceed ``max_states`` broadcasts.
    """
    f = check_broadcast(g, f)
    caps = [g.ecc[v] if max_power is None else min(g.ecc[v], max(max_power, p)) for v, p in enumerate(f)]
    size = prod(c - p + 1 for c, p in zip(caps, f))
    if size > max_states:
        raise BudgetExceeded(f"oracle would enumerate {size} broadcasts (limit {max_states})")
    ranges = [range(p, c + 1) for p, c in zip(f, caps)]
    for h in itertools.product(*ranges):
        if h != f and irredundant_fast(g, h):
            return h
    return None


def is_maximal_irredundant_oracle(
    g: Graph, f: Sequence[int], max_states: int = DEFAULT_ORACLE_STATES, max_power: int | None = None
) -> bool:
    """Ground truth: no irredundant broadcast lies strictly above ``f``."""
    f = _require_irredundant(g, f)
    return find_irredundant_extension(g, f, max_states, max_power) is None


def check_undominated_distance(g: Graph, f: Sequence[int]) -> bool:
    """Each undominated vertex is at distance ``f(v)+1`` from some broadcaster ``v``."""
    f = check_broadcast(g, f)
    for u in bits(undominated_mask(g, f)):
        row = g.dist[u]
        if not any(p and row[v] == p + 1 for v, p in enumerate(f)):
            return False
    return True
