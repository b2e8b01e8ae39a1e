import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from broadcastir import (
    Budget,
    BudgetExceeded,
    FamilySpec,
    PreconditionError,
    build_graph,
    check_condition_i,
    check_condition_ii,
    escalate,
    find_irredundant_extension,
    generate,
    is_irredundant,
    is_maximal_irredundant,
    is_maximal_irredundant_oracle,
)
from broadcastir.broadcast import lt, pb_masks, undominated_mask
from broadcastir.irredundance import (
    BLOCKED_TERMINAL,
    DOMINATED_TERMINAL,
    annihilates_from_dominated,
    annihilates_from_undominated,
    blocked_set,
    check_undominated_distance,
    maximality_context,
)
from oracles import Ref
from strategies import graph_and_broadcast, graphs


def fam(text):
    return generate(FamilySpec.parse(text))


P3, P5, P6 = fam("path:3"), fam("path:5"), fam("path:6")
K4 = fam("complete:4")
F6 = (1, 0, 0, 1, 0, 0)


@pytest.mark.parametrize("f", [(0, 1, 0, 1, 0), (1, 0, 0, 1, 0)])
def test_blocked_set_needs_undominated_vertex(f):
    with pytest.raises(PreconditionError):
        blocked_set(P5, f)


def test_blocked_set_on_p6():
    beta = blocked_set(P6, F6)
    assert 0 in beta and 3 not in beta
    # non-broadcasting vertices behind vertex 3 are blocked too
    assert beta == {0, 1, 2}
    ctx = maximality_context(P6, F6)
    assert ctx.vstar == {3}
    assert ctx.dfv[0] == 4 and ctx.dfv[3] == 1


def test_escalation_examples():
    assert escalate(P6, F6, 3) == (1, 0, 0, 2, 0, 0)
    assert undominated_mask(P6, escalate(P6, F6, 3)) == 0
    assert escalate(P3, (1, 0, 0), 0) == (2, 0, 0)
    assert escalate(P6, F6, 0) == (5, 0, 0, 1, 0, 0)
    with pytest.raises(PreconditionError):
        escalate(P6, F6, 5)


def test_annihilation_from_undominated():
    assert not annihilates_from_undominated(P3, (1, 0, 0), 2, 0)
    star = build_graph([(0, 1), (0, 2), (0, 3)], 4)
    assert not annihilates_from_undominated(star, (0, 1, 0, 0), 2, 1)
    p4 = fam("path:4")
    assert not annihilates_from_undominated(p4, (0, 1, 0, 0), 3, 1)
    with pytest.raises(PreconditionError):
        annihilates_from_undominated(p4, (0, 0, 1, 0), 3, 2)


def test_annihilation_from_dominated():
    assert annihilates_from_dominated(P6, F6, 0, 3)
    assert annihilates_from_dominated(P6, F6, 2, 0)
    # a broadcaster always annihilates itself
    assert annihilates_from_dominated(P6, F6, 3, 3)
    with pytest.raises(PreconditionError):
        annihilates_from_dominated(P6, F6, 5, 0)


def test_condition_i_examples():
    assert check_condition_i(K4, (1, 0, 0, 0)) == (True, {})
    ok, wit = check_condition_i(P3, (1, 0, 0))
    assert not ok and wit["failed"] == 2
    c4 = fam("cycle:4")
    ok, wit = check_condition_i(c4, (1, 0, 0, 0))
    assert not ok
    # the undominated vertex 2 cannot swallow PB(0) = {0, 1, 3} either
    assert not annihilates_from_undominated(c4, (1, 0, 0, 0), 2, 0)
    assert is_irredundant(c4, (2, 0, 0, 0))


def test_condition_ii_examples():
    ok, seq = check_condition_ii(P3, (1, 0, 0), 0)
    assert not ok and seq is None
    ok, _ = check_condition_ii(P6, F6, 3)
    assert not ok
    with pytest.raises(PreconditionError):
        check_condition_ii(K4, (1, 0, 0, 0), 0)


def test_maximality_examples():
    assert is_maximal_irredundant(K4, (1, 0, 0, 0))
    assert not is_maximal_irredundant(P3, (1, 0, 0))
    assert is_maximal_irredundant(fam("spider:3"), (2, 0, 0, 0, 0, 0, 0))
    assert is_maximal_irredundant(fam("path:2"), (1, 0))
    assert is_maximal_irredundant_oracle(fam("path:2"), (1, 0))
    ext = find_irredundant_extension(P3, (1, 0, 0))
    assert ext is not None and lt((1, 0, 0), ext) and is_irredundant(P3, ext)
    assert is_irredundant(P3, (2, 0, 0))


def test_redundant_input_rejected():
    with pytest.raises(PreconditionError):
        is_maximal_irredundant(P3, (1, 1, 0))


def test_undominated_distance_is_not_sufficient():
    assert check_undominated_distance(P3, (1, 0, 0))
    assert not is_maximal_irredundant(P3, (1, 0, 0))


def test_evidence_for_failures_and_successes():
    ok, ev = is_maximal_irredundant(P3, (1, 0, 0), with_evidence=True)
    assert not ok and not ev.condition_i and ev.failed_w == 2
    j = ev.to_json()
    assert j["maximal"] is False and j["condition_i"]["failed_w"] == 2
    # (ii) is not evaluated once (i) fails
    assert ev.condition_ii is None and j["condition_ii"]["holds"] is None
    ok, ev = is_maximal_irredundant(P6, (0, 1, 0, 0, 0, 0), with_evidence=True)
    assert not ok and (ev.condition_i is False or ev.condition_ii is False)
    ok, ev = is_maximal_irredundant(K4, (1, 0, 0, 0), with_evidence=True)
    assert ok and ev.dominating


def test_oracle_respects_its_budget():
    with pytest.raises(BudgetExceeded):
        find_irredundant_extension(fam("path:9"), (1,) + (0,) * 8, max_states=10)


def test_budget_counts_states():
    b = Budget(max_states=3)
    b.tick(3)
    with pytest.raises(BudgetExceeded):
        b.tick()


def test_disconnected_graph_is_decided_per_component():
    # two disjoint P3s: maximal iff maximal on each side
    g = build_graph([(0, 1), (1, 2), (3, 4), (4, 5)], 6)
    assert is_maximal_irredundant(g, (2, 0, 0, 0, 1, 0))
    assert not is_maximal_irredundant(g, (1, 0, 0, 0, 1, 0))
    ok, ev = is_maximal_irredundant(g, (0, 1, 0, 1, 0, 0), with_evidence=True)
    assert not ok and ev.condition_i is False and ev.failed_w in (4, 5)


@st.composite
def sparse_broadcast(draw, g):
    # about one vertex in three broadcasts, which keeps most draws irredundant
    return tuple(
        draw(st.integers(1, g.ecc[v])) if draw(st.integers(0, 2)) == 0 else 0 for v in range(g.n)
    )


@st.composite
def irredundant_case(draw, max_n=6, connected=True):
    if connected:
        g = draw(graphs(min_n=2, max_n=max_n, connected=True))
    else:
        a = draw(graphs(min_n=2, max_n=max_n - 2, connected=True))
        b = draw(graphs(min_n=2, max_n=max_n - a.n, connected=True))
        g = build_graph(list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges], a.n + b.n)
    f = draw(sparse_broadcast(g))
    assume(is_irredundant(g, f))
    return g, f


@settings(max_examples=300, deadline=None)
@given(irredundant_case())
def test_maximality_matches_set_oracle(gf):
    g, f = gf
    assert is_maximal_irredundant(g, f) == Ref.of(g).maximal_irredundant(f)


@settings(max_examples=120, deadline=None)
@given(irredundant_case(max_n=7, connected=False))
def test_maximality_matches_oracle_on_disconnected_graphs(gf):
    g, f = gf
    assert is_maximal_irredundant(g, f) == is_maximal_irredundant_oracle(g, f)


@settings(max_examples=200, deadline=None)
@given(irredundant_case())
def test_evidence_is_consistent(gf):
    g, f = gf
    ok, ev = is_maximal_irredundant(g, f, with_evidence=True)
    if ev.dominating:
        assert ok
        return
    if not ok:
        ext = find_irredundant_extension(g, f)
        assert ext is not None and lt(f, ext) and is_irredundant(g, ext)
        return
    # every recorded sequence starts at f and ends in a terminal state
    assert check_undominated_distance(g, f)
    for v0, seq in ev.sequences.items():
        assert seq.broadcasts[0] == f and seq.vertices[0] == v0 and len(seq.vertices) >= 2
        for i in range(len(seq.vertices) - 1):
            nxt = seq.broadcasts[i + 1]
            assert nxt == escalate(g, seq.broadcasts[i], seq.vertices[i])
            assert pb_masks(g, nxt)[seq.vertices[i + 1]] == 0
        last = seq.broadcasts[-1]
        if seq.terminal == DOMINATED_TERMINAL:
            assert undominated_mask(g, last) == 0
        else:
            assert seq.terminal == BLOCKED_TERMINAL
            assert seq.vertices[-1] in blocked_set(g, last)


@settings(max_examples=100, deadline=None)
@given(graph_and_broadcast(max_n=6))
def test_escalation_reaches_an_undominated_vertex(gf):
    g, f = gf
    um = undominated_mask(g, f)
    assume(um)
    for v in range(g.n):
        if um >> v & 1:
            continue
        h = escalate(g, f, v)
        assert h[v] >= f[v] and h[v] <= g.ecc[v]
        if h[v] > f[v]:
            reached = g.ball(v, h[v]) & um
            assert reached and not (g.ball(v, h[v] - 1) & um)
