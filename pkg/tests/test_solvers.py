import pytest
from hypothesis import assume, given, settings

from broadcastir import (
    Budget,
    BudgetExceeded,
    FamilySpec,
    Gamma_b,
    IR_b,
    TrivialComponentError,
    build_graph,
    chain_check,
    compute,
    conjecture_check,
    gamma_b,
    generate,
    ir_b,
    is_dominating,
    is_irredundant,
    is_maximal_irredundant,
    is_minimal_dominating,
    mp,
    set_params,
)
from broadcastir.broadcast import cost, has_epb_everywhere
from broadcastir.corpus import small_connected_corpus
from broadcastir.solvers import gamma_b_broadcast_with_epb, ir_b_broadcasts, verify_multipacking
from oracles import Ref, broadcast_parameters, multipacking_number, set_parameters
from strategies import graphs

CORPUS = small_connected_corpus(5)


def fam(text):
    return generate(FamilySpec.parse(text))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_spider_values(n):
    g = fam(f"spider:{n}")
    assert gamma_b(g).value == 2 and ir_b(g).value == 2
    s = set_params(g)
    assert s["gamma"].value == n and s["ir"].value == n


@pytest.mark.parametrize("r", [3, 4, 5])
def test_two_cliques_values(r):
    g = fam(f"tworcliques:{r}")
    assert Gamma_b(g).value == 3
    assert IR_b(g).value == r
    s = set_params(g)
    assert s["Gamma"].value == 2 and s["IR"].value == r


def test_grid_values():
    g = fam("grid:3,3")
    assert set_params(g)["IR"].value == 5
    assert Gamma_b(g).value >= 6


@pytest.mark.parametrize("n", [2, 3, 5])
def test_complete_graphs(n):
    g = fam(f"complete:{n}")
    assert [r.value for r in compute(g, ["gamma_b", "Gamma_b", "ir_b", "IR_b", "mp"])] == [1] * 5


def test_small_paths():
    p4 = fam("path:4")
    assert (gamma_b(p4).value, Gamma_b(p4).value, mp(p4).value) == (2, 3, 2)
    p3 = fam("path:3")
    r = IR_b(p3)
    assert r.value == 2 and is_irredundant(p3, r.witness)


def test_cycle6_ir_b_matches_enumeration():
    g = fam("cycle:6")
    assert ir_b(g).value == broadcast_parameters(Ref.of(g))["ir_b"]


def test_spider_multipacking():
    g = fam("spider:3")
    assert verify_multipacking(g, [4, 5])
    assert not verify_multipacking(g, [4, 5, 6])
    assert mp(g).value == 2


def test_gamma_b_carries_multipacking_certificate():
    r = gamma_b(fam("path:7"))
    assert r.value == 3 and len(r.lower_cert) == 3 and verify_multipacking(fam("path:7"), r.lower_cert)
    assert r.to_json()["certificate"] == sorted(r.lower_cert)


def test_epb_witnesses():
    assert gamma_b_broadcast_with_epb(fam("complete:4")) == (1, 0, 0, 0)
    assert gamma_b_broadcast_with_epb(fam("spider:3")) == (2, 0, 0, 0, 0, 0, 0)
    p4 = fam("path:4")
    f = gamma_b_broadcast_with_epb(p4)
    assert cost(f) == 2 and is_dominating(p4, f) and has_epb_everywhere(p4, f)


def test_trivial_components_rejected():
    with pytest.raises(TrivialComponentError):
        gamma_b(build_graph([], 1))
    with pytest.raises(TrivialComponentError):
        chain_check(build_graph([(0, 1)], 3))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        IR_b(fam("grid:3,3"), budget=Budget(max_states=50))


def test_unknown_parameter():
    with pytest.raises(ValueError):
        compute(fam("path:3"), ["nope"])


def test_chain_on_two_cliques():
    rep = chain_check(fam("tworcliques:4"))
    assert rep.ok
    assert rep.values["Gamma_b"] == 3 < rep.values["IR_b"] == 4


def test_conjecture_reports():
    k = conjecture_check(fam("complete:4"))
    assert k.gamma_b == k.ir_b == 1 and not k.con54_counterexample and not k.con_eq_counterexample
    s = conjecture_check(fam("spider:3"))
    assert s.gamma_b == s.ir_b == 2 and not s.con54_lhs
    assert s.to_json()["con54"]["counterexample"] is False


def test_every_ir_b_broadcast_is_cheapest_maximal():
    g = fam("spider:3")
    fs = ir_b_broadcasts(g)
    assert fs and all(cost(f) == 2 and is_maximal_irredundant(g, f) for f in fs)


def _check_witnesses(g, results):
    r = {x.name: x for x in results}
    for name in ("gamma_b", "Gamma_b", "ir_b", "IR_b"):
        assert cost(r[name].witness) == r[name].value
    assert is_dominating(g, r["gamma_b"].witness)
    assert is_minimal_dominating(g, r["Gamma_b"].witness)
    assert is_maximal_irredundant(g, r["ir_b"].witness)
    assert is_irredundant(g, r["IR_b"].witness)
    assert verify_multipacking(g, r["mp"].witness) and len(r["mp"].witness) == r["mp"].value


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: g.name)
def test_solvers_match_enumeration_on_small_corpus(g):
    ref = Ref.of(g)
    results = compute(g, ["gamma_b", "Gamma_b", "ir_b", "IR_b", "mp", "gamma", "Gamma", "ir", "IR"])
    got = {x.name: x.value for x in results}
    want = broadcast_parameters(ref) | set_parameters(ref) | {"mp": multipacking_number(ref)}
    assert got == want
    _check_witnesses(g, results)


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: g.name)
def test_unit_powers_reproduce_set_parameters(g):
    ref = Ref.of(g)
    capped = broadcast_parameters(ref, cap=1)
    sets = set_parameters(ref)
    assert gamma_b(g, max_power=1).value == capped["gamma_b"] == sets["gamma"]
    assert Gamma_b(g, max_power=1).value == capped["Gamma_b"] == sets["Gamma"]
    assert ir_b(g, max_power=1).value == capped["ir_b"] == sets["ir"]
    assert IR_b(g, max_power=1).value == capped["IR_b"] == sets["IR"]


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=6))
def test_solvers_match_enumeration_on_random_graphs(g):
    assume(not g.isolated_vertices())
    ref = Ref.of(g)
    results = compute(g, ["gamma_b", "Gamma_b", "ir_b", "IR_b", "mp"])
    want = broadcast_parameters(ref) | {"mp": multipacking_number(ref)}
    assert {x.name: x.value for x in results} == want
    _check_witnesses(g, results)
