import itertools
from math import factorial

import pytest

from broadcastir.corpus import connected_graphs, random_connected_graphs, random_graphs, small_connected_corpus

# connected graphs up to isomorphism, and labelled connected graphs, on n vertices
UNLABELLED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21}
LABELLED = {1: 1, 2: 1, 3: 4, 4: 38, 5: 728}


def automorphisms(g):
    edges = set(g.edges)
    return sum(
        1 for p in itertools.permutations(range(g.n))
        if {tuple(sorted((p[u], p[v]))) for u, v in edges} == edges
    )


@pytest.mark.parametrize("n", sorted(UNLABELLED))
def test_counts_and_orbit_sizes(n):
    gs = connected_graphs(n)
    assert len(gs) == UNLABELLED[n]
    assert all(g.is_connected() for g in gs)
    # orbit-stabiliser: the classes must account for every labelled connected graph exactly once
    assert sum(factorial(n) // automorphisms(g) for g in gs) == LABELLED[n]


def test_small_corpus_size():
    assert len(small_connected_corpus(5)) == 1 + 2 + 6 + 21


def test_random_graphs_are_reproducible():
    a = random_connected_graphs(6, 10, seed=7)
    b = random_connected_graphs(6, 10, seed=7)
    assert [g.edges for g in a] == [g.edges for g in b]
    assert len(a) == 10 and all(g.is_connected() and g.n == 6 for g in a)
    assert [g.edges for g in a] != [g.edges for g in random_connected_graphs(6, 10, seed=8)]


def test_connected_draws_are_a_filter_of_the_raw_stream():
    stream = random_graphs(6, 3)
    raw = [next(stream) for _ in range(60)]
    kept = [g.edges for g in raw if g.is_connected()][:5]
    assert [g.edges for g in random_connected_graphs(6, 5, seed=3)] == kept


def test_enumeration_limit():
    with pytest.raises(ValueError):
        connected_graphs(7)
