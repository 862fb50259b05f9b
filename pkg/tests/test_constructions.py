from __future__ import annotations

from collections import Counter
from itertools import product

import networkx as nx
import pytest

from dommodel.canon import canonical_form, is_isomorphic
from dommodel.constructions import (
    complete,
    complete_bipartite,
    cycle,
    degree_sequence,
    enumerate_k5_splits,
    gen,
    girth,
    join,
    k55_minus_matching,
    k5_hat,
    named_graph,
    one_subdivision,
    petersen,
    random_regular,
    split_k5,
    wheel,
)
from dommodel.graph import GraphError, from_edges, parse_graph6, to_graph6
from dommodel.models import find_dominating_model

import oracles


def test_k55_minus_matching():
    g = k55_minus_matching()
    assert (g.n, g.m) == (10, 20)
    assert degree_sequence(g) == [4] * 10
    assert nx.is_bipartite(oracles.nx_graph(g))


def test_k5_hat():
    g = k5_hat()
    assert g.n == 6
    assert degree_sequence(g) == [3, 3, 4, 4, 4, 4]


def test_petersen():
    g = petersen()
    assert g.n == 10 and degree_sequence(g) == [3] * 10
    assert girth(g) == 5 == nx.girth(oracles.nx_graph(g))
    assert nx.is_isomorphic(oracles.nx_graph(g), nx.petersen_graph())


def test_girth_matches_networkx():
    for h in oracles.atlas(7, min_n=1):
        g = from_edges(h.number_of_nodes(), h.edges())
        expected = nx.girth(h)
        assert girth(g) == (None if expected == float("inf") else expected)


def test_one_subdivision():
    assert is_isomorphic(one_subdivision(complete(3)), cycle(6))
    s4 = one_subdivision(complete(4))
    assert (s4.n, s4.m) == (10, 12)
    s5 = one_subdivision(complete(5))
    assert s5.n == 15 and nx.is_bipartite(oracles.nx_graph(s5))
    assert find_dominating_model(s5, 4) is None


def test_one_subdivision_k4_brute_force():
    g = one_subdivision(complete(4))
    assert oracles.brute_dominating_model(oracles.nx_graph(g), 4) is None


def test_join_and_wheel():
    g = join(cycle(5), complete(2))
    assert (g.n, g.m) == (7, 5 + 1 + 10)
    w = wheel(5)
    assert w.degree(5) == 5 and all(w.degree(v) == 3 for v in range(5))


def test_split_k5_examples():
    assert split_k5([0] * 5) == complete(5)
    for i, p in product(range(5), (1, 2, 3)):
        spec = [0] * 5
        spec[i] = p
        assert is_isomorphic(split_k5(spec), k5_hat())
    for spec in product((1, 2, 3), repeat=5):
        g = split_k5(spec)
        assert g.n == 10 and degree_sequence(g) == [3] * 10
    assert any(is_isomorphic(split_k5(s), petersen()) for s in product((1, 2, 3), repeat=5))
    with pytest.raises(GraphError):
        split_k5([0, 0, 0, 4, 0])
    with pytest.raises(GraphError):
        split_k5([0, 0])


def test_split_halves_have_degree_three():
    for spec in product(range(4), repeat=5):
        g = split_k5(spec)
        degs = Counter(g.degrees())
        splits = sum(1 for p in spec if p)
        assert g.n == 5 + splits
        assert g.m == 10 + splits
        assert degs[3] >= 2 * splits


def test_enumerate_k5_splits():
    classes = enumerate_k5_splits()
    assert len(classes) == 22
    assert len({canonical_form(g) for g in classes}) == 22
    assert [g.n for g in classes] == sorted(g.n for g in classes)
    assert {g.n for g in classes} == set(range(5, 11))
    assert is_isomorphic(classes[0], complete(5))
    assert [g for g in classes if g.n == 6] and is_isomorphic([g for g in classes if g.n == 6][0], k5_hat())
    assert any(is_isomorphic(g, petersen()) for g in classes if g.n == 10)


def test_enumerate_k5_splits_independent_count():
    # dedup with networkx isomorphism instead of the package's canonical form
    reps: list[nx.Graph] = []
    for spec in product(range(4), repeat=5):
        h = oracles.nx_graph(split_k5(spec))
        if not any(nx.is_isomorphic(h, r) for r in reps if r.number_of_nodes() == h.number_of_nodes() and r.number_of_edges() == h.number_of_edges()):
            reps.append(h)
    assert len(reps) == 22


def test_random_regular():
    for seed in range(30):
        n = 10 + 2 * (seed % 4)
        g = random_regular(n, 3, seed=seed)
        assert g.n == n and degree_sequence(g) == [3] * n
        assert nx.is_connected(oracles.nx_graph(g))
    assert random_regular(12, 3, seed=4) == random_regular(12, 3, seed=4)
    with pytest.raises(GraphError):
        random_regular(7, 3, seed=1)


def test_named_graph_tokens():
    assert named_graph("k5") == complete(5)
    assert is_isomorphic(named_graph("c6"), cycle(6))
    assert named_graph("k3,3") == complete_bipartite(3, 3)
    assert named_graph("petersen") == petersen()
    assert named_graph(to_graph6(k5_hat())) == k5_hat()


def test_gen_dispatch():
    assert gen("complete", n=4) == complete(4)
    assert gen("one-subdivision", of="k5").n == 15
    assert gen("join", **{"of": "c5", "with": "k2"}) == join(cycle(5), complete(2))
    assert gen("split-k5", spec="1,0,0,0,0").n == 6
    assert gen("random-regular", n=10, d=3, seed=2) == random_regular(10, 3, seed=2)
    with pytest.raises(GraphError):
        gen("nonsense")
    with pytest.raises(GraphError):
        gen("cycle")


def test_graph6_of_named_graphs_round_trip():
    for g in (petersen(), k5_hat(), k55_minus_matching(), one_subdivision(complete(6))):
        assert parse_graph6(to_graph6(g)) == g
