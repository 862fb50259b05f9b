from __future__ import annotations

import json
import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dommodel.colouring import (
    Colouring,
    ColouringError,
    canonicalize,
    chromatic_number,
    k_colour,
    stitch_colourings,
    verify_colouring,
)
from dommodel.constructions import complete, cycle, join, k55_minus_matching, petersen, random_gnp
from dommodel.graph import Graph, Separation, from_edges, induced_subgraph
from dommodel.sweep import catalog

import oracles

C5_JOIN_K2 = join(cycle(5), complete(2))


def test_k_colour_examples():
    assert k_colour(complete(5), 4) is None
    col = k_colour(petersen(), 3)
    assert col is not None and not verify_colouring(petersen(), col)
    assert k_colour(C5_JOIN_K2, 4) is None


def test_brute_force_agrees_on_named_examples():
    assert oracles.brute_k_colourable(10, petersen().edges(), 3)
    assert not oracles.brute_k_colourable(7, C5_JOIN_K2.edges(), 4)


def test_chromatic_number_examples():
    assert chromatic_number(complete(5)) == 5
    assert chromatic_number(k55_minus_matching()) == 2
    assert chromatic_number(C5_JOIN_K2) == 5
    assert chromatic_number(petersen()) == 3
    assert chromatic_number(Graph(0, ())) == 0
    assert chromatic_number(from_edges(3, [])) == 1


def test_verify_colouring_examples():
    c4 = cycle(4)
    assert verify_colouring(c4, Colouring((1, 2, 1, 2), 2)) == []
    bad = verify_colouring(complete(2), Colouring((1, 1), 1))
    assert bad == [{"kind": "monochromatic_edge", "edge": [0, 1], "colour": 1}]
    over = verify_colouring(complete(2), Colouring((1, 3), 2))
    assert [v["kind"] for v in over] == ["budget"]
    with pytest.raises(ColouringError):
        verify_colouring(c4, Colouring((1, 2, 1), 2))


def test_colouring_json_round_trip():
    col = Colouring((1, 2, 1), 3)
    data = json.loads(col.to_json())
    assert data == {"budget": 3, "colours": [1, 2, 1]}
    assert Colouring.from_json(col.to_json()) == col


def test_canonicalize_first_occurrence():
    assert canonicalize([3, 1, 3, 2], 3).colours == (1, 2, 1, 3)


def test_k_colour_matches_brute_force_small_catalog():
    for g in catalog(6):
        for k in range(1, 5):
            col = k_colour(g, k)
            assert (col is not None) == oracles.brute_k_colourable(g.n, g.edges(), k), (g, k)
            if col is not None:
                assert oracles.is_proper(g.edges(), col.colours, k)


def test_k_colour_output_verifies_on_random_graphs():
    rng = random.Random(5)
    for _ in range(500):
        n = rng.randint(1, 11)
        g = random_gnp(n, rng.uniform(0.1, 0.9), rng)
        chi = chromatic_number(g)
        col = k_colour(g, chi)
        assert col is not None and verify_colouring(g, col) == []
        assert oracles.is_proper(g.edges(), col.colours, chi)
        if chi > 1:
            assert k_colour(g, chi - 1) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_chromatic_number_monotone_under_subgraphs(n, rnd):
    g = random_gnp(n, 0.5, rnd)
    kept_edges = [e for e in g.edges() if rnd.random() < 0.7]
    spanning = from_edges(n, kept_edges)
    assert chromatic_number(spanning) <= chromatic_number(g)
    keep = [v for v in range(n) if rnd.random() < 0.7]
    sub, _ = induced_subgraph(g, keep)
    assert chromatic_number(sub) <= chromatic_number(g)


# -- stitching ------------------------------------------------------------------------


def solver_oracle(graph, c):
    return k_colour(graph, c)


def _colour_side(g, side, c):
    sub, _ = induced_subgraph(g, sorted(side))
    return k_colour(sub, c)


def test_stitch_k4_minus_edge():
    g = from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    sep = Separation(frozenset({0, 1, 2}), frozenset({1, 2, 3}))
    chi_a = _colour_side(g, sep.A, 3)
    out = stitch_colourings(g, sep, chi_a, solver_oracle)
    assert verify_colouring(g, out) == []
    assert out.colours[:3] == chi_a.colours


def test_stitch_disjoint_sides():
    g = from_edges(2, [])
    sep = Separation(frozenset({0}), frozenset({1}))
    out = stitch_colourings(g, sep, Colouring((1,), 1), solver_oracle)
    assert out.colours == (1, 1)


def test_stitch_renames_oracle_colours():
    g = from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    sep = Separation(frozenset({0, 1, 2}), frozenset({1, 2, 3}))
    chi_a = Colouring((1, 2, 3), 3)

    def reversed_oracle(graph, c):
        col = k_colour(graph, c)
        return Colouring(tuple(c + 1 - x for x in col.colours), c)

    out = stitch_colourings(g, sep, chi_a, reversed_oracle)
    assert out.colours[:3] == (1, 2, 3)
    assert verify_colouring(g, out) == []


def test_stitch_rejects_improper_oracle():
    g = from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    sep = Separation(frozenset({0, 1, 2}), frozenset({1, 2, 3}))
    chi_a = Colouring((1, 2, 3), 3)
    with pytest.raises(ColouringError):
        stitch_colourings(g, sep, chi_a, lambda graph, c: Colouring((1,) * graph.n, c))
    with pytest.raises(ColouringError):
        stitch_colourings(g, sep, chi_a, lambda graph, c: None)


def test_stitch_rejects_bad_separation():
    g = from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 3)])
    sep = Separation(frozenset({0, 1, 2}), frozenset({1, 2, 3}))
    with pytest.raises(ColouringError):
        stitch_colourings(g, sep, Colouring((1, 2, 3), 3), solver_oracle)


def _planted_separator_graph(rng: random.Random, c: int):
    """Random graph glued from two sides along a separator of size at most c."""
    while True:
        k = rng.randint(0, c)
        a_only = rng.randint(1, 5)
        b_only = rng.randint(1, 5)
        n = a_only + k + b_only
        verts = list(range(n))
        rng.shuffle(verts)
        A = set(verts[: a_only + k])
        B = set(verts[a_only:])
        edges = [(u, v) for side in (A, B) for u, v in combinations(sorted(side), 2) if rng.random() < 0.45]
        g = from_edges(n, edges)
        chi_a = _colour_side(g, A, c)
        if chi_a is not None:
            return g, Separation(frozenset(A), frozenset(B)), chi_a


def _oracle_graph_colourable(g, sep, chi_a, c) -> bool:
    """Build G[B] + clique on A & B with colour classes merged, via networkx, and brute-force it."""
    h = oracles.nx_graph(g).subgraph(sorted(sep.B)).copy()
    inter = sorted(sep.A & sep.B)
    h.add_edges_from(combinations(inter, 2))
    a_sorted = sorted(sep.A)
    classes: dict[int, set[int]] = {}
    for x in inter:
        classes.setdefault(chi_a.colours[a_sorted.index(x)], set()).add(x)
    blocks = list(classes.values()) + [{v} for v in h.nodes if v not in sep.A]
    q = nx.quotient_graph(h, blocks)
    q = nx.convert_node_labels_to_integers(q)
    return oracles.brute_k_colourable(q.number_of_nodes(), q.edges(), c)


def test_stitch_planted_separators():
    rng = random.Random(2024)
    c = 4
    stitched = refused = 0
    while stitched < 200:
        g, sep, chi_a = _planted_separator_graph(rng, c)
        if not _oracle_graph_colourable(g, sep, chi_a, c):
            with pytest.raises(ColouringError):
                stitch_colourings(g, sep, chi_a, solver_oracle)
            refused += 1
            continue
        out = stitch_colourings(g, sep, chi_a, solver_oracle)
        assert verify_colouring(g, out) == []
        assert oracles.is_proper(g.edges(), out.colours, c)
        assert [out.colours[v] for v in sorted(sep.A)] == list(chi_a.colours)
        stitched += 1
    assert refused < stitched
