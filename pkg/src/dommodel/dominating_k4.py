"""Constructive dominating K4-models with a prescribed small clique in ``T_1``.

Hypotheses on ``(G, L)``: G connected with at least four vertices, L a clique
on at most two vertices, every vertex of degree at most 2 lies in L, and
``|L| = 1`` whenever some vertex of L has degree at least 3.

The construction recurses on cut vertices.  In the 2-connected case it looks
for a cycle C and a component H of G - C containing L such that every vertex
of C has a neighbour in H, and then returns ``(H, C - x - y, {x}, {y})`` for an
edge ``xy`` of C.  Such a pair is reached from any starting cycle by two
improving moves: shortcut a chord of C, or reroute C through another
component of G - C so that H absorbs a vertex of C.
"""

from __future__ import annotations

from typing import Sequence

from .graph import (
    Graph,
    bits,
    component_of,
    components,
    cut_vertices,
    induced_subgraph,
    is_connected,
    shortest_path,
    to_mask,
)
from .models import DominatingModel, verify_dominating_model

MAX_CONSTRUCTOR_N = 32


class ConstructorError(ValueError):
    pass


def hypothesis_violations(g: Graph, clique: Sequence[int]) -> list[str]:
    L = list(clique)
    problems = []
    if g.n > MAX_CONSTRUCTOR_N:
        problems.append(f"graph has {g.n} > {MAX_CONSTRUCTOR_N} vertices")
    if g.n < 4:
        problems.append("fewer than four vertices")
    if not is_connected(g):
        problems.append("graph is not connected")
    if len(L) > 2 or len(set(L)) != len(L) or any(not 0 <= v < g.n for v in L):
        problems.append("L is not a set of at most two vertices of G")
        return problems
    if len(L) == 2 and not g.has_edge(*L):
        problems.append("L is not a clique")
    low = [v for v in range(g.n) if g.degree(v) <= 2 and v not in L]
    if low:
        problems.append(f"vertices {low} have degree <= 2 but are not in L")
    if len(L) == 2 and any(g.degree(v) >= 3 for v in L):
        problems.append("a vertex of L has degree >= 3 but |L| = 2")
    return problems


def satisfies_hypotheses(g: Graph, clique: Sequence[int]) -> bool:
    return not hypothesis_violations(g, clique)


def find_cycle(g: Graph, within: int) -> list[int] | None:
    """Some cycle of ``G[within]`` as a vertex list in cyclic order."""
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in bits(within):
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = -1
        stack = [root]
        while stack:
            v = stack.pop()
            for u in bits(g.adj[v] & within):
                if u == parent[v]:
                    continue
                if u in depth:
                    # non-tree edge closes a cycle through the tree paths
                    a, b = v, u
                    left, right = [a], [b]
                    while a != b:
                        if depth[a] >= depth[b]:
                            a = parent[a]
                            left.append(a)
                        else:
                            b = parent[b]
                            right.append(b)
                    return left + right[-2::-1]
                depth[u] = depth[v] + 1
                parent[u] = v
                stack.append(u)
    return None


def _find_chord(g: Graph, cyc: list[int]) -> tuple[int, int] | None:
    k = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    cmask = to_mask(cyc)
    for i, v in enumerate(cyc):
        for u in bits(g.adj[v] & cmask):
            j = pos[u]
            if j > i + 1 and not (i == 0 and j == k - 1):
                return i, j
    return None


def _arc(cyc: list[int], i: int, j: int) -> list[int]:
    """Vertices of the cycle walking forward from position i to position j."""
    k = len(cyc)
    out = [cyc[i]]
    while i != j:
        i = (i + 1) % k
        out.append(cyc[i])
    return out


def _cycle_and_component(g: Graph, L: list[int]) -> tuple[int, list[int]]:
    full = g.full_mask
    anchor = L[0] if L else 0
    cyc = find_cycle(g, full & ~to_mask(L or [anchor]))
    if cyc is None:
        raise ConstructorError("G - L is a forest, so the hypotheses fail")

    def component_of_anchor(c: list[int]) -> int:
        return component_of(g, anchor, full & ~to_mask(c))

    H = component_of_anchor(cyc)
    while True:
        chord = _find_chord(g, cyc)
        if chord is not None:
            i, j = chord
            inner = _arc(cyc, i, j)
            outer = _arc(cyc, j, i)
            cyc = inner if len(inner) <= len(outer) else outer
            H = component_of_anchor(cyc)
            continue

        cmask = to_mask(cyc)
        attach = [c for c in cyc if g.adj[c] & H]
        lonely = [c for c in cyc if not g.adj[c] & H]
        if not lonely:
            return H, cyc

        v = lonely[0]
        outside = g.adj[v] & ~cmask
        if not outside:
            raise ConstructorError(f"cycle vertex {v} has no neighbour off the cycle")
        J = component_of(g, (outside & -outside).bit_length() - 1, full & ~cmask)
        W = [c for c in cyc if c != v and g.adj[c] & J]
        if not W or len(attach) < 2:
            raise ConstructorError("graph is not 2-connected")
        w = W[0]
        y = next(a for a in attach if a != w)
        pos = {c: i for i, c in enumerate(cyc)}
        forward = _arc(cyc, pos[v], pos[w])
        P = forward if y not in forward else _arc(cyc, pos[w], pos[v])[::-1]
        Q = shortest_path(g, g.adj[v] & J, g.adj[w] & J, J)
        new_cyc = P + Q[::-1]
        new_H = component_of_anchor(new_cyc)
        if not (new_H & H == H and new_H.bit_count() > H.bit_count()):
            raise ConstructorError("rerouting did not enlarge H")  # guarded by 2-connectivity
        cyc, H = new_cyc, new_H


def _construct(g: Graph, L: list[int]) -> list[list[int]]:
    problems = hypothesis_violations(g, L)
    if problems:
        raise ConstructorError("; ".join(problems))

    if g.n == 4:
        first = L[0] if L else 0
        rest = [v for v in range(4) if v != first]
        return [[first]] + [[v] for v in rest]

    cuts = cut_vertices(g)
    if cuts:
        v = cuts[0]
        lmask = to_mask(L)
        side = next(c for c in components(g, g.full_mask & ~(1 << v)) if not to_mask(c) & lmask)
        B = sorted(side + [v])
        A = [x for x in range(g.n) if x not in side]
        sub, index = induced_subgraph(g, B)
        back = {i: x for x, i in index.items()}
        T = _construct(sub, [index[v]])
        T = [[back[i] for i in s] for s in T]
        return [sorted(set(T[0]) | set(A))] + T[1:]

    H, cyc = _cycle_and_component(g, L)
    edges = sorted(tuple(sorted((cyc[i], cyc[(i + 1) % len(cyc)]))) for i in range(len(cyc)))
    x, y = edges[0]
    return [list(bits(H)), [c for c in cyc if c not in (x, y)], [x], [y]]


def dominating_k4_constructor(g: Graph, clique: Sequence[int] = ()) -> DominatingModel:
    """A dominating K4-model ``(T_1, .., T_4)`` of ``g`` with ``clique`` inside ``T_1``."""
    L = list(clique)
    model = DominatingModel(_construct(g, L))
    problems = verify_dominating_model(g, model)
    if problems or not set(L) <= set(model.branch_sets[0]):
        raise ConstructorError(f"constructed model failed verification: {problems[:3]}")
    return model
