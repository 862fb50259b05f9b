"""Canonical labelling for small graphs.

Colour refinement down to an equitable partition, then individualization of
the first non-singleton cell, recursively.  Each discrete leaf gives a vertex
order; the canonical form is the largest graph6 string over all leaves.
Automorphisms discovered at equal leaves prune children lying in the same
orbit, which keeps highly symmetric graphs (K_n, Petersen) cheap.
"""

from __future__ import annotations

from .graph import Graph, GraphError, relabel, to_graph6

MAX_CANON_N = 12

Partition = list[list[int]]


def _refine(g: Graph, cells: Partition) -> Partition:
    """Split cells until every vertex in a cell has the same neighbour counts per cell."""
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells: Partition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            keyed: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = g.adj[v]
                keyed.setdefault(tuple((row & m).bit_count() for m in masks), []).append(v)
            if len(keyed) > 1:
                changed = True
                for key in sorted(keyed):
                    new_cells.append(keyed[key])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _individualize(cells: Partition, idx: int, v: int) -> Partition:
    cell = cells[idx]
    rest = [u for u in cell if u != v]
    return cells[:idx] + [[v], rest] + cells[idx + 1:]


def _orbits_of(vertex_set: list[int], generators: list[tuple[int, ...]]) -> dict[int, int]:
    parent = {v: v for v in vertex_set}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in generators:
        for v in vertex_set:
            w = gamma[v]
            if w in parent:
                a, b = find(v), find(w)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return {v: find(v) for v in vertex_set}


def canonical_labelling(g: Graph) -> tuple[int, ...]:
    """Permutation ``perm`` with ``relabel(g, perm)`` canonical."""
    if g.n > MAX_CANON_N:
        raise GraphError(f"canonical labelling is capped at n <= {MAX_CANON_N}")
    if g.n == 0:
        return ()
    by_deg: dict[int, list[int]] = {}
    for v in range(g.n):
        by_deg.setdefault(g.degree(v), []).append(v)
    start = _refine(g, [by_deg[d] for d in sorted(by_deg)])

    best: list = [None, None]  # [certificate, order]
    automorphisms: list[tuple[int, ...]] = []

    def leaf(order: list[int]) -> None:
        perm = [0] * g.n
        for pos, v in enumerate(order):
            perm[v] = pos
        cert = to_graph6(relabel(g, perm))
        if best[0] is None or cert > best[0]:
            best[0], best[1] = cert, order
        elif cert == best[0]:
            # order[i] -> best[i] is an automorphism
            gamma = [0] * g.n
            for a, b in zip(best[1], order):
                gamma[b] = a
            automorphisms.append(tuple(gamma))

    def search(cells: Partition, fixed: tuple[int, ...]) -> None:
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            leaf([c[0] for c in cells])
            return
        explored: list[int] = []
        for v in cells[idx]:
            if explored:
                stab = [gm for gm in automorphisms if all(gm[x] == x for x in fixed)]
                if stab:
                    orb = _orbits_of(cells[idx], stab)
                    if any(orb[v] == orb[u] for u in explored):
                        continue
            explored.append(v)
            search(_refine(g, _individualize(cells, idx, v)), fixed + (v,))

    search(start, ())
    order = best[1]
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return tuple(perm)


def canonical_graph(g: Graph) -> Graph:
    return relabel(g, canonical_labelling(g))


def canonical_form(g: Graph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
