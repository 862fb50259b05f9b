"""Exact k-colouring by DSATUR backtracking, plus the separation colouring stitch."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .graph import (
    Graph,
    Separation,
    bits,
    contract_sets,
    from_edges,
    induced_subgraph,
    separation_violations,
)


class ColouringError(ValueError):
    pass


@dataclass(frozen=True)
class Colouring:
    """Colours are ``1 .. budget``; ``colours[v]`` is the colour of vertex ``v``."""

    colours: tuple[int, ...]
    budget: int

    def to_json(self) -> str:
        return json.dumps({"budget": self.budget, "colours": list(self.colours)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str | dict) -> "Colouring":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(tuple(int(c) for c in data["colours"]), int(data["budget"]))

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colours):
            out.setdefault(c, []).append(v)
        return out


def canonicalize(colours: Sequence[int], budget: int) -> Colouring:
    """Rename colours in first-occurrence order (vertex 0 gets colour 1, ...)."""
    rename: dict[int, int] = {}
    out = []
    for c in colours:
        if c not in rename:
            rename[c] = len(rename) + 1
        out.append(rename[c])
    return Colouring(tuple(out), budget)


def verify_colouring(g: Graph, col: Colouring) -> list[dict]:
    """Empty list iff ``col`` is a proper colouring of ``g`` within its budget."""
    if len(col.colours) != g.n:
        raise ColouringError(f"colouring covers {len(col.colours)} vertices, graph has {g.n}")
    violations: list[dict] = []
    for v, c in enumerate(col.colours):
        if not 1 <= c <= col.budget:
            violations.append({"kind": "budget", "vertex": v, "colour": c})
    for u, v in g.edges():
        if col.colours[u] == col.colours[v]:
            violations.append({"kind": "monochromatic_edge", "edge": [u, v], "colour": col.colours[u]})
    return violations


def _greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for start in range(g.n):
        clique = [start]
        cand = g.adj[start]
        while cand:
            v = max(bits(cand), key=lambda u: ((g.adj[u] & cand).bit_count(), -u))
            clique.append(v)
            cand &= g.adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def k_colour(g: Graph, k: int) -> Colouring | None:
    """A proper k-colouring of ``g`` if one exists, else ``None``."""
    if k < 1:
        raise ColouringError("colour budget must be at least 1")
    n = g.n
    if n == 0:
        return Colouring((), k)
    clique = _greedy_clique(g)
    if len(clique) > k:
        return None

    colour = [0] * n
    # forbidden[v] is a bitmask over colours 1..k used by coloured neighbours
    forbidden = [0] * n
    adj = g.adj

    def assign(v: int, c: int) -> list[int]:
        colour[v] = c
        touched = []
        bit = 1 << c
        for u in bits(adj[v]):
            if not forbidden[u] & bit:
                forbidden[u] |= bit
                touched.append(u)
        return touched

    def unassign(v: int, c: int, touched: list[int]) -> None:
        colour[v] = 0
        bit = ~(1 << c)
        for u in touched:
            forbidden[u] &= bit

    # symmetry breaking: the clique takes colours 1..|clique| in order
    for i, v in enumerate(clique):
        if forbidden[v] >> (i + 1) & 1:
            return None
        assign(v, i + 1)
    used = len(clique)
    full = ((1 << (k + 1)) - 1) & ~1

    def pick() -> int:
        best_v, best_key = -1, None
        for v in range(n):
            if colour[v]:
                continue
            key = (forbidden[v].bit_count(), adj[v].bit_count())
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def solve(remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        v = pick()
        free = full & ~forbidden[v]
        if not free:
            return False
        for c in bits(free):
            if c > used + 1:
                break  # any unused colour is interchangeable with used + 1
            touched = assign(v, c)
            if solve(remaining - 1, max(used, c)):
                return True
            unassign(v, c, touched)
        return False

    if not solve(n - len(clique), used):
        return None
    return canonicalize(colour, k)


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    k = max(1, len(_greedy_clique(g)))
    while k_colour(g, k) is None:
        k += 1
    return k


Oracle = Callable[[Graph, int], "Colouring | None"]


def stitch_colourings(g: Graph, sep: Separation, chi_a: Colouring, oracle: Oracle) -> Colouring:
    """Combine a colouring of G[A] with an oracle colouring of the B side.

    The B side is G[B] plus a clique on A & B, with each colour class of
    ``chi_a`` inside A & B contracted to a single vertex ``s_i``.  The oracle's
    colours are renamed so ``s_i`` gets colour ``i``; the result agrees with
    ``chi_a`` on A.
    """
    c = chi_a.budget
    problems = separation_violations(g, sep, max_order=c)
    if problems:
        raise ColouringError("not a proper (<= c)-separation: " + "; ".join(problems))
    a_sorted = sorted(sep.A)
    ga, a_index = induced_subgraph(g, a_sorted)
    if len(chi_a.colours) != ga.n or verify_colouring(ga, chi_a):
        raise ColouringError("chi_A is not a proper colouring of G[A]")

    gb, b_index = induced_subgraph(g, sorted(sep.B))
    inter = sorted(sep.A & sep.B)
    clique_edges = [(b_index[x], b_index[y]) for i, x in enumerate(inter) for y in inter[i + 1:]]
    g_prime = from_edges(gb.n, gb.edges() + clique_edges)

    classes: dict[int, list[int]] = {}
    for x in inter:
        classes.setdefault(chi_a.colours[a_index[x]], []).append(b_index[x])
    witness = contract_sets(g_prime, classes.values())
    g_second = witness.result
    s_vertex = {i: witness.vertex_map[members[0]] for i, members in classes.items()}

    chi_b = oracle(g_second, c)
    if chi_b is None:
        raise ColouringError("oracle found no colouring of the contracted B side")
    if len(chi_b.colours) != g_second.n or verify_colouring(g_second, Colouring(chi_b.colours, c)):
        raise ColouringError("oracle returned an improper colouring")

    rename: dict[int, int] = {}
    for i, s in s_vertex.items():
        oc = chi_b.colours[s]
        if oc in rename:
            raise ColouringError(f"oracle gives s_{i} and s_{rename[oc]} the same colour")
        rename[oc] = i
    spare = iter(sorted(set(range(1, c + 1)) - set(rename.values())))
    for oc in range(1, c + 1):
        if oc not in rename:
            rename[oc] = next(spare)

    out = [0] * g.n
    for v in sep.A:
        out[v] = chi_a.colours[a_index[v]]
    for v in sep.B - sep.A:
        out[v] = rename[chi_b.colours[witness.vertex_map[b_index[v]]]]
    result = Colouring(tuple(out), c)
    if verify_colouring(g, result):
        raise ColouringError("stitched colouring is improper")
    return result
