"""Named graph families, K5 splits, and random regular graphs.

Labelling conventions (all 0-based):

* ``cycle(n)``: ``i ~ i+1 mod n``; ``path(n)``: ``i ~ i+1``.
* ``complete_bipartite(a, b)``: sides ``0..a-1`` and ``a..a+b-1``.
* ``petersen()``: outer 5-cycle ``0..4``, inner pentagram ``5..9``, spokes ``i ~ i+5``.
* ``k55_minus_matching()``: sides ``0..4`` and ``5..9``, ``i ~ 5+j`` iff ``i != j``.
* ``k5_hat()``: ``0..3`` form a K4; ``4 ~ 0, 1``; ``5 ~ 2, 3``; ``4 ~ 5``.
* ``join(G, H)``: vertices of G first, then those of H shifted by ``G.n``.
* ``wheel(k)``: rim cycle ``0..k-1``, hub ``k``.
"""

from __future__ import annotations

import random
import re
from itertools import combinations, product
from typing import Sequence

from .canon import canonical_form
from .graph import Graph, GraphError, bits, from_edges, is_connected, parse_graph6


def complete(n: int) -> Graph:
    return from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return from_edges(n, [])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs at least 1 vertex")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return from_edges(10, outer + inner + spokes)


def k55_minus_matching() -> Graph:
    return from_edges(10, [(i, 5 + j) for i in range(5) for j in range(5) if i != j])


def k5_hat() -> Graph:
    k4 = list(combinations(range(4), 2))
    return from_edges(6, k4 + [(4, 0), (4, 1), (5, 2), (5, 3), (4, 5)])


def join(g: Graph, h: Graph) -> Graph:
    edges = list(g.edges())
    edges += [(g.n + u, g.n + v) for u, v in h.edges()]
    edges += [(u, g.n + v) for u in range(g.n) for v in range(h.n)]
    return from_edges(g.n + h.n, edges)


def wheel(k: int) -> Graph:
    return join(cycle(k), complete(1))


def one_subdivision(g: Graph) -> Graph:
    """Replace each edge ``uv`` (in ``g.edges()`` order) by a path ``u - (n+i) - v``."""
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        edges += [(u, g.n + i), (g.n + i, v)]
    return from_edges(g.n + g.m, edges)


# -- splits of K5 ---------------------------------------------------------------------

# pairing p of the ascending neighbour list [a, b, c, d] into (first half, second half)
_PAIRINGS = {1: ((0, 1), (2, 3)), 2: ((0, 2), (1, 3)), 3: ((0, 3), (1, 2))}


def split_k5(spec: Sequence[int]) -> Graph:
    """Split vertices of K5.

    ``spec[i] == 0`` keeps vertex ``i``; ``spec[i] in {1, 2, 3}`` replaces it
    by two adjacent halves, each taking one pair of its four neighbours under
    the chosen pairing of the ascending neighbour list.
    """
    spec = list(spec)
    if len(spec) != 5 or any(p not in (0, 1, 2, 3) for p in spec):
        raise GraphError(f"split spec must be five entries from 0..3, got {spec}")
    ids: list[list[int]] = []
    nxt = 0
    for p in spec:
        ids.append([nxt] if p == 0 else [nxt, nxt + 1])
        nxt += len(ids[-1])

    def half(i: int, j: int) -> int:
        if spec[i] == 0:
            return ids[i][0]
        nbrs = [x for x in range(5) if x != i]
        first, _ = _PAIRINGS[spec[i]]
        return ids[i][0] if nbrs.index(j) in first else ids[i][1]

    edges = [(half(i, j), half(j, i)) for i, j in combinations(range(5), 2)]
    edges += [tuple(pair) for pair in ids if len(pair) == 2]
    return from_edges(nxt, edges)


def enumerate_k5_splits() -> list[Graph]:
    """One representative per isomorphism class over all 4^5 split specs."""
    seen: dict[bytes, Graph] = {}
    for spec in product(range(4), repeat=5):
        g = split_k5(spec)
        key = canonical_form(g)
        if key not in seen:
            seen[key] = parse_graph6(key.decode("ascii"))
    return [seen[k] for k in sorted(seen, key=lambda k: (seen[k].n, k))]


# -- random graphs -------------------------------------------------------------------


def random_regular(n: int, d: int, seed: int | None = None, connected: bool = True) -> Graph:
    """Uniform-ish random d-regular simple graph via the pairing model with rejection."""
    if n * d % 2 or d >= n:
        raise GraphError(f"no {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(100000):
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        if any(u == v for u, v in pairs):
            continue
        if len({(min(e), max(e)) for e in pairs}) != len(pairs):
            continue
        g = from_edges(n, pairs)
        if connected and not is_connected(g):
            continue
        return g
    raise GraphError("pairing model kept failing; try another seed")


def random_gnp(n: int, p: float, rng: random.Random) -> Graph:
    return from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


# -- name resolution for the command line ----------------------------------------------


def named_graph(token: str) -> Graph:
    """Resolve ``k5``, ``c6``, ``p4``, ``k3,3``, ``w5``, ``petersen``, ``k5hat`` ... or a graph6 string."""
    t = token.strip()
    low = t.lower().replace("_", "-")
    fixed = {
        "petersen": petersen,
        "k5hat": k5_hat,
        "k5-hat": k5_hat,
        "k55-minus-matching": k55_minus_matching,
    }
    if low in fixed:
        return fixed[low]()
    m = re.fullmatch(r"([kcpw])(\d+)", low)
    if m:
        kind, k = m.group(1), int(m.group(2))
        return {"k": complete, "c": cycle, "p": path, "w": wheel}[kind](k)
    m = re.fullmatch(r"k(\d+),(\d+)", low)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    return parse_graph6(t)


GENERATORS = {
    "complete": ("n",),
    "empty": ("n",),
    "cycle": ("n",),
    "path": ("n",),
    "complete-bipartite": ("a", "b"),
    "petersen": (),
    "k55-minus-matching": (),
    "k5-hat": (),
    "wheel": ("n",),
    "join": ("of", "with"),
    "one-subdivision": ("of",),
    "split-k5": ("spec",),
    "random-regular": ("n", "d", "seed"),
}


def gen(name: str, **params) -> Graph:
    """Dispatch a generator by its command-line name."""
    key = name.replace("_", "-")
    if key not in GENERATORS:
        raise GraphError(f"unknown generator {name!r}; known: {', '.join(GENERATORS)}")
    try:
        if key == "complete":
            return complete(int(params["n"]))
        if key == "empty":
            return empty(int(params["n"]))
        if key == "cycle":
            return cycle(int(params["n"]))
        if key == "path":
            return path(int(params["n"]))
        if key == "complete-bipartite":
            return complete_bipartite(int(params["a"]), int(params["b"]))
        if key == "petersen":
            return petersen()
        if key == "k55-minus-matching":
            return k55_minus_matching()
        if key == "k5-hat":
            return k5_hat()
        if key == "wheel":
            return wheel(int(params["n"]))
        if key == "join":
            return join(named_graph(params["of"]), named_graph(params["with"]))
        if key == "one-subdivision":
            return one_subdivision(named_graph(params["of"]))
        if key == "split-k5":
            spec = params["spec"]
            if isinstance(spec, str):
                spec = [int(x) for x in spec.split(",")]
            return split_k5(spec)
        if key == "random-regular":
            seed = params.get("seed")
            return random_regular(int(params["n"]), int(params.get("d", 3)), None if seed is None else int(seed))
    except KeyError as exc:
        raise GraphError(f"generator {key!r} needs parameter {exc.args[0]!r}") from None
    raise AssertionError(key)


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees())


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, by BFS from every vertex."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in bits(g.adj[v]):
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        parent[u] = v
                        nxt.append(u)
                    elif parent[v] != u:
                        length = dist[u] + dist[v] + 1
                        if best is None or length < best:
                            best = length
            frontier = nxt
    return best
