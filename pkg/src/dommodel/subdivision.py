"""Subdivision (topological minor) search and the K5 / K5-hat extraction.

An embedding maps each pattern vertex to a branch vertex of G and each pattern
edge to a path of G between the images of its ends; paths share no internal
vertex with each other or with any branch vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .constructions import complete, k5_hat
from .graph import Graph, GraphError, bits, induced_subgraph, parse_graph6, to_graph6, to_mask
from .models import DominatingModel, verify_dominating_model

MAX_PATTERN_N = 10
MAX_HOST_N = 24

PATTERNS = {"K4": complete(4), "K5": complete(5), "K5hat": k5_hat()}


def pattern_name(h: Graph) -> str:
    for name, p in PATTERNS.items():
        if p.adj == h.adj:
            return name
    return "g6:" + to_graph6(h)


def pattern_from_name(name: str) -> Graph:
    if name in PATTERNS:
        return PATTERNS[name]
    if name.startswith("g6:"):
        return parse_graph6(name[3:])
    raise GraphError(f"unknown pattern {name!r}")


@dataclass(frozen=True)
class SubdivisionEmbedding:
    pattern: Graph
    branch_map: tuple[int, ...]
    # keyed by pattern edge (a, b) with a < b; runs from branch_map[a] to branch_map[b]
    paths: dict[tuple[int, int], tuple[int, ...]] = field(hash=False)

    @property
    def name(self) -> str:
        return pattern_name(self.pattern)

    def to_dict(self) -> dict:
        return {
            "pattern": self.name,
            "branch_map": {str(i): v for i, v in enumerate(self.branch_map)},
            "paths": [list(self.paths[e]) for e in self.pattern.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict | str) -> "SubdivisionEmbedding":
        if isinstance(data, str):
            data = json.loads(data)
        pattern = pattern_from_name(data["pattern"])
        bm = data["branch_map"]
        branch_map = tuple(int(bm[str(i)]) for i in range(pattern.n)) if isinstance(bm, dict) else tuple(bm)
        edges = pattern.edges()
        if len(data["paths"]) != len(edges):
            raise GraphError(f"{len(data['paths'])} paths for {len(edges)} pattern edges")
        return cls(pattern, branch_map, {e: tuple(p) for e, p in zip(edges, data["paths"])})

    def path_lengths(self) -> dict[tuple[int, int], int]:
        return {e: len(p) - 1 for e, p in self.paths.items()}


def verify_subdivision(g: Graph, emb: SubdivisionEmbedding) -> list[dict]:
    """Empty list iff ``emb`` realizes a subdivision of its pattern inside ``g``."""
    out: list[dict] = []
    h = emb.pattern
    if len(emb.branch_map) != h.n:
        return [{"kind": "branch_map_size", "expected": h.n, "got": len(emb.branch_map)}]
    for i, v in enumerate(emb.branch_map):
        if not 0 <= v < g.n:
            out.append({"kind": "out_of_range", "pattern_vertex": i, "vertex": v})
    if len(set(emb.branch_map)) != h.n:
        out.append({"kind": "branch_map_not_injective"})
    if out:
        return out
    branch = set(emb.branch_map)
    used: dict[int, tuple[int, int]] = {}
    expected = set(h.edges())
    if set(emb.paths) != expected:
        out.append({"kind": "edge_set_mismatch", "missing": sorted(expected - set(emb.paths)), "extra": sorted(set(emb.paths) - expected)})
    for e in sorted(set(emb.paths) & expected):
        p = emb.paths[e]
        a, b = e
        if len(p) < 2 or p[0] != emb.branch_map[a] or p[-1] != emb.branch_map[b]:
            out.append({"kind": "wrong_endpoints", "edge": list(e)})
            continue
        if len(set(p)) != len(p):
            out.append({"kind": "path_not_simple", "edge": list(e)})
        for x, y in zip(p, p[1:]):
            if not (0 <= x < g.n and 0 <= y < g.n and g.has_edge(x, y)):
                out.append({"kind": "missing_edge", "edge": list(e), "pair": [x, y]})
        for x in p[1:-1]:
            if x in branch:
                out.append({"kind": "internal_hits_branch", "edge": list(e), "vertex": x})
            elif x in used:
                out.append({"kind": "paths_share_vertex", "edges": [list(used[x]), list(e)], "vertex": x})
            else:
                used[x] = e
    return out


def find_subdivision(
    g: Graph,
    h: Graph,
    direct_edges: Sequence[tuple[int, int]] = (),
) -> SubdivisionEmbedding | None:
    """Exhaustive search for a subdivision of ``h`` in ``g``.

    Pattern edges listed in ``direct_edges`` must be realized by single edges.
    """
    if h.n > MAX_PATTERN_N:
        raise GraphError(f"pattern has more than {MAX_PATTERN_N} vertices")
    if g.n > MAX_HOST_N:
        raise GraphError(f"host has more than {MAX_HOST_N} vertices")
    if h.n > g.n:
        return None
    direct = {tuple(sorted(e)) for e in direct_edges}
    hdeg = h.degrees()
    gdeg = g.degrees()
    adj = g.adj
    order = sorted(range(h.n), key=lambda x: (-hdeg[x], x))
    pedges = sorted(h.edges(), key=lambda e: (e not in direct, e))
    image = [-1] * h.n
    paths: dict[tuple[int, int], tuple[int, ...]] = {}

    def reachable(a: int, b: int, free: int) -> bool:
        if adj[a] >> b & 1:
            return True
        region = free | (1 << b)
        seen = 1 << a
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= region & ~seen
            if nxt >> b & 1:
                return True
            seen |= nxt
            frontier = nxt & ~(1 << b)
        return False

    def route(k: int, free: int) -> bool:
        if k == len(pedges):
            return True
        for e in pedges[k + 1:]:
            if e not in direct and not reachable(image[e[0]], image[e[1]], free):
                return False
        e = pedges[k]
        a, b = image[e[0]], image[e[1]]
        if e in direct:
            if not adj[a] >> b & 1:
                return False
            paths[e] = (a, b)
            return route(k + 1, free)
        # every simple a-b path through free vertices, shortest first (iterative deepening)
        stack_path = [a]

        def extend(v: int, free_now: int, budget: int) -> bool:
            if budget == 1:
                if adj[v] >> b & 1:
                    paths[e] = tuple(stack_path) + (b,)
                    return route(k + 1, free_now)
                return False
            for u in bits(adj[v] & free_now):
                stack_path.append(u)
                if extend(u, free_now & ~(1 << u), budget - 1):
                    return True
                stack_path.pop()
            return False

        for limit in range(1, free.bit_count() + 2):
            if extend(a, free, limit):
                return True
        paths.pop(e, None)
        return False

    def assign(idx: int, used: int) -> bool:
        if idx == h.n:
            return route(0, g.full_mask & ~used)
        x = order[idx]
        for v in range(g.n):
            if used >> v & 1 or gdeg[v] < hdeg[x]:
                continue
            ok = True
            for y in bits(h.adj[x]):
                if image[y] >= 0 and tuple(sorted((x, y))) in direct and not adj[v] >> image[y] & 1:
                    ok = False
                    break
            if not ok:
                continue
            image[x] = v
            if assign(idx + 1, used | (1 << v)):
                return True
            image[x] = -1
        return False

    if not assign(0, 0):
        return None
    return SubdivisionEmbedding(h, tuple(image), {e: paths[e] for e in h.edges()})


def find_k4_subdivision_preferring_direct(g: Graph) -> SubdivisionEmbedding | None:
    """K4 subdivision, preferring two incident pattern edges realized as single edges."""
    emb = find_subdivision(g, PATTERNS["K4"], direct_edges=[(0, 1), (0, 2)])
    return emb if emb is not None else find_subdivision(g, PATTERNS["K4"])


def check_unsubdivided_incident_edges(emb: SubdivisionEmbedding) -> bool:
    """Two incident pattern edges (inside the K4 for K5-hat) are single edges of G."""
    name = emb.name
    if name not in ("K5", "K5hat"):
        raise GraphError(f"pattern must be K5 or K5hat, got {name}")
    h = emb.pattern
    core = {v for v in range(h.n) if h.degree(v) == 4}
    short = [e for e, p in emb.paths.items() if len(p) == 2 and set(e) <= core]
    for x in core:
        if sum(1 for e in short if x in e) >= 2:
            return True
    return False


# -- K5 / K5-hat extraction ------------------------------------------------------------


class ExtractionError(ValueError):
    pass


@dataclass(frozen=True)
class Extraction:
    embedding: SubdivisionEmbedding
    inner: SubdivisionEmbedding  # K4 subdivision inside T_2..T_5, in G's labels
    attachments: tuple[int, ...]  # v_i in T_1 adjacent to b_i
    subtree: tuple[int, ...]
    subtree_leaves: tuple[int, ...]
    centre_path: tuple[int, ...]  # the path P; a single vertex in the K5 case


def _bfs_tree(g: Graph, mask: int) -> dict[int, int]:
    root = (mask & -mask).bit_length() - 1
    parent = {root: -1}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for u in bits(g.adj[v] & mask):
                if u not in parent:
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    return parent


def _steiner_subtree(parent: dict[int, int], terminals: set[int]) -> set[int]:
    """Prune non-terminal leaves of the spanning tree until none remain."""
    nodes = set(parent)
    deg = {v: 0 for v in nodes}
    for v, p in parent.items():
        if p >= 0:
            deg[v] += 1
            deg[p] += 1
    nbrs: dict[int, set[int]] = {v: set() for v in nodes}
    for v, p in parent.items():
        if p >= 0:
            nbrs[v].add(p)
            nbrs[p].add(v)
    stack = [v for v in nodes if deg[v] <= 1 and v not in terminals]
    while stack:
        v = stack.pop()
        if v not in nodes or v in terminals or len(nbrs[v]) > 1:
            continue
        nodes.remove(v)
        for u in nbrs[v]:
            nbrs[u].discard(v)
            if len(nbrs[u]) <= 1 and u not in terminals:
                stack.append(u)
        nbrs[v] = set()
    return nodes


def _tree_path(parent: dict[int, int], a: int, b: int) -> list[int]:
    up_a = [a]
    while parent[up_a[-1]] >= 0:
        up_a.append(parent[up_a[-1]])
    pos = {v: i for i, v in enumerate(up_a)}
    up_b = [b]
    while up_b[-1] not in pos:
        up_b.append(parent[up_b[-1]])
    meet = up_b[-1]
    return up_a[: pos[meet] + 1] + up_b[-2::-1]


def split_tree(parent: dict[int, int], nodes: Sequence[int], terminals: Sequence[int]):
    """Find ``(p, q, groups)`` splitting a tree into P = p..q plus four legs.

    ``terminals`` has four entries (repeats allowed).  Returns ``(p, p, [all])``
    when four legs from one centre ``p`` are internally disjoint, otherwise
    ``(p, q, [[i, j], [k, l]])`` with legs ``i, j`` at ``p`` and ``k, l`` at ``q``.
    """
    nodes = sorted(nodes)

    def legs_ok(centre: int, idx: Sequence[int]) -> list[list[int]] | None:
        legs = [_tree_path(parent, centre, terminals[i]) for i in idx]
        for x in range(len(legs)):
            for y in range(x + 1, len(legs)):
                if set(legs[x]) & set(legs[y]) != {centre}:
                    return None
        return legs

    for p in nodes:
        if legs_ok(p, range(4)) is not None:
            return p, p, [list(range(4))]
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    for p in nodes:
        for q in nodes:
            if q == p:
                continue
            P = set(_tree_path(parent, p, q))
            for first, second in pairings:
                for at_p, at_q in ((first, second), (second, first)):
                    lp = legs_ok(p, at_p)
                    lq = legs_ok(q, at_q)
                    if lp is None or lq is None:
                        continue
                    sp = set().union(*lp)
                    sq = set().union(*lq)
                    if sp & P != {p} or sq & P != {q} or sp & sq:
                        continue
                    return p, q, [list(at_p), list(at_q)]
    raise ExtractionError("no centre decomposition of the subtree")


def extract_with_trace(g: Graph, model: DominatingModel) -> Extraction:
    if model.t != 5:
        raise ExtractionError("need a dominating K5-model")
    problems = verify_dominating_model(g, model)
    if problems:
        raise ExtractionError(f"model does not verify: {problems[:3]}")
    T1 = to_mask(model.branch_sets[0])
    rest = sorted(v for s in model.branch_sets[1:] for v in s)
    sub, index = induced_subgraph(g, rest)
    back = {i: v for v, i in index.items()}
    inner_sub = find_k4_subdivision_preferring_direct(sub)
    if inner_sub is None:
        raise ExtractionError("no K4 subdivision among T_2..T_5")  # excluded by the model
    inner = SubdivisionEmbedding(
        inner_sub.pattern,
        tuple(back[v] for v in inner_sub.branch_map),
        {e: tuple(back[v] for v in p) for e, p in inner_sub.paths.items()},
    )
    b = inner.branch_map
    vs = [min(bits(g.adj[bi] & T1)) for bi in b]

    parent_full = _bfs_tree(g, T1)
    nodes = _steiner_subtree(parent_full, set(vs))
    leaves = []
    for v in nodes:
        tree_nbrs = [u for u in nodes if parent_full.get(u) == v or parent_full[v] == u]
        if len(tree_nbrs) <= 1:
            leaves.append(v)
    p, q, groups = split_tree(parent_full, nodes, vs)

    def k4_path(x: int, y: int) -> tuple[int, ...]:
        if x < y:
            return inner.paths[(x, y)]
        return inner.paths[(y, x)][::-1]

    def leg(centre: int, i: int) -> tuple[int, ...]:
        return (b[i],) + tuple(reversed(_tree_path(parent_full, centre, vs[i])))

    if p == q:
        pattern = PATTERNS["K5"]
        sigma = [0, 1, 2, 3]
        branch = tuple(b) + (p,)
        paths = {(x, y): k4_path(x, y) for x in range(4) for y in range(x + 1, 4)}
        paths.update({(i, 4): leg(p, i) for i in range(4)})
        centre = (p,)
    else:
        pattern = PATTERNS["K5hat"]
        sigma = groups[0] + groups[1]
        branch = tuple(b[s] for s in sigma) + (p, q)
        paths = {(x, y): k4_path(sigma[x], sigma[y]) for x in range(4) for y in range(x + 1, 4)}
        paths[(0, 4)] = leg(p, sigma[0])
        paths[(1, 4)] = leg(p, sigma[1])
        paths[(2, 5)] = leg(q, sigma[2])
        paths[(3, 5)] = leg(q, sigma[3])
        centre = tuple(_tree_path(parent_full, p, q))
        paths[(4, 5)] = centre
    emb = SubdivisionEmbedding(pattern, branch, {e: paths[e] for e in pattern.edges()})
    problems = verify_subdivision(g, emb)
    if problems:
        raise ExtractionError(f"assembled embedding failed verification: {problems[:3]}")
    return Extraction(emb, inner, tuple(vs), tuple(sorted(nodes)), tuple(sorted(leaves)), centre)


def extract_k5_or_k5hat(g: Graph, model: DominatingModel) -> SubdivisionEmbedding:
    """Subdivision of K5 or K5-hat built from a dominating K5-model."""
    return extract_with_trace(g, model).embedding
