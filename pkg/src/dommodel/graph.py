"""Immutable simple graphs stored as neighbour bitmasks.

Vertices are the integers ``0 .. n-1``.  Row ``adj[v]`` is a Python int whose
bit ``u`` is set iff ``uv`` is an edge, so neighbourhood algebra is plain
integer arithmetic.  Every transformation returns a fresh graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, loops, bad graph6)."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise GraphError(f"row {v} has a self-loop or an out-of-range neighbour")
            rest = row >> (v + 1)
            u = v + 1
            while rest:
                if rest & 1 and not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency is not symmetric at ({v}, {u})")
                rest >>= 1
                u += 1

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for graph on {self.n} vertices")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Graph:
    """Build a graph on ``n`` vertices; duplicate edges are merged."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    adj = [0] * n
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(labels) if labels is not None else None)


def from_masks(adj: Sequence[int]) -> Graph:
    return Graph(len(adj), tuple(adj))


# -- graph6 ---------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    raise GraphError("graph6 supports at most 258047 vertices here")


def to_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise GraphError(f"graph6 byte out of range in {s!r}")
    if codes[0] == 63:
        if len(codes) >= 8 and codes[1] == 63:
            raise GraphError("8-byte graph6 header (n > 258047) is not supported")
        if len(codes) < 4:
            raise GraphError("truncated graph6 size header")
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        payload = codes[4:]
    else:
        n = codes[0]
        payload = codes[1:]
    need = n * (n - 1) // 2
    if len(payload) != (need + 5) // 6:
        raise GraphError(f"graph6 payload has {len(payload)} bytes, expected {(need + 5) // 6} for n={n}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if payload[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# -- substructures ----------------------------------------------------------------


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[S]`` relabelled densely (ascending order) and the old->new map."""
    keep = sorted(set(vertices))
    for v in keep:
        g.check_vertex(v)
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v]):
            if u in index:
                row |= 1 << index[u]
        adj.append(row)
    labels = tuple(g.labels[v] for v in keep) if g.labels else None
    return Graph(len(keep), tuple(adj), labels), index


def component_of(g: Graph, start: int, within: int | None = None) -> int:
    """Mask of the component of ``G[within]`` containing ``start``."""
    if within is None:
        within = g.full_mask
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: Graph, within: int | None = None) -> list[list[int]]:
    """Connected components of ``G[within]``, each sorted, ordered by least vertex."""
    if within is None:
        within = g.full_mask
    out = []
    rest = within
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = component_of(g, v, within)
        out.append(list(bits(comp)))
        rest &= ~comp
    return out


def is_connected_mask(g: Graph, mask: int) -> bool:
    if not mask:
        return False
    start = (mask & -mask).bit_length() - 1
    return component_of(g, start, mask) == mask


def is_connected_subset(g: Graph, vertices: Iterable[int]) -> bool:
    """True iff ``G[S]`` is connected and ``S`` is non-empty."""
    vs = list(vertices)
    for v in vs:
        g.check_vertex(v)
    return is_connected_mask(g, to_mask(vs))


def is_connected(g: Graph) -> bool:
    return g.n == 0 or is_connected_mask(g, g.full_mask)


def shortest_path(g: Graph, sources: int, targets: int, within: int) -> list[int] | None:
    """BFS path inside ``within`` from any vertex of ``sources`` to any of ``targets``.

    Ties break towards smaller vertex indices, so the result is deterministic.
    """
    sources &= within
    targets &= within
    if not sources or not targets:
        return None
    parent: dict[int, int] = {}
    queue = deque(bits(sources))
    seen = sources
    while queue:
        v = queue.popleft()
        if targets >> v & 1:
            path = [v]
            while path[-1] in parent:
                path.append(parent[path[-1]])
            return path[::-1]
        for u in bits(g.adj[v] & within & ~seen):
            seen |= 1 << u
            parent[u] = v
            queue.append(u)
    return None


# -- contraction -----------------------------------------------------------------


@dataclass(frozen=True)
class ContractionWitness:
    """A minor map from ``host`` onto ``result``.

    ``vertex_map[v]`` is the result vertex that ``v`` was merged into, or
    ``None`` when ``v`` was deleted (only :func:`deletion_witness` produces
    deletions).
    """

    host: Graph
    result: Graph
    vertex_map: tuple[int | None, ...]

    def preimage(self, new_vertices: Iterable[int]) -> set[int]:
        wanted = set(new_vertices)
        return {v for v, w in enumerate(self.vertex_map) if w in wanted}

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.result.n)]
        for v, w in enumerate(self.vertex_map):
            if w is not None:
                out[w].append(v)
        return out


def _quotient(g: Graph, groups: list[list[int]]) -> ContractionWitness:
    """Merge each group to a single vertex; groups are numbered by least member."""
    groups = sorted((sorted(gr) for gr in groups), key=lambda gr: gr[0])
    vmap: list[int | None] = [None] * g.n
    for i, gr in enumerate(groups):
        for v in gr:
            vmap[v] = i
    adj = [0] * len(groups)
    for u, v in g.edges():
        a, b = vmap[u], vmap[v]
        if a is not None and b is not None and a != b:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return ContractionWitness(g, Graph(len(groups), tuple(adj)), tuple(vmap))


def contract_edges(g: Graph, edges: Iterable[Sequence[int]]) -> ContractionWitness:
    """Contract every edge in ``edges``; loops vanish and parallel edges merge."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        u, v = int(e[0]), int(e[1])
        g.check_vertex(u)
        g.check_vertex(v)
        if not g.has_edge(u, v):
            raise GraphError(f"cannot contract non-edge ({u}, {v})")
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return _quotient(g, list(groups.values()))


def contract_sets(g: Graph, sets: Iterable[Iterable[int]]) -> ContractionWitness:
    """Contract each given connected, pairwise disjoint vertex set to one vertex."""
    seen = 0
    groups = []
    for s in sets:
        mask = to_mask(s)
        if not mask:
            continue
        if mask & seen:
            raise GraphError("contraction sets overlap")
        if not is_connected_mask(g, mask):
            raise GraphError(f"contraction set {sorted(bits(mask))} is not connected")
        seen |= mask
        groups.append(list(bits(mask)))
    groups.extend([v] for v in range(g.n) if not seen >> v & 1)
    return _quotient(g, groups)


def deletion_witness(g: Graph, keep: Iterable[int]) -> ContractionWitness:
    """Witness for passing to ``G[keep]``; deleted vertices map to ``None``."""
    sub, index = induced_subgraph(g, keep)
    return ContractionWitness(g, sub, tuple(index.get(v) for v in range(g.n)))


# -- operations producing new graphs --------------------------------------------


def add_edges(g: Graph, edges: Iterable[Sequence[int]]) -> Graph:
    return from_edges(g.n, list(g.edges()) + [tuple(e) for e in edges])


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in bits(g.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
    return Graph(g.n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


# -- separations and connectivity ---------------------------------------------------


@dataclass(frozen=True)
class Separation:
    A: frozenset[int]
    B: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.A & self.B)


def separation_violations(g: Graph, sep: Separation, max_order: int | None = None) -> list[str]:
    problems = []
    if sep.A | sep.B != frozenset(g.vertices):
        problems.append("A and B do not cover V(G)")
    if not sep.A - sep.B:
        problems.append("A \\ B is empty")
    if not sep.B - sep.A:
        problems.append("B \\ A is empty")
    a_only = to_mask(sep.A - sep.B)
    b_only = to_mask(sep.B - sep.A)
    if any(g.adj[v] & b_only for v in bits(a_only)):
        problems.append("edge between A \\ B and B \\ A")
    if max_order is not None and sep.order > max_order:
        problems.append(f"|A & B| = {sep.order} exceeds {max_order}")
    return problems


def is_proper_separation(g: Graph, sep: Separation, max_order: int | None = None) -> bool:
    return not separation_violations(g, sep, max_order)


def _local_connectivity(g: Graph, s: int, t: int, cap: int) -> int:
    """Number of internally disjoint s-t paths (s, t non-adjacent), stopping at ``cap``.

    Unit-capacity max-flow on the split graph: vertex v becomes v_in=2v -> v_out=2v+1.
    """
    n = g.n
    cap_map: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap_map:
            out[a].append(b)
            out[b].append(a)
            cap_map.setdefault((b, a), 0)
        cap_map[(a, b)] = cap_map.get((a, b), 0) + c

    for v in range(n):
        arc(2 * v, 2 * v + 1, n if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, n)
        arc(2 * v + 1, 2 * u, n)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and cap_map[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap_map[(a, b)] -= 1
            cap_map[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity_at_least(g: Graph, k: int) -> bool:
    """True iff G is k-connected: more than k vertices and no separator smaller than k."""
    if k < 0:
        raise GraphError("k must be non-negative")
    if g.n <= k:
        return False
    for s, t in combinations(range(g.n), 2):
        if not g.has_edge(s, t) and _local_connectivity(g, s, t, k) < k:
            return False
    return True


def cut_vertices(g: Graph) -> list[int]:
    """Vertices whose removal increases the number of components of G."""
    base = len(components(g))
    full = g.full_mask
    return [v for v in range(g.n) if len(components(g, full & ~(1 << v))) > base]
