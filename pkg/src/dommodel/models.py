"""Dominating K_t-models: verification, exhaustive search, normalization, lifting.

A dominating K_t-model is a sequence ``(T_1, ..., T_t)`` of disjoint, non-empty,
connected vertex sets such that for ``i < j`` every vertex of ``T_j`` has a
neighbour in ``T_i``.  Branch sets are 1-indexed in all public APIs and in
violation reports; index ``0`` means "in no branch set".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    ContractionWitness,
    Graph,
    GraphError,
    bits,
    component_of,
    components,
    induced_subgraph,
    is_connected_mask,
    shortest_path,
    to_mask,
)


class ModelError(ValueError):
    pass


GENERAL = "general"
SINGLETON = "singleton-reduced"
MODES = (GENERAL, SINGLETON)


@dataclass(frozen=True)
class DominatingModel:
    branch_sets: tuple[tuple[int, ...], ...]

    def __init__(self, branch_sets: Iterable[Iterable[int]]):
        object.__setattr__(self, "branch_sets", tuple(tuple(sorted(set(s))) for s in branch_sets))

    @property
    def t(self) -> int:
        return len(self.branch_sets)

    def index(self, v: int) -> int:
        for i, s in enumerate(self.branch_sets, 1):
            if v in s:
                return i
        return 0

    def vertices(self) -> set[int]:
        return {v for s in self.branch_sets for v in s}

    def to_dict(self) -> dict:
        return {"t": self.t, "branch_sets": [list(s) for s in self.branch_sets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict | str) -> "DominatingModel":
        if isinstance(data, str):
            data = json.loads(data)
        model = cls(data["branch_sets"])
        if "t" in data and int(data["t"]) != model.t:
            raise ModelError(f"declared t={data['t']} but {model.t} branch sets given")
        return model


def index_of(model: DominatingModel, v: int, g: Graph | None = None) -> int:
    """Index (1-based) of the branch set containing ``v``, or 0."""
    if g is not None:
        g.check_vertex(v)
    elif v < 0:
        raise GraphError(f"vertex {v} out of range")
    return model.index(v)


# -- verification -----------------------------------------------------------------


def _structural_violations(g: Graph, model: DominatingModel) -> tuple[list[dict], list[int]]:
    violations: list[dict] = []
    masks = []
    seen: dict[int, int] = {}
    for i, s in enumerate(model.branch_sets, 1):
        if not s:
            violations.append({"kind": "empty", "set": i})
        bad = [v for v in s if not 0 <= v < g.n]
        if bad:
            violations.append({"kind": "out_of_range", "set": i, "vertices": bad})
            s = tuple(v for v in s if 0 <= v < g.n)
        for v in s:
            if v in seen:
                violations.append({"kind": "overlap", "vertex": v, "sets": [seen[v], i]})
            else:
                seen[v] = i
        mask = to_mask(s)
        if s and not is_connected_mask(g, mask):
            violations.append({"kind": "disconnected", "set": i})
        masks.append(mask)
    return violations, masks


def verify_dominating_model(g: Graph, model: DominatingModel) -> list[dict]:
    """Empty list iff ``model`` is a dominating K_t-model of ``g``."""
    violations, masks = _structural_violations(g, model)
    for j in range(1, model.t):
        for v in bits(masks[j]):
            for i in range(j):
                if not g.adj[v] & masks[i]:
                    violations.append({"kind": "undominated", "set": j + 1, "vertex": v, "by": i + 1})
    return violations


def verify_standard_model(g: Graph, model: DominatingModel) -> list[dict]:
    """Empty list iff the branch sets form a K_t-minor model (pairwise touching)."""
    violations, masks = _structural_violations(g, model)
    for j in range(1, model.t):
        reach = 0
        for v in bits(masks[j]):
            reach |= g.adj[v]
        for i in range(j):
            if not reach & masks[i]:
                violations.append({"kind": "not_adjacent", "sets": [i + 1, j + 1]})
    return violations


# -- ordered cliques and compatibility -----------------------------------------


def check_ordered_clique(g: Graph, clique: Sequence[int]) -> tuple[int, ...]:
    L = tuple(clique)
    if len(L) > 2:
        raise ModelError("ordered clique has more than two vertices")
    for v in L:
        g.check_vertex(v)
    if len(L) == 2 and (L[0] == L[1] or not g.has_edge(*L)):
        raise ModelError(f"{L} is not a clique")
    return L


def is_L_compatible(model: DominatingModel, clique: Sequence[int], g: Graph | None = None) -> bool:
    """ind(v_i) <= i for each i, and ind(v_2) = 2 forces ind(v_1) = 1."""
    L = check_ordered_clique(g, clique) if g is not None else tuple(clique)
    if len(L) > 2 or len(set(L)) != len(L):
        raise ModelError(f"{L} is not an ordered clique of size <= 2")
    ind = [model.index(v) for v in L]
    if any(x > i for i, x in enumerate(ind, 1)):
        return False
    if len(L) == 2 and ind[1] == 2 and ind[0] != 1:
        return False
    return True


# -- search -------------------------------------------------------------------------


class _Search:
    """Backtracking over branch sets, filled from ``T_t`` down to ``T_1``.

    ``T_j`` is grown as a connected set with a fixed least vertex.  A vertex
    placed anywhere in slot ``>= j`` needs ``j - 1`` unplaced neighbours to be
    dominated by ``T_1 .. T_{j-1}``; that count only drops as sets grow, so a
    violation prunes the whole subtree.  Once ``T_j`` dominates every later
    vertex, growing it further cannot help (any solution with a larger set also
    works with the smaller one), so the set is closed immediately.  ``T_1`` is
    taken to be a whole component of the unplaced allowed vertices, which is
    enough because domination is monotone in ``T_1``.
    """

    def __init__(self, g: Graph, t: int, clique: tuple[int, ...]):
        self.g = g
        self.t = t
        full = g.full_mask
        self.allowed = [full] * (t + 1)
        for pos, v in enumerate(clique, 1):
            for j in range(pos + 1, t + 1):
                self.allowed[j] &= ~(1 << v)
        self.pair_rule = clique if len(clique) == 2 else None
        self.chosen = [0] * (t + 1)

    def run(self, top: int, placed: int) -> bool:
        return self._slot(top, placed)

    def _slot(self, j: int, placed: int) -> bool:
        g = self.g
        adj = g.adj
        free = g.full_mask & ~placed
        if j == 1:
            cand = self.allowed[1] & free
            must = 0
            if self.pair_rule and self.chosen[2] >> self.pair_rule[1] & 1:
                must = 1 << self.pair_rule[0]
            later = list(bits(placed))
            rest = cand
            while rest:
                v = (rest & -rest).bit_length() - 1
                comp = component_of(g, v, cand)
                rest &= ~comp
                if must and not comp & must:
                    continue
                if all(adj[x] & comp for x in later):
                    self.chosen[1] = comp
                    return True
            return False

        need = j - 1
        cand = 0
        for v in bits(self.allowed[j] & free):
            if (adj[v] & free).bit_count() >= need:
                cand |= 1 << v
        later = list(bits(placed))
        for r in bits(cand):
            rbit = 1 << r
            region = cand & ~(rbit - 1)
            if any(not adj[x] & region for x in later):
                break  # regions only shrink as r grows
            fa = free & ~rbit
            if (adj[r] & fa).bit_count() < need:
                continue
            if any((adj[y] & fa).bit_count() < need for y in bits(adj[r] & placed)):
                continue
            undom = 0
            for x in later:
                if not adj[x] & rbit:
                    undom |= 1 << x
            if self._grow(j, need, placed, rbit, adj[r] & region & ~rbit, region, fa, undom):
                return True
        return False

    def _grow(self, j, need, placed, S, ext, region, fa, undom) -> bool:
        adj = self.g.adj
        if not undom:
            self.chosen[j] = S
            return self._slot(j - 1, placed | S)
        avail = region & ~S
        for x in bits(undom):
            if not adj[x] & avail:
                return False
        while ext:
            vbit = ext & -ext
            ext ^= vbit
            v = vbit.bit_length() - 1
            fa_v = fa & ~vbit
            ok = (adj[v] & fa_v).bit_count() >= need
            if ok:
                for y in bits(adj[v] & (placed | S)):
                    if (adj[y] & fa_v).bit_count() < need:
                        ok = False
                        break
            if ok:
                new_ext = (ext | adj[v]) & region & ~S & ~vbit
                if self._grow(j, need, placed, S | vbit, new_ext, region, fa_v, undom & ~adj[v]):
                    return True
            region &= ~vbit
            for x in bits(undom):
                if not adj[x] & region & ~S:
                    return False
        return False

    def model(self) -> DominatingModel:
        return DominatingModel([list(bits(self.chosen[i])) for i in range(1, self.t + 1)])


def find_dominating_model(
    g: Graph,
    t: int,
    clique: Sequence[int] = (),
    mode: str = GENERAL,
) -> DominatingModel | None:
    """An L-compatible dominating K_t-model of ``g``, or ``None`` if there is none.

    ``mode="singleton-reduced"`` (t = 4 or 5) fixes the last two branch sets to
    adjacent singletons of degree >= t - 1 and searches the rest; any model can
    be rewritten into that shape without touching the ordered clique.
    """
    if t < 1:
        raise ModelError("t must be at least 1")
    if mode not in MODES:
        raise ModelError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == SINGLETON and t not in (4, 5):
        raise ModelError("singleton-reduced mode needs t = 4 or t = 5")
    L = check_ordered_clique(g, clique)
    if t > g.n:
        return None

    if mode == GENERAL:
        search = _Search(g, t, L)
        return search.model() if search.run(t, 0) else None

    need = t - 1
    degs = g.degrees()
    forbidden = to_mask(L)
    for a, b in g.edges():
        if degs[a] < need or degs[b] < need or forbidden >> a & 1 or forbidden >> b & 1:
            continue
        search = _Search(g, t, L)
        placed = (1 << a) | (1 << b)
        fa = g.full_mask & ~placed
        if (g.adj[a] & fa).bit_count() < t - 2 or (g.adj[b] & fa).bit_count() < t - 2:
            continue
        search.chosen[t - 1] = 1 << a
        search.chosen[t] = 1 << b
        if search.run(t - 2, placed):
            return search.model()
    return None


def find_standard_model(g: Graph, t: int) -> DominatingModel | None:
    """Branch sets of a K_t-minor, or ``None``.

    Sets ``T_t .. T_2`` are connected sets with increasing least vertices;
    ``T_1`` is a whole component of what is left (any model extends to one).
    """
    if t < 1:
        raise ModelError("t must be at least 1")
    if t > g.n:
        return None
    adj = g.adj
    chosen: list[int] = []

    def reach(mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= adj[v]
        return out

    def last(placed: int) -> bool:
        cand = g.full_mask & ~placed
        for comp in components(g, cand):
            cm = to_mask(comp)
            r = reach(cm)
            if all(r & s for s in chosen):
                chosen.append(cm)
                return True
        return False

    def slot(k: int, placed: int, min_root: int) -> bool:
        if k == 1:
            return last(placed)
        free = g.full_mask & ~placed
        for r in bits(free >> min_root << min_root):
            rbit = 1 << r
            region = free & ~(rbit - 1)
            if grow(k, placed, rbit, adj[r] & region, region, r):
                return True
        return False

    def grow(k, placed, S, ext, region, r) -> bool:
        rs = reach(S)
        if all(rs & s for s in chosen):
            chosen.append(S)
            if slot(k - 1, placed | S, r + 1):
                return True
            chosen.pop()
        while ext:
            vbit = ext & -ext
            ext ^= vbit
            v = vbit.bit_length() - 1
            new_ext = (ext | adj[v]) & region & ~S & ~vbit
            if grow(k, placed, S | vbit, new_ext, region, r):
                return True
            region &= ~vbit
        return False

    if not slot(t, 0, 0):
        return None
    return DominatingModel([list(bits(m)) for m in reversed(chosen)])


# -- normalization ------------------------------------------------------------------


def _require_valid(g: Graph, model: DominatingModel) -> None:
    problems = verify_dominating_model(g, model)
    if problems:
        raise ModelError(f"model does not verify: {problems[:3]}")


def singleton_normalize(g: Graph, model: DominatingModel) -> DominatingModel:
    """Shrink the last two branch sets to adjacent singletons ``{w}``, ``{v}``.

    ``v`` is the least vertex of ``T_t`` and ``w`` its least neighbour in
    ``T_{t-1}``.
    """
    _require_valid(g, model)
    if model.t < 2:
        raise ModelError("need at least two branch sets")
    *head, penult, last = model.branch_sets
    v = min(last)
    w = min(u for u in penult if g.has_edge(u, v))
    return DominatingModel([*head, [w], [v]])


def is_induced_cycle(g: Graph, vertices: Iterable[int]) -> bool:
    mask = to_mask(vertices)
    size = mask.bit_count()
    if size < 3 or not is_connected_mask(g, mask):
        return False
    return all((g.adj[v] & mask).bit_count() == 2 for v in bits(mask))


def induced_cycle_normalize(g: Graph, model: DominatingModel) -> DominatingModel:
    """Replace ``T_{t-2}`` by a shortest path between neighbours of the two singletons.

    Afterwards ``T_{t-2}`` together with the singletons induces a cycle.
    """
    _require_valid(g, model)
    if model.t < 3 or len(model.branch_sets[-1]) != 1 or len(model.branch_sets[-2]) != 1:
        raise ModelError("model is not singleton-normalized")
    (w,), (v,) = model.branch_sets[-2], model.branch_sets[-1]
    middle = to_mask(model.branch_sets[-3])
    path = shortest_path(g, g.adj[v] & middle, g.adj[w] & middle, middle)
    if path is None:
        raise ModelError("no path between the singletons' neighbourhoods")
    sets = list(model.branch_sets)
    sets[-3] = tuple(path)
    return DominatingModel(sets)


def restrict_tail(g: Graph, model: DominatingModel) -> tuple[Graph, DominatingModel, dict[int, int]]:
    """Drop ``T_1``: the rest is a dominating K_{t-1}-model of the induced subgraph."""
    tail = model.branch_sets[1:]
    sub, index = induced_subgraph(g, [v for s in tail for v in s])
    return sub, DominatingModel([[index[v] for v in s] for s in tail]), index


# -- lifting through contractions and deletions ------------------------------------


class LiftError(ModelError):
    pass


def image_clique(clique: Sequence[int], witness: ContractionWitness | None) -> tuple[int, ...]:
    """Where an ordered clique goes under a minor map.

    Merged vertices keep the lowest position of any clique vertex among them;
    deleted clique vertices drop out.
    """
    if witness is None:
        return tuple(clique)
    out: list[int] = []
    for v in clique:
        w = witness.vertex_map[v]
        if w is not None and w not in out:
            out.append(w)
    return tuple(out)


def _nontrivial_classes(witness: ContractionWitness) -> list[list[int]]:
    return [c for c in witness.classes() if len(c) > 1]


def _check_hypotheses(kind, witness, L, L_prime) -> None:
    if kind in ("a", "b", "c") and witness is None:
        raise LiftError(f"kind {kind} needs a witness")
    if kind in ("a", "b"):
        if any(w is None for w in witness.vertex_map):
            raise LiftError("contraction witness deletes vertices")
        big = _nontrivial_classes(witness)
        if len(big) > 1:
            raise LiftError("more than one connected subgraph was contracted")
        if kind == "a":
            if not L:
                raise LiftError("kind a needs v_1")
            if big and L[0] not in big[0]:
                raise LiftError("contracted subgraph does not contain v_1")
        else:
            if len(L) != 2:
                raise LiftError("kind b needs L = (v_1, v_2)")
            v1, v2 = L
            if big:
                if v2 not in big[0]:
                    raise LiftError("contracted subgraph does not contain v_2")
                if any(not witness.host.has_edge(v1, x) for x in big[0]):
                    raise LiftError("contracted subgraph leaves N(v_1)")
    elif kind == "c":
        kept = [v for v, w in enumerate(witness.vertex_map) if w is not None]
        sub, index = induced_subgraph(witness.host, kept)
        if any(witness.vertex_map[v] != index[v] for v in kept) or sub.adj != witness.result.adj:
            raise LiftError("witness is not an induced-subgraph map")
    elif kind == "d":
        if witness is not None and any(w != v for v, w in enumerate(witness.vertex_map)):
            raise LiftError("kind d must not change the graph")
        if tuple(L_prime[: len(L)]) != tuple(L) or len(L_prime) > 2:
            raise LiftError("L is not an initial segment of L'")
    else:
        raise LiftError(f"unknown kind {kind!r}")
    if kind != "d" and tuple(L_prime) != image_clique(L, witness):
        raise LiftError(f"L' = {tuple(L_prime)} is not the image {image_clique(L, witness)} of L")


def lift_contraction(
    kind: str,
    witness: ContractionWitness | None,
    model_prime: DominatingModel,
    L: Sequence[int],
    L_prime: Sequence[int],
    host: Graph | None = None,
) -> DominatingModel:
    """Turn an L'-compatible model of the transformed graph into an L-compatible one of the host.

    kind ``a``: one connected subgraph through ``v_1`` was contracted.
    kind ``b``: one connected subgraph of ``G[N(v_1)]`` through ``v_2`` was contracted.
    kind ``c``: the transformed graph is ``G[A]`` and ``L'`` is ``L`` restricted to A.
    kind ``d``: same graph, ``L`` an initial segment of ``L'``.

    In every case the contracted vertex ``v*`` lies in branch set ``ind(v*)``
    (0, 1, or for kind ``b`` possibly 2), and un-contracting it into that set
    is the lift; deleted vertices simply stay unused.
    """
    L = tuple(L)
    L_prime = tuple(L_prime)
    _check_hypotheses(kind, witness, L, L_prime)
    if witness is not None:
        g, g_prime = witness.host, witness.result
    else:
        if host is None:
            raise LiftError("kind d without a witness needs the host graph")
        g = g_prime = host
    check_ordered_clique(g, L)
    problems = verify_dominating_model(g_prime, model_prime)
    if problems:
        raise LiftError(f"model' does not verify: {problems[:3]}")
    if not is_L_compatible(model_prime, L_prime, g_prime):
        raise LiftError("model' is not L'-compatible")

    if witness is None:
        lifted = model_prime
    else:
        lifted = DominatingModel([sorted(witness.preimage(s)) for s in model_prime.branch_sets])

    if verify_dominating_model(g, lifted) or not is_L_compatible(lifted, L, g):
        raise LiftError("lifted model failed verification")  # unreachable when hypotheses hold
    return lifted
