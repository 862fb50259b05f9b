"""Small-graph catalog and the per-graph colouring / model / extraction check."""

from __future__ import annotations

import time
from typing import Iterator

from .canon import canonical_form
from .colouring import chromatic_number
from .graph import Graph, parse_graph6, to_graph6
from .models import (
    GENERAL,
    find_dominating_model,
    induced_cycle_normalize,
    is_induced_cycle,
    singleton_normalize,
    verify_dominating_model,
)
from .subdivision import check_unsubdivided_incident_edges, extract_with_trace, verify_subdivision

MAX_BUILTIN_N = 7


def graphs_on(n: int) -> list[Graph]:
    """One graph per isomorphism class on ``n`` vertices, sorted by canonical form.

    Every graph on n vertices is a graph on n - 1 vertices plus a vertex joined
    to some subset, so extending each class by every subset and deduplicating
    by canonical form covers them all.
    """
    if n == 0:
        return [Graph(0, ())]
    forms: set[bytes] = set()
    for base in graphs_on(n - 1):
        for subset in range(1 << (n - 1)):
            adj = [row | ((subset >> v & 1) << (n - 1)) for v, row in enumerate(base.adj)]
            adj.append(subset)
            forms.add(canonical_form(Graph(n, tuple(adj))))
    return [parse_graph6(f.decode("ascii")) for f in sorted(forms)]


def catalog(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    if max_n > MAX_BUILTIN_N:
        raise ValueError(f"built-in enumeration stops at n = {MAX_BUILTIN_N}; stream larger catalogs in")
    level = [Graph(0, ())]
    for n in range(0, max_n + 1):
        if n > 0:
            level = graphs_on(n)
        if n >= min_n:
            yield from level


def check_graph(g: Graph, extract: bool = False, mode: str = GENERAL) -> dict:
    """Colouring, dominating K5-model, normalization and (optionally) extraction for one graph."""
    start = time.perf_counter()
    record: dict = {"graph6": to_graph6(g), "n": g.n, "m": g.m}
    failures: list[str] = []
    chi = chromatic_number(g)
    record["chi"] = chi
    model = find_dominating_model(g, 5, mode=mode)
    record["model"] = model.to_dict() if model else None
    if model is not None:
        if verify_dominating_model(g, model):
            failures.append("model does not verify")
        norm = singleton_normalize(g, model)
        cyc = induced_cycle_normalize(g, norm)
        ok = (
            not verify_dominating_model(g, norm)
            and not verify_dominating_model(g, cyc)
            and is_induced_cycle(g, [v for s in cyc.branch_sets[2:] for v in s])
        )
        record["normalized"] = cyc.to_dict()
        if not ok:
            failures.append("normalization chain failed")
    if chi >= 5 and model is None:
        failures.append("5-chromatic without a dominating K5-model")
    if extract and chi >= 5 and model is not None:
        trace = extract_with_trace(g, model)
        emb = trace.embedding
        record["embedding"] = emb.to_dict()
        record["unsubdivided_incident_edges"] = check_unsubdivided_incident_edges(emb)
        if verify_subdivision(g, emb):
            failures.append("embedding does not verify")
        if (emb.name == "K5") != (len(trace.centre_path) == 1):
            failures.append("pattern does not match the centre path length")
        if not set(trace.subtree_leaves) <= set(trace.attachments):
            failures.append("subtree has a leaf outside the attachment vertices")
        if tuple(sorted(trace.inner.branch_map)) != tuple(sorted(emb.branch_map[:4])):
            failures.append("K4 branch vertices changed during assembly")
    record["status"] = "FAILURE" if failures else "ok"
    if failures:
        record["failures"] = failures
    record["perf"] = {"seconds": round(time.perf_counter() - start, 6)}
    return record
