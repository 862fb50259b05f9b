"""Command-line front end.

Exit codes: 0 success, 1 domain violations or per-record errors, 2 usage
error, 3 I/O failure.  Data records are canonical JSON (sorted keys); timing
lives under ``perf`` and is dropped by ``--stable``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, Iterator

from .colouring import Colouring, chromatic_number, k_colour, verify_colouring
from .constructions import GENERATORS, enumerate_k5_splits, gen
from .graph import GraphError, parse_graph6, to_graph6
from .models import (
    GENERAL,
    MODES,
    DominatingModel,
    ModelError,
    find_dominating_model,
    find_standard_model,
    verify_dominating_model,
    verify_standard_model,
)
from .subdivision import SubdivisionEmbedding, verify_subdivision
from .sweep import MAX_BUILTIN_N, catalog, check_graph

WORKERS_ENV = "DOMMODEL_WORKERS"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn: Callable, items: Iterable, workers: int) -> Iterator:
    """``map`` that keeps input order whatever the worker count."""
    if workers <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=16)


class _Emitter:
    def __init__(self, stable: bool, report: str | None):
        self.stable = stable
        self.report = open(report, "w", encoding="utf-8") if report else None

    def __call__(self, record: dict) -> None:
        if self.stable:
            record = {k: v for k, v in record.items() if k != "perf"}
        line = dumps(record)
        print(line)
        if self.report:
            self.report.write(line + "\n")

    def close(self) -> None:
        if self.report:
            self.report.close()


def _stdin_lines() -> list[str]:
    return [ln.strip() for ln in sys.stdin if ln.strip() and not ln.startswith(">>")]


# -- gen ------------------------------------------------------------------------------


def _emit_graph(g, fmt: str) -> None:
    if fmt == "json":
        print(dumps({"n": g.n, "edges": [list(e) for e in g.edges()]}))
    else:
        print(to_graph6(g))


def cmd_gen(args) -> int:
    name = args.name.replace("_", "-")
    if name not in GENERATORS:
        raise UsageError(f"unknown generator {args.name!r}; known: {', '.join(GENERATORS)}")
    if name == "split-k5" and args.enumerate:
        for g in enumerate_k5_splits():
            _emit_graph(g, args.format)
        return EXIT_OK
    params = {k: v for k, v in vars(args).items() if k in {"n", "a", "b", "of", "with", "spec", "d", "seed"} and v is not None}
    try:
        if name == "random-regular":
            base = args.seed if args.seed is not None else 0
            graphs = [gen(name, **{**params, "seed": base + i}) for i in range(args.count)]
        else:
            graphs = [gen(name, **params)]
    except (GraphError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    for g in graphs:
        _emit_graph(g, args.format)
    return EXIT_OK


# -- find-model -----------------------------------------------------------------------


def _find_one(item: tuple[int, str], t: int, standard: bool, mode: str, clique: tuple[int, ...]) -> dict:
    idx, line = item
    record: dict = {"index": idx, "graph6": line}
    start = time.perf_counter()
    try:
        g = parse_graph6(line)
        if standard:
            model = find_standard_model(g, t)
        else:
            model = find_dominating_model(g, t, clique, mode)
        record["model"] = model.to_dict() if model else None
    except (GraphError, ModelError) as exc:
        record["error"] = str(exc)
    record["perf"] = {"seconds": round(time.perf_counter() - start, 6)}
    return record


def _parse_clique(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--clique expects v1[,v2], got {text!r}") from None


def cmd_find_model(args) -> int:
    clique = _parse_clique(args.clique)
    lines = _stdin_lines()
    emit = _Emitter(args.stable, args.report)
    fn = partial(_find_one, t=args.t, standard=args.standard, mode=args.mode, clique=clique)
    errors = 0
    try:
        for rec in _ordered_map(fn, enumerate(lines), args.workers):
            errors += "error" in rec
            emit(rec)
    finally:
        emit.close()
    return EXIT_VIOLATION if errors else EXIT_OK


# -- check-theorem -----------------------------------------------------------------


def _check_one(line: str, extract: bool, mode: str) -> dict:
    try:
        g = parse_graph6(line)
    except GraphError as exc:
        return {"graph6": line, "status": "error", "error": str(exc)}
    return check_graph(g, extract=extract, mode=mode)


def cmd_check_theorem(args) -> int:
    if args.max_n is not None:
        if args.max_n > MAX_BUILTIN_N:
            raise UsageError(f"--max-n is limited to {MAX_BUILTIN_N}; pipe a graph6 catalog for more")
        lines = [to_graph6(g) for g in catalog(args.max_n)]
    else:
        lines = _stdin_lines()
    emit = _Emitter(args.stable, args.report)
    fn = partial(_check_one, extract=args.extract, mode=args.mode)
    summary = {"graphs": 0, "five_chromatic": 0, "with_model": 0, "extracted": 0, "failures": 0, "errors": 0}
    try:
        for rec in _ordered_map(fn, lines, args.workers):
            emit(rec)
            summary["graphs"] += 1
            if rec["status"] == "error":
                summary["errors"] += 1
                continue
            summary["five_chromatic"] += rec["chi"] >= 5
            summary["with_model"] += rec["model"] is not None
            summary["extracted"] += "embedding" in rec
            summary["failures"] += rec["status"] == "FAILURE"
        emit({"summary": summary})
    finally:
        emit.close()
    return EXIT_VIOLATION if summary["failures"] or summary["errors"] else EXIT_OK


# -- verify ------------------------------------------------------------------------


def _load_artifact(text: str) -> dict:
    text = text.strip()
    if text == "-":
        return json.loads(sys.stdin.read())
    if text.startswith("{"):
        return json.loads(text)
    with open(text, encoding="utf-8") as fh:
        return json.load(fh)


def cmd_verify(args) -> int:
    try:
        g = parse_graph6(args.graph)
        data = _load_artifact(args.artifact)
        if args.kind == "model":
            model = DominatingModel.from_dict(data)
            check = verify_standard_model if args.standard else verify_dominating_model
            violations = check(g, model)
        elif args.kind == "colouring":
            violations = verify_colouring(g, Colouring.from_json(data))
        else:
            violations = verify_subdivision(g, SubdivisionEmbedding.from_dict(data))
    except (GraphError, ModelError, KeyError, ValueError) as exc:
        raise UsageError(f"bad input: {exc}") from None
    print(dumps({"ok": not violations, "violations": violations}))
    return EXIT_VIOLATION if violations else EXIT_OK


# -- chromatic ------------------------------------------------------------------------


def _chromatic_one(item: tuple[int, str]) -> dict:
    idx, line = item
    start = time.perf_counter()
    try:
        g = parse_graph6(line)
    except GraphError as exc:
        return {"index": idx, "graph6": line, "error": str(exc)}
    chi = chromatic_number(g)
    col = k_colour(g, chi)
    return {
        "index": idx,
        "graph6": line,
        "chi": chi,
        "colouring": {"budget": col.budget, "colours": list(col.colours)},
        "perf": {"seconds": round(time.perf_counter() - start, 6)},
    }


def cmd_chromatic(args) -> int:
    emit = _Emitter(args.stable, args.report)
    errors = 0
    try:
        for rec in _ordered_map(_chromatic_one, enumerate(_stdin_lines()), args.workers):
            errors += "error" in rec
            emit(rec)
    finally:
        emit.close()
    return EXIT_VIOLATION if errors else EXIT_OK


# -- parser ----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dommodel", description="Dominating K_t-models: search, verification, sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def batch_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--workers", type=int, default=_default_workers())
        p.add_argument("--stable", action="store_true", help="omit the perf field")
        p.add_argument("--report", help="also write the JSONL records to this file")

    p = sub.add_parser("gen", help="emit a named graph")
    p.add_argument("name")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--of")
    p.add_argument("--with", dest="with")
    p.add_argument("--spec", help="five comma-separated split choices from 0..3")
    p.add_argument("--enumerate", action="store_true", help="split-k5: all 22 classes")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("find-model", help="search each stdin graph for a model")
    p.add_argument("--t", type=int, default=5)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--dominating", dest="standard", action="store_false")
    kind.add_argument("--standard", dest="standard", action="store_true")
    p.add_argument("--mode", choices=MODES, default=GENERAL)
    p.add_argument("--clique", help="ordered clique v1[,v2]")
    batch_flags(p)
    p.set_defaults(func=cmd_find_model, standard=False)

    p = sub.add_parser("check-theorem", help="5-chromatic => dominating K5-model, over a catalog")
    p.add_argument("--max-n", type=int)
    p.add_argument("--extract", action="store_true", help="also extract and verify K5 / K5hat subdivisions")
    p.add_argument("--mode", choices=MODES, default=GENERAL)
    batch_flags(p)
    p.set_defaults(func=cmd_check_theorem)

    p = sub.add_parser("verify", help="check a model, colouring or subdivision artifact")
    p.add_argument("--kind", choices=("model", "colouring", "subdivision"), required=True)
    p.add_argument("--graph", required=True, help="graph6 string")
    p.add_argument("--artifact", required=True, help="JSON text, a file path, or - for stdin")
    p.add_argument("--standard", action="store_true", help="model kind: check a plain K_t-minor model")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chromatic", help="chromatic number of each stdin graph")
    batch_flags(p)
    p.set_defaults(func=cmd_chromatic)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"dommodel: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dommodel: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
