"""Command line entry point: ``paireddom {solve,exact,verify,gen,bench}``.

Exit codes: 0 success, 1 bad input, 2 certificate failure (a state dump
is written next to the working directory, or to ``--dump-dir``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .bench import (
    ORACLE_CUTOFF,
    SCHEMA_VERSION,
    bench_aggregate,
    ratio_fields,
    run_bench,
    solve_report,
)
from .errors import CertificateError, InputError, MalformedInput
from .graph import GENERATOR_KINDS, Graph, emit_edge_list, emit_graph6, generate, read_graph
from .oracle import DEFAULT_LIMIT, exact_gamma_pr, is_pd_set
from .solver import solve

SEED_ENV = "PAIREDDOM_SEED"


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise MalformedInput(f"{SEED_ENV}={raw!r} is not an integer")


def _load(path: str, fmt: Optional[str]) -> list[tuple[str, Graph]]:
    """One graph per graph6 line, or a single edge-list graph."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    name = "stdin" if path == "-" else Path(path).name
    if fmt == "edges" or (fmt is None and read_sniff(text) == "edges"):
        return [(name, read_graph(text, "edges"))]
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedInput(f"{name}: no graph found")
    if len(lines) == 1:
        return [(name, read_graph(lines[0], "graph6"))]
    return [(f"{name}:{i}", read_graph(ln, "graph6")) for i, ln in enumerate(lines, 1)]


def read_sniff(text: str) -> str:
    for ln in text.splitlines():
        body = ln.split("#", 1)[0].strip()
        if body:
            return "edges" if body.split()[0] == "n" else "graph6"
    return "graph6"


def _emit(rep: dict[str, Any], as_json: bool, text: str) -> None:
    print(json.dumps(rep) if as_json else text)


def _parse_set(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise MalformedInput(f"bad vertex list {raw!r}")


def _parse_pairs(raw: str) -> list[tuple[int, int]]:
    out = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split("-")
        if len(parts) != 2:
            raise MalformedInput(f"bad pair {chunk!r}; use a-b")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedInput(f"bad pair {chunk!r}")
    return out


def cmd_solve(args) -> int:
    for name, g in _load(args.file, args.format):
        t0 = time.perf_counter()
        sol = solve(g)
        elapsed = time.perf_counter() - t0
        rep = solve_report(name, g, sol, trace=args.trace,
                           wall_time=elapsed if args.timing else None)
        lines = [
            f"{name}: n={g.n} m={g.m} |D|={sol.size} ratio={rep['ratio']} "
            f"({rep['ratio_decimal']:.4f}) bound 10n/17 {'ok' if sol.bound_ok else 'VIOLATED'}",
            f"  D = {' '.join(map(str, sol.pd_set))}",
            f"  pairs = {' '.join(f'{a}-{b}' for a, b in sol.pairing)}",
        ]
        if args.trace:
            for t in rep["trace"]:
                lines.append(
                    f"  {t['rule']:>4} S={t['set']} xi={t['xi']} weight={t['weight_after']}"
                )
        _emit(rep, args.json, "\n".join(lines))
    return 0


def cmd_exact(args) -> int:
    for name, g in _load(args.file, args.format):
        t0 = time.perf_counter()
        res = exact_gamma_pr(g, limit=args.max_n)
        rep = {
            "schema_version": SCHEMA_VERSION,
            "instance": name,
            "mode": "exact",
            "n": g.n,
            "m": g.m,
            "size": res.gamma_pr,
            "gamma_pr": res.gamma_pr,
            **ratio_fields(res.gamma_pr, g.n),
            "bound_ok": 17 * res.gamma_pr <= 10 * g.n,
            "witness": list(res.witness),
            "pairing": [list(p) for p in res.pairing],
            "nodes_explored": res.nodes_explored,
        }
        if args.timing:
            rep["wall_time"] = round(time.perf_counter() - t0, 6)
        _emit(rep, args.json,
              f"{name}: n={g.n} gamma_pr={res.gamma_pr} witness={list(res.witness)}")
    return 0


def cmd_verify(args) -> int:
    vertices = _parse_set(args.set)
    pairs = _parse_pairs(args.pairs) if args.pairs is not None else None
    for name, g in _load(args.file, args.format):
        ok = is_pd_set(g, vertices, pairs)
        rep = {
            "schema_version": SCHEMA_VERSION,
            "instance": name,
            "mode": "verify",
            "n": g.n,
            "m": g.m,
            "size": len(set(vertices)),
            **ratio_fields(len(set(vertices)), g.n),
            "valid": ok,
        }
        _emit(rep, args.json, f"{name}: valid={'true' if ok else 'false'}")
    return 0


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    g = generate(args.kind, n=args.n, d=args.d, k=args.k, p=args.p, seed=seed)
    text = emit_graph6(g) + "\n" if args.format == "graph6" else emit_edge_list(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    reports = run_bench(
        args.count, args.n_min, args.n_max, seed,
        workers=args.workers, oracle_cutoff=args.oracle_max_n, timing=args.timing,
    )
    summary = bench_aggregate(reports)
    summary["seed"] = seed
    if args.json:
        for rep in reports:
            print(json.dumps(rep))
        print(json.dumps(summary))
    else:
        for key in ("instances", "solved", "rule_firings", "oracle_checked",
                    "oracle_mismatches", "failures", "max_ratio", "mean_ratio_decimal"):
            print(f"{key}: {summary.get(key)}")
        hist = " ".join(f"{k}={v}" for k, v in summary["rule_histogram"].items())
        print(f"rules: {hist}")
    bad = [r for r in reports if "error" in r]
    if bad:
        _write_dump(args.dump_dir, "bench", {"failures": bad})
    if bad or summary["oracle_mismatches"]:
        return 2
    return 0


def _write_dump(dump_dir: Optional[str], mode: str, payload: dict) -> Path:
    path = Path(dump_dir or ".") / f"paireddom-dump-{mode}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1))
    return path


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="paireddom",
        description="Certified paired dominating sets for graphs with minimum degree 4.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--dump-dir", default=None, help="where to write failure state dumps")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("file", help="graph file (graph6 or edge list), '-' for stdin")
        sp.add_argument("--format", choices=("graph6", "edges"), default=None)
        sp.add_argument("--json", action="store_true", help="line-delimited JSON output")
        sp.add_argument("--timing", action="store_true", help="include wall time")

    sp = sub.add_parser("solve", help="run the 10n/17 construction")
    graph_input(sp)
    sp.add_argument("--trace", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("exact", help="exact paired domination number")
    graph_input(sp)
    sp.add_argument("--max-n", type=int, default=DEFAULT_LIMIT)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("verify", help="check a candidate paired dominating set")
    graph_input(sp)
    sp.add_argument("--set", required=True, help="comma-separated vertex ids")
    sp.add_argument("--pairs", default=None, help="pairs as a-b,c-d")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="emit a generated graph")
    sp.add_argument("kind", choices=GENERATOR_KINDS)
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("graph6", "edges"), default="graph6")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="random corpus run with oracle cross-checks")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--n-min", type=int, default=10)
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--oracle-max-n", type=int, default=ORACLE_CUTOFF)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except CertificateError as exc:
        path = _write_dump(args.dump_dir, args.command,
                           {"error": type(exc).__name__, "message": str(exc), "dump": exc.dump})
        print(f"error: {type(exc).__name__}: {exc} (state written to {path})", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def dispatch(argv: Sequence[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
