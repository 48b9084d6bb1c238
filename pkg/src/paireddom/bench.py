"""Run reports and randomized corpus benchmarking."""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .errors import CertificateError
from .graph import Graph, random_mindeg, random_regular
from .oracle import exact_gamma_pr
from .rules import RULE_IDS
from .solver import PDSolution, solve

SCHEMA_VERSION = 1
ORACLE_CUTOFF = 14
MINDEG_P = (0.0, 0.05, 0.1, 0.2)


def ratio_fields(size: int, n: int) -> dict[str, Any]:
    r = Fraction(size, n) if n else Fraction(0)
    return {"ratio": f"{r.numerator}/{r.denominator}", "ratio_decimal": round(float(r), 6)}


def solve_report(
    name: str,
    g: Graph,
    sol: PDSolution,
    *,
    trace: bool = False,
    seed: Optional[int] = None,
    wall_time: Optional[float] = None,
) -> dict[str, Any]:
    rep: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "instance": name,
        "mode": "solve",
        "n": g.n,
        "m": g.m,
        "size": sol.size,
        **ratio_fields(sol.size, g.n),
        "bound_ok": sol.bound_ok,
        "pd_set": list(sol.pd_set),
        "pairing": [list(p) for p in sol.pairing],
        "rules": dict(sorted(Counter(t.rule_id for t in sol.trace).items(),
                             key=lambda kv: int(kv[0][1:]))),
        "deleted_edges": len(sol.deleted_edges),
        "seed": seed,
    }
    if trace:
        rep["trace"] = [
            {
                "rule": t.rule_id,
                "set": list(t.members),
                "pairing": [list(p) for p in t.pairing],
                "xi": t.xi,
                "weight_after": t.weight_after,
                "component": t.component,
            }
            for t in sol.trace
        ]
    if wall_time is not None:
        rep["wall_time"] = round(wall_time, 6)
    return rep


@dataclass(frozen=True)
class InstanceSpec:
    index: int
    kind: str
    n: int
    p: float
    seed: int

    @property
    def name(self) -> str:
        if self.kind == "random_regular":
            return f"rr-{self.index}-n{self.n}-d4-s{self.seed}"
        return f"md-{self.index}-n{self.n}-p{self.p}-s{self.seed}"

    def build(self) -> Graph:
        if self.kind == "random_regular":
            return random_regular(self.n, 4, self.seed)
        return random_mindeg(self.n, 4, self.p, self.seed)


def bench_instances(count: int, n_min: int, n_max: int, seed: int) -> list[InstanceSpec]:
    """Deterministic mix of 4-regular and minimum-degree-4 instances."""
    if n_min < 5 or n_max < n_min:
        raise ValueError("need 5 <= n_min <= n_max")
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(n_min, n_max)
        sub_seed = rng.getrandbits(63)
        if i % 2 == 0:
            out.append(InstanceSpec(i, "random_regular", n, 0.0, sub_seed))
        else:
            out.append(InstanceSpec(i, "random_mindeg", n, rng.choice(MINDEG_P), sub_seed))
    return out


def run_instance(
    spec: InstanceSpec, oracle_cutoff: int = ORACLE_CUTOFF, timing: bool = False
) -> dict[str, Any]:
    g = spec.build()
    t0 = time.perf_counter()
    try:
        sol = solve(g)
    except CertificateError as exc:
        return {
            "schema_version": SCHEMA_VERSION,
            "instance": spec.name,
            "mode": "solve",
            "n": g.n,
            "m": g.m,
            "seed": spec.seed,
            "error": type(exc).__name__,
            "message": str(exc),
            "dump": exc.dump,
        }
    elapsed = time.perf_counter() - t0
    rep = solve_report(spec.name, g, sol, seed=spec.seed,
                       wall_time=elapsed if timing else None)
    if g.n <= oracle_cutoff:
        ex = exact_gamma_pr(g, limit=max(oracle_cutoff, g.n))
        rep["exact"] = ex.gamma_pr
        rep["oracle_mismatch"] = (
            ex.gamma_pr > sol.size or ex.gamma_pr % 2 != 0 or 17 * ex.gamma_pr > 10 * g.n
        )
    return rep


def _run_star(args):
    return run_instance(*args)


def run_bench(
    count: int,
    n_min: int,
    n_max: int,
    seed: int,
    *,
    workers: int = 1,
    oracle_cutoff: int = ORACLE_CUTOFF,
    timing: bool = False,
) -> list[dict[str, Any]]:
    specs = bench_instances(count, n_min, n_max, seed)
    jobs = [(s, oracle_cutoff, timing) for s in specs]
    if workers <= 1:
        return [_run_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def bench_aggregate(reports: list[dict[str, Any]]) -> dict[str, Any]:
    if not reports:
        raise ValueError("cannot aggregate an empty report list")
    hist = {r: 0 for r in RULE_IDS}
    ratios: list[Fraction] = []
    failures = Counter()
    mismatches = checked = 0
    for rep in reports:
        if "error" in rep:
            failures[rep["error"]] += 1
            continue
        p, q = map(int, rep["ratio"].split("/"))
        ratios.append(Fraction(p, q))
        for rule, c in rep.get("rules", {}).items():
            hist[rule] += c
        if "exact" in rep:
            checked += 1
            mismatches += bool(rep["oracle_mismatch"])
        if not rep["bound_ok"]:
            failures["BoundViolation"] += 1
    summary: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "mode": "bench-summary",
        "instances": len(reports),
        "solved": len(ratios),
        "rule_firings": sum(hist.values()),
        "rule_histogram": hist,
        "oracle_checked": checked,
        "oracle_mismatches": mismatches,
        "failures": sum(failures.values()),
        "failure_kinds": dict(sorted(failures.items())),
    }
    if ratios:
        mx = max(ratios)
        mean = sum(ratios, Fraction(0)) / len(ratios)
        summary["max_ratio"] = f"{mx.numerator}/{mx.denominator}"
        summary["max_ratio_decimal"] = round(float(mx), 6)
        summary["mean_ratio_decimal"] = round(float(mean), 6)
    return summary
