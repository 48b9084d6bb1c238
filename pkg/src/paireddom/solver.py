"""Greedy desirable-set extension to a certified paired dominating set."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import WEIGHTS, ColoredState, apply_extension, check_pairing, color
from .errors import CertificateError, InvalidPairing, MinDegreeViolation
from .graph import Edge, Graph, components
from .rules import find_desirable

MIN_DEGREE = 4
BOUND = Fraction(10, 17)


@dataclass(frozen=True)
class TraceStep:
    rule_id: str
    members: tuple[int, ...]
    pairing: tuple[Edge, ...]
    xi: int
    weight_after: int
    component: int = 0


@dataclass(frozen=True)
class PDSolution:
    pd_set: tuple[int, ...]
    pairing: tuple[Edge, ...]
    trace: tuple[TraceStep, ...]
    n: int
    bound_ok: bool
    deleted_edges: tuple[Edge, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.pd_set)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.size, self.n) if self.n else Fraction(0)


def check_min_degree(g: Graph, delta: int = MIN_DEGREE) -> None:
    low = [v for v in range(g.n) if g.degree(v) < delta]
    if low:
        v = low[0]
        raise MinDegreeViolation(
            f"vertex {v} has degree {g.degree(v)} < {delta} ({len(low)} such vertices)"
        )


def preprocess(g: Graph) -> Graph:
    """Delete edges between degree->=5 vertices until those vertices are independent.

    Edges are scanned in lexicographic order and the scan is repeated until
    a full pass deletes nothing.
    """
    return preprocess_with_log(g)[0]


def preprocess_with_log(g: Graph) -> tuple[Graph, list[Edge]]:
    check_min_degree(g)
    deg = g.degrees()
    alive = g.edges()
    deleted: list[Edge] = []
    changed = True
    while changed:
        changed = False
        kept = []
        for u, v in alive:
            if deg[u] >= 5 and deg[v] >= 5:
                deg[u] -= 1
                deg[v] -= 1
                deleted.append((u, v))
                changed = True
            else:
                kept.append((u, v))
        alive = kept
    if not deleted:
        return g, []
    return Graph.from_edges(g.n, alive), deleted


def verify_pd(g: Graph, pd_set, pairing) -> bool:
    """Cheap certificate check: domination plus pairing validity."""
    s = set(pd_set)
    if any(not (s & g.closed_nbhd(v)) for v in range(g.n)):
        return False
    try:
        check_pairing(g, s, pairing)
    except InvalidPairing:
        return False
    return True


def _solve_connected(g: Graph) -> tuple[ColoredState, list[TraceStep], list[Edge]]:
    h, deleted = preprocess_with_log(g)
    state = color(h, ())
    trace: list[TraceStep] = []
    # every step drops the weight by at least 2*153
    budget = state.weight // (2 * WEIGHTS.threshold_per_vertex) + 1
    while state.weight > 0:
        ds = find_desirable(state)
        assert ds is not None
        state = apply_extension(state, ds)
        trace.append(TraceStep(ds.rule_id, ds.members, ds.pairing, ds.xi, state.weight))
        if len(trace) > budget:
            raise CertificateError(
                f"solver exceeded its {budget}-step budget", {"state": state.dump()}
            )
    return state, trace, deleted


def solve(g: Graph) -> PDSolution:
    """Paired dominating set of size at most 10n/17 for a graph with δ >= 4.

    Components are solved independently.  ``weight_after`` in the trace is
    the weight of the whole graph, so it telescopes from ``90 n`` to 0.
    """
    check_min_degree(g)
    total = WEIGHTS.amber * g.n
    dom: list[int] = []
    pairs: list[Edge] = []
    trace: list[TraceStep] = []
    deleted: list[Edge] = []
    for ci, (sub, back) in enumerate(components(g)):
        state, steps, gone = _solve_connected(sub)
        dom.extend(back[v] for v in state.dom)
        pairs.extend(tuple(sorted((back[a], back[b]))) for a, b in state.pairing)
        deleted.extend(tuple(sorted((back[a], back[b]))) for a, b in gone)
        for st in steps:
            total -= st.xi
            trace.append(
                TraceStep(
                    st.rule_id,
                    tuple(sorted(back[v] for v in st.members)),
                    tuple(sorted(tuple(sorted((back[a], back[b]))) for a, b in st.pairing)),
                    st.xi,
                    total,
                    ci,
                )
            )

    pd_set = tuple(sorted(dom))
    pairing = tuple(sorted(pairs))
    if not verify_pd(g, pd_set, pairing):
        raise CertificateError(
            "assembled set failed verification on the input graph",
            {"pd_set": list(pd_set), "pairing": [list(p) for p in pairing]},
        )
    bound_ok = 17 * len(pd_set) <= 10 * g.n and len(pd_set) % 2 == 0
    if not bound_ok:
        raise CertificateError(
            f"|D| = {len(pd_set)} exceeds 10n/17 for n = {g.n}",
            {"pd_set": list(pd_set), "n": g.n},
        )
    return PDSolution(pd_set, pairing, tuple(trace), g.n, bound_ok, tuple(sorted(deleted)))
