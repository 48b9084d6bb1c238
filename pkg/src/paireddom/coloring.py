"""Colored graphs G_D and their potential.

A vertex mark is an int: ``AMBER`` (-1) for undominated vertices,
``CYAN`` (0) for dominated vertices with a fully dominated neighbourhood,
and ``i >= 1`` for a beige vertex with exactly ``i`` amber neighbours.
All weights are kept doubled so the 76.5-per-vertex threshold is the
integer 153.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CertificateError, InvalidPairing, ThresholdViolation
from .graph import Edge, Graph

AMBER = -1
CYAN = 0


@dataclass(frozen=True)
class WeightTable:
    amber: int = 90
    beige4plus: int = 66
    beige3: int = 62
    beige2: int = 58
    beige1: int = 54
    cyan: int = 0
    threshold_per_vertex: int = 153

    def of(self, mark: int) -> int:
        if mark == AMBER:
            return self.amber
        if mark == CYAN:
            return self.cyan
        if mark == 1:
            return self.beige1
        if mark == 2:
            return self.beige2
        if mark == 3:
            return self.beige3
        return self.beige4plus

    def threshold(self, size: int) -> int:
        return self.threshold_per_vertex * size


WEIGHTS = WeightTable()


def mark_name(mark: int) -> str:
    if mark == AMBER:
        return "A"
    if mark == CYAN:
        return "C"
    return f"B{mark}"


def _rank(mark: int) -> int:
    # Amber > Beige(i) > Beige(j<i) > Cyan
    return 1 << 30 if mark == AMBER else mark


def normalize_pairing(pairing: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in pairing))


def check_pairing(g: Graph, vertices: Iterable[int], pairing: Iterable[Sequence[int]]) -> None:
    """Raise InvalidPairing unless ``pairing`` is a perfect matching of G[vertices]."""
    want = set(vertices)
    covered: set[int] = set()
    for a, b in pairing:
        if a not in want or b not in want:
            raise InvalidPairing(f"pair ({a}, {b}) leaves the vertex set")
        if not g.has_edge(a, b):
            raise InvalidPairing(f"pair ({a}, {b}) is not an edge")
        if a in covered or b in covered:
            raise InvalidPairing(f"pair ({a}, {b}) reuses a vertex")
        covered.update((a, b))
    if covered != want:
        missing = sorted(want - covered)
        raise InvalidPairing(f"vertices {missing} are unpaired")


@dataclass(frozen=True)
class ColoredState:
    graph: Graph
    dom: tuple[int, ...]
    pairing: tuple[Edge, ...]
    mark: tuple[int, ...]
    amber_deg: tuple[int, ...]
    beige_deg: tuple[int, ...]
    weight: int

    def is_amber(self, v: int) -> bool:
        return self.mark[v] == AMBER

    def is_beige(self, v: int) -> bool:
        return self.mark[v] > 0

    @property
    def amber(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.mark) if c == AMBER)

    @property
    def beige(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.mark) if c > 0)

    @property
    def cyan(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.mark) if c == CYAN)

    def amber_nbrs(self, v: int) -> tuple[int, ...]:
        return tuple(u for u in self.graph.adj[v] if self.mark[u] == AMBER)

    def beige_nbrs(self, v: int) -> tuple[int, ...]:
        return tuple(u for u in self.graph.adj[v] if self.mark[u] > 0)

    def dump(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "dom": list(self.dom),
            "pairing": [list(p) for p in self.pairing],
            "marks": [mark_name(c) for c in self.mark],
            "weight": self.weight,
        }


def color(
    g: Graph,
    dom: Iterable[int],
    pairing: Iterable[Sequence[int]] = (),
    weights: WeightTable = WEIGHTS,
) -> ColoredState:
    d = tuple(sorted(set(dom)))
    for v in d:
        if not 0 <= v < g.n:
            raise InvalidPairing(f"vertex {v} outside 0..{g.n - 1}")
    pairs = normalize_pairing(pairing)
    check_pairing(g, d, pairs)

    dominated = [False] * g.n
    for v in d:
        dominated[v] = True
        for u in g.adj[v]:
            dominated[u] = True

    mark = [AMBER] * g.n
    for v in range(g.n):
        if dominated[v]:
            mark[v] = sum(1 for u in g.adj[v] if not dominated[u])

    amber_deg = [0] * g.n
    beige_deg = [0] * g.n
    for v in range(g.n):
        if mark[v] == AMBER:
            for u in g.adj[v]:
                if mark[u] == AMBER:
                    amber_deg[v] += 1
                else:
                    beige_deg[v] += 1
        elif mark[v] > 0:
            amber_deg[v] = mark[v]

    return ColoredState(
        graph=g,
        dom=d,
        pairing=pairs,
        mark=tuple(mark),
        amber_deg=tuple(amber_deg),
        beige_deg=tuple(beige_deg),
        weight=sum(weights.of(c) for c in mark),
    )


def weight(state: ColoredState) -> int:
    return state.weight


def extend(
    state: ColoredState,
    members: Iterable[int],
    pairing: Iterable[Sequence[int]],
    weights: WeightTable = WEIGHTS,
) -> ColoredState:
    """Colored state for D ∪ S."""
    s = tuple(sorted(set(members)))
    clash = set(s) & set(state.dom)
    if clash:
        raise InvalidPairing(f"extension overlaps D at {sorted(clash)}")
    pairs = normalize_pairing(pairing)
    check_pairing(state.graph, s, pairs)
    return color(state.graph, state.dom + s, state.pairing + pairs, weights)


def xi(
    state: ColoredState,
    members: Iterable[int],
    pairing: Iterable[Sequence[int]],
    weights: WeightTable = WEIGHTS,
) -> int:
    """Weight drop from extending D by S (doubled units)."""
    return state.weight - extend(state, members, pairing, weights).weight


@dataclass(frozen=True)
class DesirableSet:
    members: tuple[int, ...]
    pairing: tuple[Edge, ...]
    rule_id: str
    xi: int

    @property
    def size(self) -> int:
        return len(self.members)


def apply_extension(
    state: ColoredState, ds: DesirableSet, weights: WeightTable = WEIGHTS
) -> ColoredState:
    """Extend D by a desirable set, re-checking the certificate it carries."""
    new = extend(state, ds.members, ds.pairing, weights)
    drop = state.weight - new.weight
    dump = {
        "state": state.dump(),
        "members": list(ds.members),
        "pairing": [list(p) for p in ds.pairing],
        "rule": ds.rule_id,
        "claimed_xi": ds.xi,
        "measured_xi": drop,
    }
    if drop < weights.threshold(len(ds.members)):
        raise ThresholdViolation(
            f"{ds.rule_id}: weight drop {drop} below {weights.threshold(len(ds.members))}",
            dump,
        )
    if drop != ds.xi:
        raise CertificateError(
            f"{ds.rule_id}: claimed drop {ds.xi} but measured {drop}", dump
        )
    for v, (old_c, new_c) in enumerate(zip(state.mark, new.mark)):
        if _rank(new_c) > _rank(old_c):
            raise CertificateError(
                f"vertex {v} moved up from {mark_name(old_c)} to {mark_name(new_c)}",
                dump,
            )
    return new
