"""Constructive desirable-set search over a colored graph.

``find_desirable`` evaluates twelve rules in fixed priority order and
returns the first set whose conditions hold.  Each rule only needs to be
correct under the structure left behind when every earlier rule failed,
so the order is load-bearing.  Ties are always broken by smallest id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional

from .coloring import AMBER, WEIGHTS, ColoredState, DesirableSet, WeightTable, xi
from .errors import ProofGap, ThresholdViolation
from .graph import Edge

RULE_IDS = tuple(f"R{i}" for i in range(1, 13))


def boundary(state: ColoredState, t: Iterable[int]) -> tuple[int, ...]:
    """Amber vertices outside ``t`` with an amber neighbour in ``t``."""
    inside = set(t)
    g, mark = state.graph, state.mark
    out = {
        u
        for v in inside
        for u in g.adj[v]
        if mark[u] == AMBER and u not in inside
    }
    return tuple(sorted(out))


@dataclass(frozen=True)
class AmberComponent:
    """Component of G[A].  ``order`` walks the path/cycle for those tags."""

    tag: str  # "P1", "P2", "Path", "Cycle", "Other"
    order: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class ResidualComponent:
    tag: str  # "Type1", "Type2", "Mixed", "Other"
    amber: tuple[int, ...]
    beige: tuple[int, ...]


@dataclass(frozen=True)
class AmberComponents:
    amber: tuple[AmberComponent, ...]
    residual: tuple[ResidualComponent, ...]
    of_vertex: dict[int, AmberComponent] = field(repr=False, compare=False)


def _walk_order(adj: dict[int, list[int]], comp: list[int]) -> tuple[str, tuple[int, ...]]:
    k = len(comp)
    if k == 1:
        return "P1", (comp[0],)
    degs = [len(adj[v]) for v in comp]
    if max(degs) > 2:
        return "Other", tuple(sorted(comp))
    if k == 2:
        return "P2", tuple(sorted(comp))
    ends = sorted(v for v in comp if len(adj[v]) == 1)
    if ends:
        start, tag = ends[0], "Path"
        nxt = adj[start][0]
    else:
        start, tag = min(comp), "Cycle"
        nxt = min(adj[start])
    order = [start]
    prev, cur = start, nxt
    while cur != start and len(order) < k:
        order.append(cur)
        step = [u for u in adj[cur] if u != prev]
        if not step:
            break
        prev, cur = cur, step[0]
    return tag, tuple(order)


def amber_components(state: ColoredState) -> AmberComponents:
    g, mark = state.graph, state.mark
    amber = [v for v in range(g.n) if mark[v] == AMBER]
    adj = {v: [u for u in g.adj[v] if mark[u] == AMBER] for v in amber}

    seen: set[int] = set()
    comps: list[AmberComponent] = []
    of_vertex: dict[int, AmberComponent] = {}
    for s in amber:
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        tag, order = _walk_order(adj, comp)
        c = AmberComponent(tag, order)
        comps.append(c)
        for v in comp:
            of_vertex[v] = c

    # residual graph on A ∪ B keeps only edges with an amber endpoint
    seen = set()
    residual: list[ResidualComponent] = []
    for s in amber:
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        a_part, b_part = [], []
        while stack:
            v = stack.pop()
            if mark[v] == AMBER:
                a_part.append(v)
                nbrs = g.adj[v]
            else:
                b_part.append(v)
                nbrs = [u for u in g.adj[v] if mark[u] == AMBER]
            for u in nbrs:
                if u not in seen and mark[u] != 0:
                    seen.add(u)
                    stack.append(u)
        adeg = {len(adj[v]) for v in a_part}
        if adeg == {0}:
            tag = "Type1"
        elif adeg == {1}:
            tag = "Type2"
        elif adeg == {0, 1}:
            tag = "Mixed"
        else:
            tag = "Other"
        residual.append(ResidualComponent(tag, tuple(sorted(a_part)), tuple(sorted(b_part))))

    return AmberComponents(tuple(comps), tuple(residual), of_vertex)


Candidate = tuple[tuple[int, ...], tuple[Edge, ...]]


class _Analysis:
    """Lazily computed quantities shared by the rules for one state."""

    def __init__(self, state: ColoredState):
        self.state = state
        self.g = state.graph
        self.mark = state.mark
        self.adeg = state.amber_deg

    @cached_property
    def amber(self) -> list[int]:
        return [v for v in range(self.g.n) if self.mark[v] == AMBER]

    @cached_property
    def beige(self) -> list[int]:
        return [v for v in range(self.g.n) if self.mark[v] > 0]

    def amber_nbrs(self, v: int) -> list[int]:
        return [u for u in self.g.adj[v] if self.mark[u] == AMBER]

    def beige_nbrs(self, v: int) -> list[int]:
        return [u for u in self.g.adj[v] if self.mark[u] > 0]

    @cached_property
    def max_amber(self) -> tuple[int, int]:
        """(Δ_A(A), smallest amber vertex attaining it)."""
        best = max(self.amber, key=lambda v: (self.adeg[v], -v), default=None)
        return (-1, -1) if best is None else (self.adeg[best], best)

    @cached_property
    def max_beige(self) -> tuple[int, int]:
        best = max(self.beige, key=lambda v: (self.adeg[v], -v), default=None)
        return (-1, -1) if best is None else (self.adeg[best], best)

    def best_partner(self, center: int) -> tuple[int, int]:
        """Amber neighbour of ``center`` with most neighbours in the boundary.

        Returns ``(partner, its boundary degree)``.
        """
        nbrs = self.amber_nbrs(center)
        bd = set(boundary(self.state, nbrs if self.mark[center] != AMBER else nbrs + [center]))
        scored = [(sum(1 for x in self.g.adj[u] if x in bd), u) for u in nbrs]
        top = max(s for s, _ in scored)
        return min(u for s, u in scored if s == top), top

    @cached_property
    def comps(self) -> AmberComponents:
        return amber_components(self.state)

    def comp_tag(self, v: int) -> str:
        return self.comps.of_vertex[v].tag


def _pair(a: int, b: int) -> Edge:
    return (min(a, b), max(a, b))


def _cand(pairs: list[tuple[int, int]]) -> Candidate:
    members = tuple(sorted(x for p in pairs for x in p))
    return members, tuple(sorted(_pair(*p) for p in pairs))


# --- rules ---------------------------------------------------------------
# Each returns None when its condition does not hold.


def _r1(a: _Analysis) -> Optional[Candidate]:
    deg, v = a.max_amber
    if deg < 5:
        return None
    z, dz = a.best_partner(v)
    if dz >= 1:
        return _cand([(v, z)])
    closed_z = set(a.amber_nbrs(z)) | {z}
    rest = [u for u in a.amber_nbrs(v) if u not in closed_z]
    if not rest:
        raise ProofGap(
            f"R1: every amber neighbour of {v} lies in N_A[{z}]; input not edge-minimal?",
            {"state": a.state.dump(), "rule": "R1"},
        )
    return _cand([(v, rest[0])])


def _amber_pair_rule(level: int) -> Callable[[_Analysis], Optional[Candidate]]:
    def rule(a: _Analysis) -> Optional[Candidate]:
        deg, v = a.max_amber
        if deg != level:
            return None
        vp, _ = a.best_partner(v)
        return _cand([(v, vp)])

    return rule


def _beige_pair_rule(test: Callable[[int], bool]) -> Callable[[_Analysis], Optional[Candidate]]:
    def rule(a: _Analysis) -> Optional[Candidate]:
        deg, w = a.max_beige
        if deg < 0 or not test(deg):
            return None
        wp, _ = a.best_partner(w)
        return _cand([(w, wp)])

    return rule


_r2 = _amber_pair_rule(4)
_r3 = _beige_pair_rule(lambda d: d >= 5)
_r4 = _amber_pair_rule(3)
_r5 = _beige_pair_rule(lambda d: d == 4)
_r8 = _beige_pair_rule(lambda d: d == 3)


def _r6(a: _Analysis) -> Optional[Candidate]:
    for c in a.comps.amber:
        if c.tag == "Path":
            p = c.order
            if c.k == 3:
                u = a.beige_nbrs(p[1])[0]
                return _cand([(p[1], u)])
            return _cand([(p[1], p[2])])
    return None


def _cycle_attachment(a: _Analysis, on_cycle: set[int]) -> Optional[tuple[int, int, int]]:
    """First beige z touching the cycle with an amber neighbour off it.

    Returns ``(z, cycle vertex adjacent to z, amber z' off the cycle)``.
    """
    for z in a.beige:
        amb = a.amber_nbrs(z)
        touch = [u for u in amb if u in on_cycle]
        off = [u for u in amb if u not in on_cycle]
        if touch and off:
            return z, touch[0], off[0]
    return None


def _rotate(order: tuple[int, ...], head: int, index: int) -> tuple[int, ...]:
    """Rotate a cyclic order so ``head`` sits at 0-based position ``index``."""
    k = len(order)
    shift = (order.index(head) - index) % k
    return order[shift:] + order[:shift]


def _r7(a: _Analysis) -> Optional[Candidate]:
    for c in a.comps.amber:
        if c.tag != "Cycle":
            continue
        k = c.k
        v = c.order  # v[0] is v_1
        if k >= 7:
            return _cand([(v[1], v[2]), (v[5], v[6])])
        if k in (5, 6):
            hit = _cycle_attachment(a, set(v))
            if hit is not None:
                z, at, zp = hit
                v = _rotate(v, at, 0)
                if k == 6:
                    return _cand([(z, v[0]), (v[3], v[4])])
                return _cand([(z, zp), (v[2], v[3])])
            return _cand([(v[0], v[1]), (v[3], v[4])])
        if k == 4:
            return _cand([(v[0], v[1])])
        z = a.beige_nbrs(v[0])[0]
        return _cand([(v[0], z)])
    return None


def _r9(a: _Analysis) -> Optional[Candidate]:
    for w in a.beige:
        if a.adeg[w] != 2:
            continue
        w1, w2 = a.amber_nbrs(w)
        tags = (a.comp_tag(w1), a.comp_tag(w2))
        if tags == ("P1", "P2"):
            return _cand([(w, w2)])
        if tags == ("P2", "P1"):
            return _cand([(w, w1)])
    return None


def _r10(a: _Analysis) -> Optional[Candidate]:
    b1 = [z for z in a.beige if a.adeg[z] == 1]
    if not b1:
        return None
    for z in b1:
        (zp,) = a.amber_nbrs(z)
        if a.comp_tag(zp) != "P1":
            continue
        b2 = [u for u in a.beige_nbrs(zp) if a.adeg[u] != 1]
        if not b2:
            return _cand([(z, zp)])
        return _cand([(zp, b2[0])])
    z = b1[0]
    (anchor,) = a.amber_nbrs(z)
    pair = a.comps.of_vertex[anchor]
    if pair.tag != "P2":
        raise ProofGap(
            f"R10: amber neighbour {anchor} of B1 vertex {z} is in a {pair.tag} component",
            {"state": a.state.dump(), "rule": "R10"},
        )
    inside = set(pair.order)
    for zi in pair.order:
        for zpp in a.beige_nbrs(zi):
            if any(u not in inside for u in a.amber_nbrs(zpp)):
                return _cand([(zpp, zi)])
    return _cand([tuple(pair.order)])


def _alternating_cycle(a: _Analysis, comp: ResidualComponent) -> list[tuple[int, int]]:
    """Closed amber/beige walk v1 u1 v2 u2 ... vk uk (v1) inside a type-1 component.

    Walks from the smallest amber vertex, leaving each amber vertex via its
    smallest beige neighbour other than the one just used, and cuts the
    walk at the first repeated amber vertex.  Returns ``[(v_i, u_i), ...]``.
    """
    start = comp.amber[0]
    walk: list[tuple[int, int]] = []
    pos = {start: 0}
    cur, came = start, -1
    while True:
        u = next(b for b in a.beige_nbrs(cur) if b != came)
        (nxt,) = [x for x in a.amber_nbrs(u) if x != cur]
        walk.append((cur, u))
        if nxt in pos:
            return walk[pos[nxt]:]
        pos[nxt] = len(walk)
        cur, came = nxt, u


def _r11(a: _Analysis) -> Optional[Candidate]:
    comp = next((c for c in a.comps.residual if c.tag == "Type1"), None)
    if comp is None:
        return None
    cyc = _alternating_cycle(a, comp)
    k = len(cyc)
    if k % 2 == 0:
        return _cand([cyc[i] for i in range(0, k, 2)])
    on_cycle = {v for v, _ in cyc}
    hit = _cycle_attachment(a, on_cycle)
    if hit is not None:
        z, at, zp = hit
        idx = [v for v, _ in cyc].index(at)
        # rotate so the attachment vertex becomes v_k
        shift = (idx + 1) % k
        cyc = cyc[shift:] + cyc[:shift]
        return _cand([(z, zp)] + [cyc[i] for i in range(0, k - 1, 2)])
    return _cand([cyc[i] for i in range(0, k, 2)])


def _r12(a: _Analysis) -> Optional[Candidate]:
    comp = next((c for c in a.comps.residual if c.tag == "Type2"), None)
    if comp is None:
        return None
    pairs = []
    for v in comp.amber:
        (u,) = a.amber_nbrs(v)
        if v < u:
            pairs.append((v, u))
    return _cand(pairs)


RULES: tuple[tuple[str, Callable[[_Analysis], Optional[Candidate]]], ...] = (
    ("R1", _r1),
    ("R2", _r2),
    ("R3", _r3),
    ("R4", _r4),
    ("R5", _r5),
    ("R6", _r6),
    ("R7", _r7),
    ("R8", _r8),
    ("R9", _r9),
    ("R10", _r10),
    ("R11", _r11),
    ("R12", _r12),
)


def rule_conditions(state: ColoredState) -> dict[str, bool]:
    """Truth value of every rule's firing condition, evaluated independently."""
    a = _Analysis(state)
    da, _ = a.max_amber
    db, _ = a.max_beige
    comps = a.comps

    def r9() -> bool:
        for w in a.beige:
            if a.adeg[w] == 2:
                tags = sorted(a.comp_tag(u) for u in a.amber_nbrs(w))
                if tags == ["P1", "P2"]:
                    return True
        return False

    return {
        "R1": da >= 5,
        "R2": da == 4,
        "R3": db >= 5,
        "R4": da == 3,
        "R5": db == 4,
        "R6": any(c.tag == "Path" for c in comps.amber),
        "R7": any(c.tag == "Cycle" for c in comps.amber),
        "R8": db == 3,
        "R9": r9(),
        "R10": any(a.adeg[z] == 1 for z in a.beige),
        "R11": any(c.tag == "Type1" for c in comps.residual),
        "R12": any(c.tag == "Type2" for c in comps.residual),
    }


def find_desirable(
    state: ColoredState, weights: WeightTable = WEIGHTS
) -> Optional[DesirableSet]:
    """First rule (in priority order) that applies, with its measured drop."""
    if state.weight == 0:
        return None
    a = _Analysis(state)
    for rule_id, rule in RULES:
        if rule_id == "R11":
            mixed = [c for c in a.comps.residual if c.tag in ("Mixed", "Other")]
            if mixed:
                raise ProofGap(
                    f"residual component of type {mixed[0].tag} survived R1-R10",
                    {"state": state.dump(), "component": list(mixed[0].amber)},
                )
        try:
            cand = rule(a)
        except (IndexError, ValueError, StopIteration) as exc:
            # a vertex the rule's accounting relies on is missing
            raise ProofGap(
                f"{rule_id}: structural precondition failed ({exc!r})",
                {"state": state.dump(), "rule": rule_id},
            ) from exc
        if cand is None:
            continue
        members, pairing = cand
        drop = xi(state, members, pairing, weights)
        if drop < weights.threshold(len(members)):
            raise ThresholdViolation(
                f"{rule_id}: weight drop {drop} below {weights.threshold(len(members))}",
                {
                    "state": state.dump(),
                    "rule": rule_id,
                    "members": list(members),
                    "pairing": [list(p) for p in pairing],
                    "measured_xi": drop,
                },
            )
        return DesirableSet(members, pairing, rule_id, drop)
    raise ProofGap("positive weight but no rule applies", {"state": state.dump()})
