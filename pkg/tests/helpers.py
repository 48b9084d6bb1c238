"""Shared builders for tests: labelled fixtures and hand-made colored states."""

from __future__ import annotations

import random

from paireddom.coloring import color
from paireddom.graph import Graph, random_mindeg, random_regular

X1, X2, X3, X4, Y1, Y2, Y3, Y4 = range(8)


def random_matching_set(g: Graph, rng: random.Random, max_pairs: int | None = None):
    """Random D with a perfect matching: disjoint random edges."""
    edges = g.edges()
    rng.shuffle(edges)
    used: set[int] = set()
    pairs = []
    limit = max_pairs if max_pairs is not None else rng.randint(0, max(1, g.n // 2))
    for u, v in edges:
        if len(pairs) >= limit:
            break
        if u not in used and v not in used:
            used.update((u, v))
            pairs.append((u, v))
    return sorted(used), pairs


def random_delta4(rng: random.Random, n_lo: int = 10, n_hi: int = 60) -> Graph:
    n = rng.randint(n_lo, n_hi)
    seed = rng.getrandbits(32)
    if rng.random() < 0.5:
        return random_regular(n, 4, seed)
    return random_mindeg(n, 4, rng.choice((0.0, 0.05, 0.1)), seed)


def literal_marks(g: Graph, dom, pairing):
    """Colour classes read straight from S-adjacency: 'A', 'C' or ('B', amber count)."""
    s = set(dom)
    dominated = {v for v in range(g.n) if v in s or s & set(g.adj[v])}
    out = []
    for v in range(g.n):
        has_s_nbr = bool(s & set(g.adj[v]))
        undominated_nbr = [u for u in g.adj[v] if u not in dominated]
        amber = not has_s_nbr
        beige = has_s_nbr and bool(undominated_nbr)
        cyan = (v in s or has_s_nbr) and not undominated_nbr
        assert amber + beige + cyan == 1, (v, amber, beige, cyan)
        if amber:
            out.append("A")
        elif cyan:
            out.append("C")
        else:
            out.append(("B", len(undominated_nbr)))
    return out


class Builder:
    """Incrementally name vertices and edges for a hand-made state."""

    def __init__(self):
        self.names: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []

    def v(self, name: str) -> int:
        if name not in self.names:
            self.names[name] = len(self.names)
        return self.names[name]

    def e(self, a: str, b: str) -> None:
        self.edges.append((self.v(a), self.v(b)))

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.names), self.edges)


def _attach_dom(b: Builder, beige: list[str]) -> None:
    """Dominate every listed vertex by a cyan pair d0-d1."""
    b.e("d0", "d1")
    for x in beige:
        b.e("d0", x)
        b.e("d1", x)


def type2_state():
    """Amber pair a0-a1 with three shared B2 neighbours; R12 territory."""
    b = Builder()
    b.e("a0", "a1")
    beige = ["b0", "b1", "b2"]
    for x in beige:
        b.e("a0", x)
        b.e("a1", x)
    _attach_dom(b, beige)
    g = b.graph()
    return color(g, [b.names["d0"], b.names["d1"]], [(b.names["d0"], b.names["d1"])]), b.names


def type1_even_state():
    """Two isolated amber vertices sharing four B2 neighbours (cycle length k=2)."""
    b = Builder()
    b.v("a0")
    b.v("a1")
    beige = [f"b{i}" for i in range(4)]
    for x in beige:
        b.e("a0", x)
        b.e("a1", x)
    _attach_dom(b, beige)
    g = b.graph()
    return color(g, [b.names["d0"], b.names["d1"]], [(b.names["d0"], b.names["d1"])]), b.names


def type1_odd_state(k: int = 3, attached: bool = False):
    """k isolated amber vertices joined cyclically by doubled B2 vertices.

    With ``attached`` an extra amber ``zp`` hangs off ``a0`` through the
    beige vertex ``z``, with its own B2 links to a fresh amber ``y``.
    """
    b = Builder()
    for i in range(k):
        b.v(f"a{i}")
    beige = []
    for i in range(k):
        x = f"b{i}"
        b.e(f"a{i}", x)
        b.e(f"a{(i + 1) % k}", x)
        beige.append(x)
    for i in range(k):
        x = f"c{i}"
        b.e(f"a{i}", x)
        b.e(f"a{(i + 1) % k}", x)
        beige.append(x)
    if attached:
        b.e("a0", "z")
        b.e("zp", "z")
        beige.append("z")
        for i in range(4):
            x = f"q{i}"
            b.e("zp", x)
            b.e("y", x)
            beige.append(x)
    _attach_dom(b, beige)
    g = b.graph()
    return color(g, [b.names["d0"], b.names["d1"]], [(b.names["d0"], b.names["d1"])]), b.names


def amber_cycle_state(k: int, attached: bool = False):
    """Amber k-cycle a0..a(k-1); b_i is a B2 vertex on a_i and a_(i+1).

    With ``attached``, beige ``z`` joins a0 to an isolated amber ``zp`` whose
    other beige neighbours are B1.
    """
    b = Builder()
    for i in range(k):
        b.e(f"a{i}", f"a{(i + 1) % k}")
    beige = []
    for i in range(k):
        x = f"b{i}"
        b.e(f"a{i}", x)
        b.e(f"a{(i + 1) % k}", x)
        beige.append(x)
    if attached:
        b.e("a0", "z")
        b.e("zp", "z")
        beige.append("z")
        for i in range(3):
            b.e("zp", f"q{i}")
            beige.append(f"q{i}")
    _attach_dom(b, beige)
    g = b.graph()
    return color(g, [b.names["d0"], b.names["d1"]], [(b.names["d0"], b.names["d1"])]), b.names
