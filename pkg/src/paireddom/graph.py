"""Immutable simple graphs, text formats, generators and components."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InfeasibleParams, MalformedInput, SelfLoop, VertexOutOfRange

Edge = tuple[int, int]

GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.  Use
    :meth:`from_edges` rather than the raw constructor; it validates and
    symmetrises the input.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    _nbr_sets: tuple[frozenset[int], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        object.__setattr__(self, "_nbr_sets", tuple(frozenset(a) for a in self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise MalformedInput(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def nbr_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def closed_nbhd(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v] | {v}

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        return Graph.from_edges(self.n, (e for e in self.edges() if e not in drop))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the map back."""
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u in keep
            for v in self.adj[u]
            if u < v and v in index
        ]
        return Graph.from_edges(len(keep), edges), keep

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def disjoint_union(*graphs: Graph) -> Graph:
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


# --------------------------------------------------------------------------
# graph6


def _g6_size_bytes(n: int) -> list[int]:
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]


def emit_graph6(g: Graph) -> str:
    out = _g6_size_bytes(g.n)
    bits = [
        1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)
    ]
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise MalformedInput("empty graph6 string")
    data = [ord(c) for c in s]
    if any(c < 63 or c > 126 for c in data):
        raise MalformedInput("graph6 characters must lie in 63..126")
    vals = [c - 63 for c in data]

    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise MalformedInput("truncated 8-byte graph6 header")
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise MalformedInput("truncated 4-byte graph6 header")
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v

    nbits = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (nbits + 5) // 6:
        raise MalformedInput(
            f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}"
        )
    bits: list[int] = []
    for v in body:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise MalformedInput("nonzero graph6 padding bits")

    edges: list[Edge] = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


# --------------------------------------------------------------------------
# edge lists


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; ``#`` starts a comment."""
    n: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise MalformedInput(f"line {lineno}: expected 'n <count>' header")
            try:
                n = int(parts[1])
            except ValueError:
                raise MalformedInput(f"line {lineno}: bad vertex count {parts[1]!r}")
            if n < 0:
                raise MalformedInput(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 2:
            raise MalformedInput(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedInput(f"line {lineno}: non-integer vertex id")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"line {lineno}: edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    if n is None:
        raise MalformedInput("missing 'n <count>' header")
    return Graph.from_edges(n, edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse either format; ``fmt=None`` sniffs for the edge-list header."""
    if fmt is None:
        first = next(
            (ln.split("#", 1)[0].strip() for ln in text.splitlines()
             if ln.split("#", 1)[0].strip()),
            "",
        )
        fmt = "edges" if first.startswith("n ") or first == "n" else "graph6"
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise MalformedInput(f"expected one graph6 line, got {len(lines)}")
        return parse_graph6(lines[0])
    if fmt == "edges":
        return parse_edge_list(text)
    raise MalformedInput(f"unknown format {fmt!r}")


# --------------------------------------------------------------------------
# generators

# x1..x4 -> 0..3, y1..y4 -> 4..7
H8_EDGES: tuple[Edge, ...] = (
    (0, 1), (1, 2), (2, 3), (3, 0),
    (4, 5), (5, 6), (6, 7), (7, 4),
    (0, 4), (1, 4),
    (1, 5), (2, 5),
    (2, 6), (3, 6),
    (3, 7), (0, 7),
)


def h8() -> Graph:
    return Graph.from_edges(8, H8_EDGES)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def complete(k: int) -> Graph:
    if k < 0:
        raise InfeasibleParams("complete graph order must be nonnegative")
    return Graph.from_edges(k, ((i, j) for j in range(k) for i in range(j)))


def random_regular(n: int, d: int, seed: int, max_tries: int = 100_000) -> Graph:
    """Uniform d-regular graph from the pairing model, rejecting non-simple draws."""
    if n < 0 or d < 0 or (n > 0 and d >= n):
        raise InfeasibleParams(f"no {d}-regular graph on {n} vertices")
    if (n * d) % 2:
        raise InfeasibleParams(f"n*d = {n * d} is odd")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        seen: set[Edge] = set()
        for k in range(0, len(points), 2):
            u, v = points[k], points[k + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in seen:
                break
            seen.add(e)
        else:
            return Graph.from_edges(n, seen)
    raise InfeasibleParams(f"pairing model gave no simple graph in {max_tries} tries")


def random_mindeg(n: int, delta: int, p: float, seed: int) -> Graph:
    """G(n, p) followed by topping every vertex up to degree ``delta``.

    Deficient vertices are processed in id order and joined to their
    lowest-id non-neighbours.
    """
    if delta < 0 or (n > 0 and delta >= n):
        raise InfeasibleParams(f"minimum degree {delta} impossible on {n} vertices")
    if not 0.0 <= p <= 1.0:
        raise InfeasibleParams(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for j in range(n):
        for i in range(j):
            if rng.random() < p:
                nbrs[i].add(j)
                nbrs[j].add(i)
    for v in range(n):
        u = 0
        while len(nbrs[v]) < delta:
            if u != v and u not in nbrs[v]:
                nbrs[v].add(u)
                nbrs[u].add(v)
            u += 1
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


GENERATOR_KINDS = ("h8", "petersen", "complete", "random_regular", "random_mindeg")


def generate(
    kind: str,
    *,
    n: int | None = None,
    d: int | None = None,
    k: int | None = None,
    p: float | None = None,
    seed: int | None = None,
) -> Graph:
    """Dispatch to a named generator.

    ``complete`` takes ``k`` (or ``n``); ``random_regular`` takes ``n, d``;
    ``random_mindeg`` takes ``n, d`` (the minimum degree) and ``p``.
    Random kinds default to seed 0.
    """

    def need(name: str, value):
        if value is None:
            raise InfeasibleParams(f"{kind} requires parameter {name!r}")
        return value

    if kind == "h8":
        return h8()
    if kind == "petersen":
        return petersen()
    if kind == "complete":
        return complete(need("k", k if k is not None else n))
    seed = 0 if seed is None else seed
    if kind == "random_regular":
        return random_regular(need("n", n), need("d", d), seed)
    if kind == "random_mindeg":
        return random_mindeg(need("n", n), need("d", d), need("p", p), seed)
    raise InfeasibleParams(f"unknown generator kind {kind!r}")


# --------------------------------------------------------------------------


def components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Connected components, each relabelled, with the map back to ``g``'s ids.

    Components are listed in order of their smallest vertex.
    """
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        out.append(g.induced(comp))
    return out
