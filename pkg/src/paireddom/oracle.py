"""Exact paired domination at desk scale.

Everything here is deliberately independent of the colored-graph
machinery so it can serve as ground truth for the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import NoPDSet, TooLarge
from .graph import Edge, Graph

DEFAULT_LIMIT = 16


@dataclass(frozen=True)
class ExactResult:
    gamma_pr: int
    witness: tuple[int, ...]
    pairing: tuple[Edge, ...]
    nodes_explored: int


def has_perfect_matching(
    g: Graph, vertices: Iterable[int]
) -> tuple[bool, Optional[tuple[Edge, ...]]]:
    """Backtracking perfect-matching test on G[vertices].

    Always matches the lowest unmatched vertex first, so the cost is
    exponential only in ``|vertices|``.
    """
    remaining = set(vertices)
    if len(remaining) % 2:
        return False, None
    chosen: list[Edge] = []

    def rec() -> bool:
        if not remaining:
            return True
        v = min(remaining)
        remaining.discard(v)
        for u in g.adj[v]:
            if u in remaining:
                remaining.discard(u)
                chosen.append((v, u))
                if rec():
                    return True
                chosen.pop()
                remaining.add(u)
        remaining.add(v)
        return False

    if rec():
        return True, tuple(sorted(chosen))
    return False, None


def is_dominating(g: Graph, vertices: Iterable[int]) -> bool:
    s = set(vertices)
    return all(v in s or not s.isdisjoint(g.adj[v]) for v in range(g.n))


def is_pd_set(
    g: Graph,
    vertices: Iterable[int],
    pairing: Optional[Sequence[Sequence[int]]] = None,
) -> bool:
    s = set(vertices)
    if any(not 0 <= v < g.n for v in s):
        return False
    if not is_dominating(g, s):
        return False
    if pairing is None:
        return has_perfect_matching(g, s)[0]
    seen: set[int] = set()
    for a, b in pairing:
        if a not in s or b not in s or a == b or not g.has_edge(a, b):
            return False
        if a in seen or b in seen:
            return False
        seen.update((a, b))
    return seen == s


def exact_gamma_pr(g: Graph, limit: int = DEFAULT_LIMIT) -> ExactResult:
    """Minimum paired dominating set by size-ordered subset enumeration.

    For each even ``k`` the k-subsets are enumerated lexicographically.  A
    prefix is abandoned when the vertices it can still add cannot cover
    the undominated remainder (each vertex covers at most Δ+1), and the
    matching test only runs on dominating sets.
    """
    if g.n > limit:
        raise TooLarge(f"n = {g.n} exceeds oracle limit {limit}")
    if any(g.degree(v) == 0 for v in range(g.n)):
        raise NoPDSet("graph has an isolated vertex")
    if g.n == 0:
        raise NoPDSet("paired domination is undefined on the empty graph")

    n = g.n
    full = (1 << n) - 1
    closed = [(1 << v) | sum(1 << u for u in g.adj[v]) for v in range(n)]
    cover = g.max_degree() + 1
    nodes = 0

    for k in range(2, n + 1, 2):
        chosen: list[int] = []

        def rec(start: int, covered: int) -> Optional[tuple[int, ...]]:
            nonlocal nodes
            nodes += 1
            left = k - len(chosen)
            if left == 0:
                if covered == full:
                    ok, _ = has_perfect_matching(g, chosen)
                    if ok:
                        return tuple(chosen)
                return None
            if bin(full & ~covered).count("1") > left * cover:
                return None
            for v in range(start, n - left + 1):
                chosen.append(v)
                hit = rec(v + 1, covered | closed[v])
                chosen.pop()
                if hit is not None:
                    return hit
            return None

        found = rec(0, 0)
        if found is not None:
            _, pairing = has_perfect_matching(g, found)
            return ExactResult(k, found, pairing, nodes)
    # unreachable for graphs without isolated vertices: a maximal matching's vertices work
    raise NoPDSet("no paired dominating set found")
