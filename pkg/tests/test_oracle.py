import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paireddom.errors import NoPDSet, TooLarge
from paireddom.graph import Graph, complete, h8, petersen, random_mindeg, random_regular
from paireddom.oracle import exact_gamma_pr, has_perfect_matching, is_dominating, is_pd_set
from helpers import X1, X2, X3, X4, Y1, Y2, Y3, Y4


def nx_gamma_pr(g: Graph) -> int:
    """Independent brute force: domination check and maximum matching from networkx."""
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(g.edges())
    for k in range(2, g.n + 1, 2):
        for cand in itertools.combinations(range(g.n), k):
            if not nx.is_dominating_set(ref, cand):
                continue
            m = nx.max_weight_matching(ref.subgraph(cand), maxcardinality=True)
            if 2 * len(m) == k:
                return k
    raise AssertionError("no PD-set")


class TestMatching:
    def test_cycle(self):
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        ok, m = has_perfect_matching(c6, range(6))
        assert ok and len(m) == 3
        assert not has_perfect_matching(c6, [0, 2])[0]
        assert not has_perfect_matching(c6, [0, 1, 2])[0]

    def test_empty(self):
        assert has_perfect_matching(h8(), []) == (True, ())

    def test_star_has_none(self):
        star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert not has_perfect_matching(star, [0, 1, 2, 3])[0]


class TestIsPdSet:
    def test_h8_examples(self):
        g = h8()
        assert is_pd_set(g, [X1, X3, Y1, Y3], [(X1, Y1), (X3, Y3)])
        assert is_pd_set(g, [X2, X4, Y2, Y4])
        # dominating, but x1 and x3 are not adjacent
        assert not is_pd_set(g, [X1, X3, Y2, Y4], [(X1, X3), (Y2, Y4)])
        # two adjacent vertices never dominate
        assert not is_pd_set(g, [X1, X2])

    def test_pairing_must_cover(self):
        g = complete(5)
        assert is_pd_set(g, [0, 1], [(0, 1)])
        assert not is_pd_set(g, [0, 1, 2, 3], [(0, 1)])
        assert not is_pd_set(g, [0, 1], [(0, 0)])
        assert not is_pd_set(g, [0, 9])

    def test_dominating(self):
        assert is_dominating(complete(5), [3])
        assert not is_dominating(h8(), [X1])


class TestExact:
    def test_anchors(self):
        assert exact_gamma_pr(complete(5)).gamma_pr == 2
        assert exact_gamma_pr(h8()).gamma_pr == 4
        assert exact_gamma_pr(petersen()).gamma_pr == 6

    def test_witness_is_valid(self):
        res = exact_gamma_pr(petersen())
        assert is_pd_set(petersen(), res.witness, res.pairing)
        assert res.nodes_explored > 0

    def test_limit(self):
        with pytest.raises(TooLarge):
            exact_gamma_pr(random_regular(18, 4, 0))
        assert exact_gamma_pr(random_regular(18, 4, 0), limit=18).gamma_pr % 2 == 0

    def test_no_pd_set(self):
        with pytest.raises(NoPDSet):
            exact_gamma_pr(Graph.from_edges(3, [(0, 1)]))
        with pytest.raises(NoPDSet):
            exact_gamma_pr(Graph.from_edges(0, []))

    def test_path_values(self):
        # gamma_pr(P_n) = 2 * ceil(n / 4)
        for n in range(2, 12):
            p = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
            assert exact_gamma_pr(p).gamma_pr == 2 * -(-n // 4)

    @pytest.mark.parametrize("seed", range(30))
    def test_against_networkx(self, seed):
        rng = random.Random(seed)
        n = rng.randint(5, 10)
        g = random_mindeg(n, rng.randint(1, 3), rng.choice([0.1, 0.3, 0.5]), seed)
        assert exact_gamma_pr(g).gamma_pr == nx_gamma_pr(g)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(6, 12), st.integers(0, 10**6))
    def test_spanning_monotone(self, n, seed):
        g = random_mindeg(n, 2, 0.4, seed)
        rng = random.Random(seed)
        edges = g.edges()
        drop = rng.choice(edges)
        h = Graph.from_edges(n, [e for e in edges if e != drop])
        if h.min_degree() == 0:
            return
        assert exact_gamma_pr(h).gamma_pr >= exact_gamma_pr(g).gamma_pr
