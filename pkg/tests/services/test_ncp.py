import unittest

import networkx as nx
import numpy as np

from src.conf.constants import EMPTY_GRAPH, NCP_SCOPE_LARGEST
from src.conf.errors import EmptyGraphError
from src.graph.core import VertexSet, build_from_edges
from src.schemas.metrics import NcpBin, NcpConfig, NcpCurve
from src.services.conductance import conductance
from src.services.generators import planted_community, watts_strogatz
from src.services.ncp import ncp_dip, ncp_heuristic, personalized_ranking, size_bins
from src.services.oracles import exhaustive_min_conductance
from tests.conftest import two_cliques_bridged


class TestSizeBins(unittest.TestCase):
    def test_small_ratio_gives_singletons(self):
        self.assertEqual([(i, i) for i in range(1, 6)], size_bins(5, 1.1))

    def test_widening_bins(self):
        self.assertEqual(
            [(1, 1), (2, 3), (4, 6), (7, 10), (11, 16), (17, 25), (26, 30)],
            size_bins(30, 1.5),
        )

    def test_empty(self):
        self.assertEqual([], size_bins(0, 1.1))


class TestPersonalizedRanking(unittest.TestCase):
    def test_mass_stays_near_seed(self):
        g = two_cliques_bridged()
        support, score = personalized_ranking(g, 0, 0.1, 1e-4)
        self.assertIn(0, support.tolist())
        self.assertLessEqual(score.sum(), 1.0 + 1e-9)
        by_vertex = dict(zip(support.tolist(), score.tolist()))
        self.assertGreater(by_vertex[1], by_vertex.get(9, 0.0))


class TestNcpHeuristic(unittest.TestCase):
    def test_bridged_cliques_half(self):
        curve = ncp_heuristic(two_cliques_bridged(), NcpConfig(seed_count=4))
        self.assertEqual([1, 2, 3, 4, 5], [b.lo for b in curve.bins])
        half = curve.bins[-1]
        self.assertAlmostEqual(1 / 21, half.conductance)
        self.assertEqual(5, half.witness_size)
        self.assertFalse(curve.disconnected)

    def test_disconnected_components_are_free(self):
        g = build_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        curve = ncp_heuristic(g, NcpConfig(seed_count=2))
        self.assertTrue(curve.disconnected)
        last = curve.bins[-1]
        self.assertEqual(3, last.lo)
        self.assertEqual(0.0, last.conductance)
        self.assertEqual("component", last.method)

    def test_disjoint_cliques_are_free_at_clique_size(self):
        g = planted_community(12, 4, 0.0, seed=0)
        curve = ncp_heuristic(g, NcpConfig(seed_count=3))
        by_lo = {b.lo: b for b in curve.bins}
        self.assertEqual(0.0, by_lo[4].conductance)
        self.assertEqual(4, by_lo[4].witness_size)
        self.assertEqual(1, len({v // 4 for v in by_lo[4].witness}))

    def test_whisker_found(self):
        edges = list(nx.complete_graph(8).edges()) + [(7, 8), (8, 9)]
        g = build_from_edges(10, edges)
        curve = ncp_heuristic(g, NcpConfig(seed_count=0))
        by_lo = {b.lo: b for b in curve.bins}
        self.assertEqual([8, 9], by_lo[2].witness)
        self.assertAlmostEqual(1 / 3, by_lo[2].conductance)
        self.assertTrue(by_lo[2].method.startswith("whisker"))

    def test_values_are_witness_conductances(self):
        g = watts_strogatz(300, 6, 0.05, seed=5)
        curve = ncp_heuristic(g, NcpConfig(seed_count=10, seed=1), scope=NCP_SCOPE_LARGEST)
        self.assertEqual(NCP_SCOPE_LARGEST, curve.scope)
        for b in curve.bins:
            witness = VertexSet(300, b.witness)
            self.assertAlmostEqual(conductance(g, witness), b.conductance)
            self.assertTrue(b.lo <= witness.size <= b.hi)

    def test_never_below_exact_minimum(self):
        for i in range(20):
            nxg = nx.gnp_random_graph(12, 0.3, seed=i)
            g = build_from_edges(12, list(nxg.edges()))
            if g.edge_count == 0:
                continue
            curve = ncp_heuristic(g, NcpConfig(seed_count=6, seed=i))
            for b in curve.bins:
                exact, _ = exhaustive_min_conductance(g, b.witness_size)
                self.assertGreaterEqual(b.conductance, float(exact) - 1e-12)

    def test_same_seed_same_curve(self):
        g = watts_strogatz(200, 4, 0.1, seed=2)
        config = NcpConfig(seed_count=5, seed=3)
        self.assertEqual(ncp_heuristic(g, config), ncp_heuristic(g, config))

    def test_empty_graph(self):
        with self.assertRaises(EmptyGraphError) as e:
            ncp_heuristic(build_from_edges(0, []))
        self.assertEqual(EMPTY_GRAPH, e.exception.detail)


def _curve(values: list[float]) -> NcpCurve:
    bins = [
        NcpBin(lo=i, hi=i, conductance=v, witness=list(range(i)), method="spectral:0.1")
        for i, v in enumerate(values, start=1)
    ]
    return NcpCurve(bins=bins, bin_ratio=1.1, node_count=2 * len(values))


class TestNcpDip(unittest.TestCase):
    def test_dip(self):
        dip = ncp_dip(_curve([1.0, 0.8, 0.1, 0.5, 0.6, 0.7]))
        self.assertEqual(3, dip.min_size)
        self.assertAlmostEqual(0.1, dip.min_value)
        self.assertAlmostEqual(8.0, dip.small_ratio)
        self.assertAlmostEqual(5.0, dip.large_ratio)
        self.assertAlmostEqual(10.0, dip.spread)
        self.assertTrue(dip.has_dip(size_range=(2, 4)))
        self.assertFalse(dip.has_dip())
        self.assertFalse(dip.is_flat())

    def test_flat(self):
        dip = ncp_dip(_curve([0.5, 0.4, 0.45, 0.3, 0.35, 0.4]))
        self.assertTrue(dip.is_flat())
        self.assertEqual(4, dip.min_size)

    def test_no_bins(self):
        with self.assertRaises(EmptyGraphError):
            ncp_dip(NcpCurve(bins=[], bin_ratio=1.1, node_count=0))
