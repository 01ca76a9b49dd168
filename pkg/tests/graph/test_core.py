import unittest

import numpy as np

from src.conf.constants import (
    ENDPOINT_OUT_OF_RANGE,
    SELF_LOOP_NOT_ALLOWED,
    VERTEX_OUT_OF_RANGE,
    VERTEX_SET_GRAPH_MISMATCH,
)
from src.conf.errors import GraphConstructionError, InvalidVertexSetError
from src.graph.core import VertexSet, build_from_edges, induced_subgraph
from tests.conftest import complete_edges, two_cliques_bridged


class TestBuildFromEdges(unittest.TestCase):
    def test_triangle(self):
        g = build_from_edges(3, [(0, 1), (1, 2), (2, 0)])
        self.assertEqual(3, g.node_count)
        self.assertEqual(3, g.edge_count)
        self.assertEqual([2, 2, 2], g.degrees.tolist())
        g.assert_invariants()

    def test_duplicates_and_reversed_pairs_merge(self):
        g = build_from_edges(3, [(0, 1), (1, 0), (0, 1), (1, 2)])
        self.assertEqual(2, g.edge_count)
        self.assertEqual([[0, 1], [1, 2]], g.edges().tolist())

    def test_isolated_vertices_are_kept(self):
        g = build_from_edges(5, [(0, 1)])
        self.assertEqual(5, g.node_count)
        self.assertEqual([1, 1, 0, 0, 0], g.degrees.tolist())

    def test_empty_graph(self):
        g = build_from_edges(0, [])
        self.assertEqual(0, g.node_count)
        self.assertEqual(0, g.edge_count)
        self.assertEqual((0, 2), g.edges().shape)

    def test_endpoint_out_of_range(self):
        with self.assertRaises(GraphConstructionError) as e:
            build_from_edges(2, [(0, 2)])
        self.assertEqual(ENDPOINT_OUT_OF_RANGE, e.exception.detail)

    def test_self_loop_rejected(self):
        with self.assertRaises(GraphConstructionError) as e:
            build_from_edges(3, [(1, 1)])
        self.assertEqual(SELF_LOOP_NOT_ALLOWED, e.exception.detail)

    def test_neighbors_sorted_and_read_only(self):
        g = build_from_edges(4, [(0, 3), (0, 1), (0, 2)])
        self.assertEqual([1, 2, 3], g.neighbors(0).tolist())
        with self.assertRaises(ValueError):
            g.neighbors(0)[0] = 9

    def test_has_edge_and_has_edges_agree(self):
        g = two_cliques_bridged()
        us = np.array([0, 4, 4, 0, 9, 5])
        vs = np.array([1, 5, 6, 9, 8, 0])
        expected = [g.has_edge(int(u), int(v)) for u, v in zip(us, vs)]
        self.assertEqual([True, True, False, False, True, False], expected)
        self.assertEqual(expected, g.has_edges(us, vs).tolist())

    def test_incident_edges(self):
        g = build_from_edges(4, [(0, 1), (0, 2), (2, 3)])
        src, dst = g.incident_edges(np.array([0, 3]))
        self.assertEqual([0, 0, 3], src.tolist())
        self.assertEqual([1, 2, 2], dst.tolist())

    def test_networkx_and_scipy_views(self):
        g = two_cliques_bridged()
        self.assertEqual(21, g.to_networkx().number_of_edges())
        self.assertEqual(42, g.to_scipy().nnz)


class TestVertexSet(unittest.TestCase):
    def test_members_sorted_unique(self):
        s = VertexSet(6, [4, 1, 4, 0])
        self.assertEqual([0, 1, 4], s.members.tolist())
        self.assertEqual(3, len(s))
        self.assertIn(4, s)
        self.assertNotIn(5, s)

    def test_complement(self):
        s = VertexSet(5, [0, 2])
        self.assertEqual([1, 3, 4], s.complement().members.tolist())

    def test_from_mask(self):
        s = VertexSet.from_mask(np.array([True, False, True]))
        self.assertEqual(3, s.node_count)
        self.assertEqual([0, 2], s.members.tolist())

    def test_out_of_range(self):
        with self.assertRaises(InvalidVertexSetError) as e:
            VertexSet(3, [3])
        self.assertEqual(VERTEX_OUT_OF_RANGE, e.exception.detail)


class TestInducedSubgraph(unittest.TestCase):
    def test_one_clique(self):
        g = two_cliques_bridged()
        sub, remap = induced_subgraph(g, VertexSet(10, range(5, 10)))
        self.assertEqual(5, sub.node_count)
        self.assertEqual(10, sub.edge_count)
        self.assertEqual([5, 6, 7, 8, 9], remap.tolist())
        sub.assert_invariants()

    def test_bridge_endpoints(self):
        g = two_cliques_bridged()
        sub, remap = induced_subgraph(g, VertexSet(10, [3, 4, 5]))
        self.assertEqual([[0, 1], [1, 2]], sub.edges().tolist())
        self.assertEqual([3, 4, 5], remap.tolist())

    def test_empty_set(self):
        g = build_from_edges(4, complete_edges([0, 1, 2, 3]))
        sub, remap = induced_subgraph(g, VertexSet(4, []))
        self.assertEqual(0, sub.node_count)
        self.assertEqual(0, remap.shape[0])

    def test_mismatched_set(self):
        g = two_cliques_bridged()
        with self.assertRaises(InvalidVertexSetError) as e:
            induced_subgraph(g, VertexSet(3, [0]))
        self.assertEqual(VERTEX_SET_GRAPH_MISMATCH, e.exception.detail)
