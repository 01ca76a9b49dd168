import unittest

import numpy as np
from pydantic import ValidationError

from src.conf.constants import (
    BASELINE_INVALID_DEGREE,
    PC_DEGREE_NOT_DIVISOR,
    PCM_RK_NOT_INTEGRAL,
    REGULAR_ODD_STUBS,
    WS_DEGREE_NOT_EVEN,
    WS_DEGREE_TOO_LARGE,
)
from src.conf.errors import ParameterError
from src.schemas.generators import GeneratorParams
from src.services.generators import (
    baseline_graph,
    clique_partition,
    generate,
    planted_clique_model,
    planted_community,
    random_regular,
    watts_strogatz,
)


class TestWattsStrogatz(unittest.TestCase):
    def test_ring_lattice_without_rewiring(self):
        g = watts_strogatz(20, 4, 0.0, seed=1)
        self.assertEqual(40, g.edge_count)
        self.assertTrue(np.all(g.degrees == 4))
        for v in (1, 2, 18, 19):
            self.assertTrue(g.has_edge(0, v))
        self.assertFalse(g.has_edge(0, 3))

    def test_rewiring_keeps_edge_count(self):
        for seed in range(5):
            g = watts_strogatz(100, 6, 0.5, seed=seed)
            self.assertEqual(300, g.edge_count)
            g.assert_invariants()

    def test_full_rewiring_leaves_no_self_loops(self):
        g = watts_strogatz(30, 4, 1.0, seed=3)
        self.assertEqual(60, g.edge_count)
        g.assert_invariants()

    def test_rewired_count_is_binomial(self):
        n, d, r = 10_000, 10, 0.1
        trials = n * d // 2
        mean, sigma = trials * r, np.sqrt(trials * r * (1 - r))
        counts = []
        for seed in range(20):
            edges = watts_strogatz(n, d, r, seed=seed).edges()
            gap = np.abs(edges[:, 0] - edges[:, 1])
            ring = np.minimum(gap, n - gap)
            counts.append(int(np.count_nonzero(ring > d // 2)))
        for count in counts:
            self.assertLess(abs(count - mean), 4 * sigma)
        self.assertLess(abs(np.mean(counts) - mean), 3 * sigma / np.sqrt(len(counts)))

    def test_same_seed_same_graph(self):
        a = watts_strogatz(200, 10, 0.1, seed=42)
        b = watts_strogatz(200, 10, 0.1, seed=42)
        self.assertTrue(np.array_equal(a.edges(), b.edges()))

    def test_odd_degree(self):
        with self.assertRaises(ParameterError) as e:
            watts_strogatz(10, 3, 0.1)
        self.assertEqual(WS_DEGREE_NOT_EVEN, e.exception.detail)

    def test_degree_too_large(self):
        with self.assertRaises(ParameterError) as e:
            watts_strogatz(10, 10, 0.1)
        self.assertEqual(WS_DEGREE_TOO_LARGE, e.exception.detail)


class TestPlantedCommunity(unittest.TestCase):
    def test_disjoint_cliques(self):
        g = planted_community(12, 4, 0.0)
        self.assertEqual(18, g.edge_count)
        self.assertTrue(np.all(g.degrees == 3))
        self.assertTrue(g.has_edge(4, 7))
        self.assertFalse(g.has_edge(3, 4))

    def test_rewiring_keeps_edge_count(self):
        g = planted_community(100, 5, 0.3, seed=7)
        self.assertEqual(200, g.edge_count)
        g.assert_invariants()

    def test_degree_must_divide(self):
        with self.assertRaises(ParameterError) as e:
            planted_community(10, 3, 0.1)
        self.assertEqual(PC_DEGREE_NOT_DIVISOR, e.exception.detail)

    def test_clique_partition(self):
        self.assertEqual([0, 0, 0, 1, 1, 1], clique_partition(6, 3).tolist())


class TestRandomRegular(unittest.TestCase):
    def test_all_degrees_equal(self):
        for seed in range(3):
            g = random_regular(50, 4, seed=seed)
            self.assertTrue(np.all(g.degrees == 4))
            self.assertEqual(100, g.edge_count)

    def test_zero_degree(self):
        g = random_regular(5, 0)
        self.assertEqual(0, g.edge_count)

    def test_odd_stub_count(self):
        with self.assertRaises(ParameterError) as e:
            random_regular(5, 3)
        self.assertEqual(REGULAR_ODD_STUBS, e.exception.detail)


class TestPlantedCliqueModel(unittest.TestCase):
    def test_degrees_bounded_by_clique_plus_random(self):
        g = planted_clique_model(60, 6, 0.5, seed=2)
        self.assertTrue(np.all(g.degrees >= 5))
        self.assertTrue(np.all(g.degrees <= 8))
        for v in range(1, 6):
            self.assertTrue(g.has_edge(0, v))

    def test_zero_ratio_is_disjoint_cliques(self):
        g = planted_clique_model(12, 4, 0.0, seed=0)
        self.assertEqual(18, g.edge_count)

    def test_rk_not_integral(self):
        with self.assertRaises(ParameterError) as e:
            planted_clique_model(60, 6, 0.25)
        self.assertEqual(PCM_RK_NOT_INTEGRAL, e.exception.detail)


class TestBaselines(unittest.TestCase):
    def test_complete(self):
        g = baseline_graph("complete", 6)
        self.assertEqual(15, g.edge_count)

    def test_erdos_renyi_mean_degree(self):
        g = baseline_graph("er", 2000, 10, seed=1)
        self.assertAlmostEqual(10.0, g.degrees.mean(), delta=0.5)

    def test_preferential_attachment_edge_count(self):
        g = baseline_graph("pa", 100, 4, seed=1)
        self.assertEqual(197, g.edge_count)

    def test_preferential_attachment_odd_degree(self):
        with self.assertRaises(ParameterError) as e:
            baseline_graph("pa", 100, 3)
        self.assertEqual(BASELINE_INVALID_DEGREE, e.exception.detail)


class TestGenerate(unittest.TestCase):
    def test_dispatch_ws(self):
        g = generate(GeneratorParams(model="ws", n=30, d=4, r=0.1, seed=1))
        self.assertEqual(60, g.edge_count)

    def test_dispatch_pcm(self):
        g = generate(GeneratorParams(model="pcm", n=60, d=0, k=6, r=0.5, seed=1))
        self.assertEqual(60, g.node_count)

    def test_params_report_every_violation(self):
        with self.assertRaises(ValidationError) as e:
            GeneratorParams(model="pcm", n=10, r=0.5)
        self.assertIn("pcm requires k", str(e.exception))

    def test_ws_params_odd_degree(self):
        with self.assertRaises(ValidationError):
            GeneratorParams(model="ws", n=10, d=3)
