import unittest

import numpy as np
from scipy.sparse.csgraph import connected_components

from src.conf.constants import BURN_PROBABILITY_OUT_OF_RANGE, BURN_TRIALS_TOO_SMALL
from src.conf.errors import ParameterError
from src.schemas.cascades import CascadeModel, CascadeParams, SnapshotSchedule
from src.services.forest_fire import BinomialBurn, GeometricBurn, forest_fire, growth_snapshots


class TestBurnDistributions(unittest.TestCase):
    def test_geometric_mean(self):
        burn = GeometricBurn(0.5)
        self.assertEqual(2.0, burn.mean)
        rng = np.random.default_rng(0)
        samples = [burn.sample(rng) for _ in range(20000)]
        self.assertAlmostEqual(2.0, float(np.mean(samples)), delta=0.1)
        self.assertEqual(0, min(samples))

    def test_binomial_is_bounded(self):
        burn = BinomialBurn(0.5, 4)
        rng = np.random.default_rng(1)
        samples = [burn.sample(rng) for _ in range(20000)]
        self.assertLessEqual(max(samples), 4)
        self.assertAlmostEqual(2.0, float(np.mean(samples)), delta=0.1)

    def test_binomial_needs_trials(self):
        for trials in (None, 1):
            with self.assertRaises(ParameterError) as e:
                BinomialBurn(0.5, trials)
            self.assertEqual(BURN_TRIALS_TOO_SMALL, e.exception.detail)

    def test_probability_range(self):
        with self.assertRaises(ParameterError) as e:
            GeometricBurn(1.0)
        self.assertEqual(BURN_PROBABILITY_OUT_OF_RANGE, e.exception.detail)


class TestForestFire(unittest.TestCase):
    def test_grown_graph_is_connected(self):
        g = forest_fire(300, 0.35, seed=4)
        g.assert_invariants()
        self.assertEqual(300, g.node_count)
        self.assertGreaterEqual(g.edge_count, 299)
        count, _ = connected_components(g.to_scipy(), directed=False)
        self.assertEqual(1, count)

    def test_zero_burn_gives_a_tree(self):
        tree = forest_fire(100, 0.0, seed=1, burn=_NoBurn())
        self.assertEqual(99, tree.edge_count)

    def test_same_seed_same_graph(self):
        a, b = forest_fire(200, 0.4, seed=7), forest_fire(200, 0.4, seed=7)
        self.assertTrue(np.array_equal(a.edges(), b.edges()))

    def test_growth_snapshots_are_prefixes(self):
        g = forest_fire(200, 0.3, seed=2)
        params = CascadeParams(model=CascadeModel.FOREST_FIRE, m=200, p=0.3)
        snapshots = growth_snapshots(g, SnapshotSchedule(checkpoints=[10, 50, 200]), params, 2)
        self.assertEqual([10, 50, 200], [s.size for s in snapshots])
        self.assertEqual([9, 49, 199], [s.rounds_elapsed for s in snapshots])
        self.assertEqual(g.edge_count, snapshots[-1].edge_count)
        for s in snapshots:
            self.assertEqual(CascadeModel.FOREST_FIRE, s.model)
            self.assertTrue(np.array_equal(np.arange(s.size), s.to_underlying))
            count, _ = connected_components(s.graph.to_scipy(), directed=False)
            self.assertEqual(1, count)


class _NoBurn(GeometricBurn):
    def __init__(self):
        super().__init__(0.0)

    def sample(self, rng: np.random.Generator) -> int:
        return 0
