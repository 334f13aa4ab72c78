# -*- coding: utf-8 -*-
import unittest

import numpy as np

from obslin import maps, metrics


class TestGrids(unittest.TestCase):
    def test_equispaced(self):
        spec = metrics.GridSpec(
            metrics.EQUISPACED, [(-1.0, 0.0), (0.0, 2.0)], [3, 2]
        )
        grid = metrics.make_grid(spec)
        np.testing.assert_allclose(
            grid,
            [
                [-1.0, 0.0],
                [-1.0, 2.0],
                [-0.5, 0.0],
                [-0.5, 2.0],
                [0.0, 0.0],
                [0.0, 2.0],
            ],
        )

    def test_chebyshev_lobatto(self):
        spec = metrics.GridSpec.square(
            metrics.CHEBYSHEV_LOBATTO, [(-0.495, 0.0)], 5
        )
        nodes = metrics.make_grid(spec).ravel()
        expected = -0.2475 + 0.2475 * np.cos(np.pi * np.arange(5) / 4)
        np.testing.assert_allclose(nodes, np.sort(expected), atol=1e-15)
        self.assertAlmostEqual(nodes[0], -0.495)
        self.assertAlmostEqual(nodes[-1], 0.0)

    def test_square_grid_size(self):
        spec = metrics.GridSpec.square(
            metrics.CHEBYSHEV_LOBATTO, [(-0.91, 0.0)] * 2, 20
        )
        self.assertEqual(metrics.make_grid(spec).shape, (400, 2))

    def test_invalid_specs(self):
        with self.assertRaises(ValueError):
            metrics.GridSpec('random', [(0.0, 1.0)], [3])
        with self.assertRaises(ValueError):
            metrics.GridSpec(metrics.EQUISPACED, [(0.0, 1.0)], [1])
        with self.assertRaises(ValueError):
            metrics.GridSpec(metrics.EQUISPACED, [(1.0, 0.0)], [3])


class TestNorms(unittest.TestCase):
    def test_norms(self):
        self.assertEqual(metrics.norms([3.0, -4.0]), (7.0, 5.0, 4.0))
        with self.assertRaises(ValueError):
            metrics.norms([])

    def test_error_field(self):
        transform = maps.ExprMap(['x1+0.5', 'x2'])
        oracle = maps.ExprMap(['x1', '2*x2'])
        grid = np.array([[0.0, 1.0], [1.0, -2.0]])
        field = metrics.error_field(transform, oracle, grid)
        np.testing.assert_allclose(field, [[0.5, -1.0], [0.5, 2.0]])
        result = metrics.field_norms(field)
        self.assertEqual(sorted(result['T1']), ['L1', 'L2', 'Linf'])
        self.assertAlmostEqual(result['T1']['L1'], 1.0)
        self.assertAlmostEqual(result['T1']['L2'], np.sqrt(0.5))
        self.assertAlmostEqual(result['T1']['Linf'], 0.5)
        self.assertEqual(result['T2']['Linf'], 2.0)


class TestAggregation(unittest.TestCase):
    def test_percentiles(self):
        runs = [{'L1': v, 'L2': 2 * v, 'Linf': 3 * v} for v in range(1, 11)]
        stats = metrics.uq_aggregate(runs)
        self.assertEqual(stats.count, 10)
        self.assertAlmostEqual(stats['L1']['median'], 5.5)
        self.assertAlmostEqual(stats['L1']['p5'], 1.45)
        self.assertAlmostEqual(stats['L1']['p95'], 9.55)
        self.assertAlmostEqual(stats['Linf']['p95'], 28.65)

    def test_two_runs(self):
        stats = metrics.uq_aggregate([(1.0, 1.0, 1.0), (3.0, 3.0, 3.0)])
        self.assertAlmostEqual(stats['L2']['p5'], 1.1)
        self.assertAlmostEqual(stats['L2']['median'], 2.0)
        self.assertEqual(stats.to_dict()['runs'], 2)

    def test_too_few_runs(self):
        with self.assertRaises(ValueError):
            metrics.uq_aggregate([(1.0, 1.0, 1.0)])

    def test_campaign_stats(self):
        runs = [(v, v, v) for v in (1.0, 5.0, 2.0, 8.0)]
        result = metrics.campaign_stats(runs, [2, 4])
        self.assertAlmostEqual(result[2]['L1']['median'], 3.0)
        self.assertAlmostEqual(result[4]['L1']['median'], 3.5)
        with self.assertRaises(ValueError):
            metrics.campaign_stats(runs, [5])


class TestMetricsRandom(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(31)

    def test_norms_homogeneous_and_ordered(self):
        for _ in range(200):
            values = self.rng.normal(size=int(self.rng.integers(1, 50)))
            scale = self.rng.uniform(-10, 10)
            l1, l2, linf = metrics.norms(values)
            self.assertGreaterEqual(l1 + 1e-12, l2)
            self.assertGreaterEqual(l2 + 1e-12, linf)
            np.testing.assert_allclose(
                metrics.norms(scale * values),
                np.abs(scale) * np.array([l1, l2, linf]),
                rtol=1e-12,
            )

    def test_aggregate_ignores_run_order(self):
        runs = [tuple(row) for row in self.rng.lognormal(size=(30, 3))]
        stats = metrics.uq_aggregate(runs)
        for _ in range(10):
            order = self.rng.permutation(len(runs))
            shuffled = metrics.uq_aggregate([runs[i] for i in order])
            for norm in metrics.NORMS:
                for name, value in stats[norm].items():
                    self.assertAlmostEqual(
                        shuffled[norm][name], value, places=12
                    )
