# -*- coding: utf-8 -*-
import numpy as np

from obslin import metrics, pinn, series, system
from obslin.error import ResonanceError
from obslin.tests import BaseTestCase


class TestSeries(BaseTestCase):
    @classmethod
    def setUpClass(cls):
        super(TestSeries, cls).setUpClass()
        cls.poly1 = series.solve_series(
            cls.bench1.system, cls.bench1.observer, 6
        )
        cls.poly2 = series.solve_series(
            cls.bench2.system, cls.bench2.observer, 6
        )

    def test_bench1_coefficients(self):
        T1, T2 = self.poly1.components()
        self.assertAlmostEqual(T1[(1, 0)], 1.0, places=10)
        self.assertAlmostEqual(T1[(0, 1)], 1.0, places=10)
        self.assertAlmostEqual(T1[(2, 0)], -0.5, places=9)
        self.assertAlmostEqual(T1[(1, 1)], -1.0, places=9)
        self.assertAlmostEqual(T1[(3, 0)], 1.0 / 3.0, places=8)
        self.assertAlmostEqual(T1[(0, 6)], -1.0 / 6.0, places=6)
        terms = T2.coefficients(1e-9)
        self.assertEqual(list(terms), [(0, 1)])
        self.assertAlmostEqual(terms[(0, 1)], 1.0, places=10)

    def test_bench2_coefficients(self):
        T1, T2 = self.poly2.components()
        self.assertAlmostEqual(T1[(1, 0)], 1.0, places=10)
        self.assertAlmostEqual(T1[(0, 1)], 0.9, places=10)
        self.assertAlmostEqual(T1[(2, 0)], -1.0, places=9)
        self.assertAlmostEqual(T1[(1, 1)], 0.0, places=9)
        self.assertAlmostEqual(T2[(5, 0)], 2.5, places=6)

    def test_no_constant_term(self):
        np.testing.assert_array_equal(self.poly1([0.0, 0.0]), [0.0, 0.0])
        self.assertEqual(self.poly1.coefficients[0, 0], 0.0)

    def test_close_to_analytic_near_origin(self):
        x = np.array([-0.05, -0.03])
        np.testing.assert_allclose(
            self.poly1(x), self.bench1.transform(x), atol=1e-8
        )
        np.testing.assert_allclose(
            self.poly1.jacobian(x), self.bench1.transform.jacobian(x),
            atol=1e-6,
        )

    def test_residual_decreases_with_order(self):
        grid = np.array([[-0.1, -0.1], [-0.05, 0.0], [0.0, -0.1]])
        residuals = [
            pinn.verify_transform(
                series.solve_series(
                    self.bench1.system, self.bench1.observer, order
                ),
                self.bench1.system,
                self.bench1.observer,
                grid,
            )
            for order in (2, 4, 6)
        ]
        self.assertLess(residuals[1], residuals[0])
        self.assertLess(residuals[2], residuals[1])

    def test_evaluate_batch(self):
        points = np.array([[-0.1, -0.2], [-0.3, 0.0]])
        np.testing.assert_allclose(
            self.poly2.evaluate_batch(points),
            [series.eval_polymap(self.poly2, x) for x in points],
        )

    def test_to_dict(self):
        data = self.poly1.to_dict()
        self.assertEqual(data['kind'], 'polynomial')
        self.assertEqual(sum(len(terms) for terms in data['components']), 54)
        other = series.PolyMap.from_dict(data)
        np.testing.assert_array_equal(
            other.coefficients, self.poly1.coefficients
        )

    def test_order_range(self):
        for order in (0, 11):
            with self.assertRaises(ValueError):
                series.solve_series(
                    self.bench1.system, self.bench1.observer, order
                )

    def test_resonance(self):
        plant = system.DiscreteSystem(['0.5*x1'], 'x1')
        observer = system.ObserverSpec([[0.25]], ['y'])
        with self.assertRaises(ResonanceError) as context:
            series.solve_series(plant, observer, 3)
        self.assertEqual(context.exception.info['degree'], 2)

    def test_chebyshev_grid_errors(self):
        expected = (
            (self.bench1, self.poly1, (1.0, 6.0), (30.0, 140.0)),
            (self.bench2, self.poly2, (5.0, 40.0), None),
        )
        for bench, poly, linf_range, l1_range in expected:
            spec = metrics.GridSpec.square(
                metrics.CHEBYSHEV_LOBATTO, bench.domain, 20
            )
            grid = metrics.make_grid(spec)
            field = metrics.error_field(poly, bench.transform, grid)
            result = metrics.field_norms(field)['T1']
            self.assertTrue(linf_range[0] <= result['Linf'] <= linf_range[1])
            if l1_range:
                self.assertTrue(l1_range[0] <= result['L1'] <= l1_range[1])
