# -*- coding: utf-8 -*-
import numpy as np

from obslin import maps, mlp, series
from obslin.error import DomainError, InternalError
from obslin.tests import FileTestCase


class TestMaps(FileTestCase):
    def test_expr_map(self):
        T = self.bench1.transform
        self.assertEqual(T.kind, 'analytic')
        np.testing.assert_allclose(T([0.0, 0.2]), [np.log(1.2), 0.2])
        points = np.array([[0.0, 0.0], [0.1, -0.2]])
        np.testing.assert_allclose(
            T.evaluate_batch(points), [T(x) for x in points]
        )

    def test_exact_jacobian_against_differences(self):
        T = self.bench2.transform
        x = np.array([-0.3, -0.2])
        np.testing.assert_allclose(
            T.jacobian(x), maps.TransformMap.jacobian(T, x), atol=1e-7
        )

    def test_domain(self):
        T = self.bench1.transform
        self.assertTrue(T.contains([0.0, 0.0]))
        self.assertFalse(T.contains([-1.0, -0.5]))
        with self.assertRaises(DomainError) as context:
            T([-1.0, -0.5])
        self.assertEqual(context.exception.info['component'], 0)

    def test_check_dimension(self):
        with self.assertRaises(InternalError):
            maps.zero_map(1).check_dimension(2)

    def test_unknown_kind(self):
        with self.assertRaises(InternalError):
            maps.from_dict({'kind': 'spline'})

    def test_store_each_kind(self):
        cfg = mlp.MlpConfig(2)
        transforms = [
            self.bench2.inverse,
            mlp.MlpMap(cfg, mlp.init_random(cfg, 3), {'seed': 3}),
            series.solve_series(
                self.bench1.system, self.bench1.observer, 3
            ),
        ]
        point = np.array([-0.1, -0.05])
        for transform in transforms:
            path = self.path('{}.json'.format(transform.kind))
            maps.dump_map(transform, path)
            loaded = maps.load_map(path)
            self.assertIs(type(loaded), type(transform))
            np.testing.assert_allclose(
                loaded(point), transform(point), rtol=1e-15
            )
