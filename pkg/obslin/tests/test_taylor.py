# -*- coding: utf-8 -*-
import math
import unittest

import numpy as np

from obslin.error import DomainError, InternalError
from obslin.taylor import TruncatedSeries
from obslin.tools import graded_indices


class TestTruncatedSeries(unittest.TestCase):
    def setUp(self):
        self.x1 = TruncatedSeries.variable(0, 2, 4)
        self.x2 = TruncatedSeries.variable(1, 2, 4)

    def test_product_truncation(self):
        s = (self.x1 + self.x2) ** 5
        self.assertFalse(s.coefficients())
        s = (self.x1 + self.x2) ** 2
        self.assertEqual(
            s.coefficients(), {(2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0}
        )

    def test_exp(self):
        s = self.x1.exp()
        for k in range(5):
            self.assertAlmostEqual(s[(k, 0)], 1.0 / math.factorial(k))
        self.assertEqual(s[(5, 0)], 0.0)

    def test_log(self):
        s = (1 + self.x1 + self.x2).log()
        self.assertAlmostEqual(s[(1, 0)], 1.0)
        self.assertAlmostEqual(s[(1, 1)], -1.0)
        self.assertAlmostEqual(s[(0, 3)], 1.0 / 3.0)
        self.assertAlmostEqual(s[(2, 2)], -1.5)

    def test_sqrt_squared(self):
        s = (4 + self.x1).sqrt()
        self.assertAlmostEqual(s.constant_term, 2.0)
        square = s * s
        self.assertAlmostEqual(square.constant_term, 4.0)
        self.assertAlmostEqual(square[(1, 0)], 1.0)
        for k in range(2, 5):
            self.assertAlmostEqual(square[(k, 0)], 0.0)

    def test_division(self):
        s = self.x1 / (1 + self.x1)
        self.assertEqual(
            [s[(k, 0)] for k in range(5)], [0.0, 1.0, -1.0, 1.0, -1.0]
        )

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            self.x1.log()
        with self.assertRaises(DomainError):
            (self.x1 - 1).sqrt()
        with self.assertRaises(DomainError):
            1 / self.x1
        with self.assertRaises(DomainError):
            self.x1 / 0

    def test_incompatible_series(self):
        other = TruncatedSeries.variable(0, 2, 3)
        with self.assertRaises(InternalError):
            self.x1 + other
        shifted = TruncatedSeries.variable(0, 2, 4, center=[1.0, 0.0])
        with self.assertRaises(InternalError):
            self.x1 * shifted

    def test_evaluation_about_center(self):
        center = [0.5, -0.25]
        x1 = TruncatedSeries.variable(0, 2, 3, center)
        x2 = TruncatedSeries.variable(1, 2, 3, center)
        s = x1 * x2 + 2 * x1
        point = np.array([0.6, -0.2])
        self.assertAlmostEqual(s(point), 0.6 * -0.2 + 1.2)

    def test_immutable(self):
        with self.assertRaises(ValueError):
            self.x1.coefficient_vector[0] = 1.0

    def test_wrong_size(self):
        with self.assertRaises(ValueError):
            TruncatedSeries(2, 2, [1.0, 2.0])


class TestTruncatedSeriesRandom(unittest.TestCase):
    def test_product_commutative_and_associative(self):
        rng = np.random.default_rng(17)
        size = len(graded_indices(2, 4))
        for _ in range(50):
            a, b, c = (
                TruncatedSeries(2, 4, rng.uniform(-1, 1, size))
                for _ in range(3)
            )
            np.testing.assert_allclose(
                (a * b).coefficient_vector,
                (b * a).coefficient_vector,
                atol=1e-13,
            )
            np.testing.assert_allclose(
                ((a * b) * c).coefficient_vector,
                (a * (b * c)).coefficient_vector,
                atol=1e-12,
            )
