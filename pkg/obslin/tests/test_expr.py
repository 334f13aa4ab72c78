# -*- coding: utf-8 -*-
import math
import unittest

from obslin import expr
from obslin.error import DomainError, ParseError


class TestParse(unittest.TestCase):
    def test_precedence(self):
        node = expr.parse('1+2*x1^2', 1)
        self.assertEqual(expr.evaluate(node, [3.0]), 19.0)
        self.assertEqual(expr.evaluate(expr.parse('-x1^2', 1), [3.0]), -9.0)
        self.assertEqual(
            expr.evaluate(expr.parse('x1-x2-1', 2), [1.0, 2.0]), -2.0
        )
        self.assertEqual(
            expr.evaluate(expr.parse('x1/x2/4', 2), [8.0, 2.0]), 1.0
        )

    def test_functions(self):
        node = expr.parse('exp(x1)+ln(x2)*sqrt(x2)', 2)
        value = expr.evaluate(node, [1.0, 4.0])
        self.assertAlmostEqual(value, math.e + 2 * math.log(4.0))

    def test_custom_names(self):
        node = expr.parse('0.2*y/(1+y)-0.3*y', 1, ('y',))
        self.assertAlmostEqual(expr.evaluate(node, [1.0]), -0.2)
        self.assertEqual(node.arity, 1)
        with self.assertRaises(ParseError):
            expr.parse('x1', 1, ('y',))

    def test_syntax_error(self):
        with self.assertRaises(ParseError) as context:
            expr.parse('x1+*x2', 2)
        self.assertIsNotNone(context.exception.info.get('position'))

    def test_out_of_range_variable(self):
        with self.assertRaises(ParseError) as context:
            expr.parse('x1+x3', 2)
        self.assertEqual(context.exception.info['name'], 'x3')

    def test_unknown_function(self):
        with self.assertRaises(ParseError):
            expr.parse('sin(x1)', 1)
        with self.assertRaises(ParseError):
            expr.parse('ln+x1', 1)

    def test_non_integer_exponent(self):
        with self.assertRaises(ParseError):
            expr.parse('x1^0.5', 1)

    def test_print_parse(self):
        for text in (
            'exp(0.2*x2/(1+x2))*sqrt(1+x1+x2)-1-0.4*x2-0.5*ln(1+x1+x2)',
            '(0.5*x1/(1+x1)-0.9*x2)/(1-0.5*x1/(1+x1)+0.9*x2)',
            'x1-(x2-x1)',
            '-(x1+x2)^3',
            '(-2)*x1',
        ):
            node = expr.parse(text, 2)
            self.assertEqual(expr.parse(expr.to_text(node), 2), node)

    def test_nodes_are_immutable(self):
        node = expr.parse('x1', 1)
        with self.assertRaises(AttributeError):
            node.value = 2


class TestEvaluate(unittest.TestCase):
    def test_domain_errors(self):
        cases = [
            ('ln(x1)', [0.0]),
            ('sqrt(x1)', [-1.0]),
            ('1/x1', [0.0]),
            ('exp(x1)', [1000.0]),
        ]
        for text, point in cases:
            with self.assertRaises(DomainError) as context:
                expr.evaluate(expr.parse(text, 1), point)
            self.assertEqual(context.exception.info['point'], point)

    def test_subexpression_reported(self):
        node = expr.parse('1+ln(x1-1)', 1)
        with self.assertRaises(DomainError) as context:
            expr.evaluate(node, [0.5])
        self.assertEqual(
            context.exception.info['subexpression'], 'ln(x1-1.0)'
        )

    def test_point_of_wrong_length(self):
        node = expr.parse('x1+x2', 2)
        for point in ([1.0], [1.0, 2.0, 3.0]):
            with self.assertRaises(ValueError):
                expr.evaluate(node, point)
        self.assertEqual(expr.evaluate(node, [1.0, 2.0]), 3.0)


class TestSeries(unittest.TestCase):
    def test_series_of_bench_transform(self):
        node = expr.parse('ln(1+x1+x2)', 2)
        s = expr.series_eval(node, [0.0, 0.0], 3)
        self.assertEqual(s[(1, 0)], 1.0)
        self.assertEqual(s[(0, 1)], 1.0)
        self.assertAlmostEqual(s[(2, 0)], -0.5)
        self.assertAlmostEqual(s[(2, 1)], 1.0)

    def test_series_about_point(self):
        node = expr.parse('exp(x1)*x2', 2)
        s = expr.series_eval(node, [1.0, 2.0], 1)
        self.assertAlmostEqual(s.constant_term, 2 * math.e)
        self.assertAlmostEqual(s[(1, 0)], 2 * math.e)
        self.assertAlmostEqual(s[(0, 1)], math.e)

    def test_composition(self):
        output = expr.series_eval(expr.parse('x2', 2), [0.0, 0.0], 3)
        injection = expr.parse('y/(1+y)', 1, ('y',))
        s = expr.evaluate_series(injection, [output])
        self.assertEqual(
            s.coefficients(), {(0, 1): 1.0, (0, 2): -1.0, (0, 3): 1.0}
        )

    def test_not_analytic(self):
        with self.assertRaises(DomainError):
            expr.series_eval(expr.parse('sqrt(x1)', 1), [0.0], 2)
