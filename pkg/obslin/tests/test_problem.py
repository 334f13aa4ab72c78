# -*- coding: utf-8 -*-
import textwrap

import numpy as np

from obslin import problem
from obslin.error import AssumptionError, ParseError
from obslin.tests import FileTestCase

TOY = textwrap.dedent(
    u"""
    [system]
    name = toy
    phi1 = 0.5*x1
    phi2 = x1+0.2*x2
    h = x2

    [observer]
    a = 0.1, 0; 0, 0.3
    b1 = -y
    b2 = y

    [domain]
    x1 = -0.5, 0
    x2 = -0.4, 0.1

    [schedule]
    start = -0.1
    legs = -0.5:-0.2
    """
)


class TestProblem(FileTestCase):
    def write(self, text, name='problem.ini'):
        path = self.path(name)
        with open(path, 'w') as file_:
            file_.write(text)
        return path

    def test_load(self):
        toy = problem.load(self.write(TOY))
        self.assertEqual(toy.name, 'toy')
        self.assertEqual(toy.n, 2)
        np.testing.assert_allclose(toy.observer.A, [[0.1, 0.0], [0.0, 0.3]])
        self.assertEqual(toy.domain, [(-0.5, 0.0), (-0.4, 0.1)])
        self.assertEqual(toy.schedule, [-0.1, -0.3, -0.5])
        self.assertIsNone(toy.transform)
        np.testing.assert_allclose(toy.system.step([1.0, 1.0]), [0.5, 1.2])

    def test_subdomain(self):
        toy = problem.load(self.write(TOY))
        self.assertEqual(toy.subdomain(-0.2), [(-0.2, 0.0), (-0.2, 0.1)])

    def test_save_and_load_benchmark(self):
        path = self.path('bench1.ini')
        problem.save(self.bench1, path)
        loaded = problem.load(path)
        self.assertEqual(loaded.name, 'bench1')
        self.assertEqual(loaded.schedule, self.bench1.schedule)
        self.assertEqual(loaded.domain, self.bench1.domain)
        np.testing.assert_allclose(loaded.observer.A, self.bench1.observer.A)
        x = np.array([-0.3, -0.1])
        np.testing.assert_allclose(
            loaded.system.step(x), self.bench1.system.step(x)
        )
        np.testing.assert_allclose(
            loaded.inverse(self.bench1.transform(x)), x
        )

    def test_missing_section(self):
        text = TOY.replace('[domain]', '[region]')
        with self.assertRaises(ParseError) as context:
            problem.load(self.write(text))
        self.assertEqual(context.exception.info['section'], 'domain')

    def test_bad_expression(self):
        text = TOY.replace('phi2 = x1+0.2*x2', 'phi2 = x1+0.2*x3')
        with self.assertRaises(ParseError) as context:
            problem.load(self.write(text))
        self.assertEqual(context.exception.info['option'], 'phi2')

    def test_bad_matrix(self):
        text = TOY.replace('a = 0.1, 0; 0, 0.3', 'a = 0.1, 0')
        with self.assertRaises(ParseError):
            problem.load(self.write(text))

    def test_bad_schedule(self):
        text = TOY.replace('legs = -0.5:-0.2', 'legs = -0.5:0.2')
        with self.assertRaises(ParseError):
            problem.load(self.write(text))

    def test_malformed_file(self):
        with self.assertRaises(ParseError):
            problem.load(self.write(u"phi1 = x1\n"))

    def test_unstable_observer(self):
        text = TOY.replace('a = 0.1, 0; 0, 0.3', 'a = 1.1, 0; 0, 0.3')
        with self.assertRaises(AssumptionError):
            problem.load(self.write(text))

    def test_empty_interval(self):
        with self.assertRaises(ValueError):
            problem.Problem(
                'empty',
                self.bench1.system,
                self.bench1.observer,
                [(0.0, 0.0), (-0.1, 0.0)],
            )
