# -*- coding: utf-8 -*-
import numpy as np

from obslin import maps, observer
from obslin.error import NewtonError
from obslin.tests import BaseTestCase


class TestNewton(BaseTestCase):
    def test_invert_analytic(self):
        rng = np.random.default_rng(7)
        for bench in (self.bench1, self.bench2):
            lower, upper = np.array(bench.domain).T
            for x in rng.uniform(lower, upper, size=(100, 2)):
                guess = np.clip(
                    x + rng.uniform(-0.01, 0.01, size=2), lower, upper
                )
                estimate, iterations = observer.newton_invert(
                    bench.transform, bench.transform(x), guess
                )
                np.testing.assert_allclose(estimate, x, atol=1e-6)
                self.assertLessEqual(iterations, 10)

    def test_invert_from_default_guess(self):
        _, iterations = observer.newton_invert(
            self.bench1.transform, [0.0, 0.0], [0.1, 0.1]
        )
        self.assertLessEqual(iterations, 5)

    def test_fd_jacobian(self):
        x = np.array([-0.4, -0.1])
        estimate, _ = observer.newton_invert(
            self.bench1.transform,
            self.bench1.transform(x),
            [0.0, 0.0],
            {'jacobian': 'fd'},
        )
        np.testing.assert_allclose(estimate, x, atol=1e-6)

    def test_step_halving(self):
        # The full Newton step from the guess leaves the domain of ln
        transform = maps.ExprMap(['ln(1+x1)'])
        estimate, _ = observer.newton_invert(transform, [-3.0], [0.0])
        np.testing.assert_allclose(estimate, [np.exp(-3.0) - 1], atol=1e-6)

    def test_no_solution(self):
        transform = maps.ExprMap(['x1^2+1'])
        with self.assertRaises(NewtonError) as context:
            observer.newton_invert(
                transform, [0.0], [0.1], {'max_iter': 20}
            )
        self.assertIn('iterations', context.exception.info)

    def test_guess_outside_domain(self):
        with self.assertRaises(NewtonError) as context:
            observer.newton_invert(
                self.bench1.transform, [0.0, 0.0], [-1.0, -1.0]
            )
        self.assertEqual(context.exception.info['iterations'], 0)


class TestSimulate(BaseTestCase):
    def test_error_decays(self):
        trajectory = observer.simulate(
            self.bench1.system,
            self.bench1.observer,
            self.bench1.transform,
            [-0.2, -0.1],
            [0.0, 0.0],
            80,
            inverse=self.bench1.inverse,
        )
        self.assertEqual(len(trajectory), 80)
        errors = trajectory.error_norms('e_z')
        self.assertGreater(errors[0], 0.1)
        self.assertLess(errors[-1], 1e-5)
        self.assertLess(trajectory.error_norms('e_x')[-1], 1e-4)
        np.testing.assert_allclose(
            trajectory.x_bar[-1], trajectory.x_hat[-1], atol=1e-5
        )

    def test_estimate_exact_from_matched_start(self):
        x0 = np.array([-0.3, -0.2])
        trajectory = observer.simulate(
            self.bench2.system,
            self.bench2.observer,
            self.bench2.transform,
            x0,
            self.bench2.transform(x0),
            20,
        )
        self.assertLess(np.max(trajectory.error_norms('e_z')), 1e-12)
        self.assertLess(np.max(trajectory.error_norms('e_x')), 1e-6)

    def test_rows(self):
        trajectory = observer.simulate(
            self.bench1.system,
            self.bench1.observer,
            self.bench1.transform,
            [-0.2, -0.1],
            [0.0, 0.0],
            3,
            inverse=self.bench1.inverse,
        )
        header = trajectory.header
        self.assertEqual(header[0], 't')
        self.assertIn('x_bar2', header)
        self.assertEqual(header[-3:], ['e_z_inf', 'e_x_inf', 'newton_iters'])
        rows = list(trajectory.rows())
        self.assertEqual(len(rows), 3)
        self.assertEqual([len(row) for row in rows], [len(header)] * 3)
        self.assertEqual(rows[2][0], 2)

    def test_zero_horizon(self):
        trajectory = observer.simulate(
            self.bench1.system,
            self.bench1.observer,
            self.bench1.transform,
            [-0.2, -0.1],
            [0.0, 0.0],
            0,
        )
        self.assertEqual(len(trajectory), 0)
        self.assertNotIn('x_bar1', trajectory.header)

    def test_newton_failure_reports_step(self):
        transform = maps.ExprMap(['x1^2+1', 'x2'])
        with self.assertRaises(NewtonError) as context:
            observer.simulate(
                self.bench1.system,
                self.bench1.observer,
                transform,
                [-0.2, -0.1],
                [0.0, 0.0],
                5,
                opts={'max_iter': 10},
            )
        self.assertEqual(context.exception.info['step'], 0)
        self.assertEqual(len(context.exception.info['trajectory']), 0)

    def test_wrong_initial_state(self):
        with self.assertRaises(ValueError):
            observer.simulate(
                self.bench1.system,
                self.bench1.observer,
                self.bench1.transform,
                [0.0],
                [0.0, 0.0],
                5,
            )

    def test_error_dynamics(self):
        deviation = observer.error_dynamics_check(
            self.bench1.system,
            self.bench1.observer,
            self.bench1.transform,
            [-0.2, -0.1],
            30,
        )
        self.assertLess(deviation, 1e-12)
        deviation = observer.error_dynamics_check(
            self.bench1.system,
            self.bench1.observer,
            maps.ExprMap(['x1', 'x2']),
            [-0.2, -0.1],
            30,
        )
        self.assertGreater(deviation, 1e-3)

    def test_error_decay_rate(self):
        trajectory = observer.simulate(
            self.bench1.system,
            self.bench1.observer,
            self.bench1.transform,
            [-0.2, -0.1],
            [0.0, 0.0],
            41,
        )
        times = np.arange(5, 41)
        errors = trajectory.error_norms('e_z')[5:41]
        slope = np.polyfit(times, np.log(errors), 1)[0]
        self.assertTrue(0.80 <= np.exp(slope) <= 0.88)

    def test_first_inverse_estimate(self):
        trajectory = observer.simulate(
            self.bench2.system,
            self.bench2.observer,
            self.bench2.transform,
            [-0.5, -0.4],
            [0.0, 0.0],
            5,
            inverse=self.bench2.inverse,
            x_bar0=[1.0, -0.4],
        )
        np.testing.assert_array_equal(trajectory.x_bar[0], [1.0, -0.4])
        np.testing.assert_allclose(
            trajectory.x_bar[1], self.bench2.inverse(trajectory.z[1])
        )
        row = next(trajectory.rows())
        index = trajectory.header.index('x_bar1')
        self.assertEqual(row[index:index + 2], [1.0, -0.4])

    def test_first_inverse_estimate_needs_inverse(self):
        with self.assertRaises(ValueError):
            observer.simulate(
                self.bench2.system,
                self.bench2.observer,
                self.bench2.transform,
                [-0.5, -0.4],
                [0.0, 0.0],
                5,
                x_bar0=[1.0, -0.4],
            )
