# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Run the observer: the plant ``x(t+1) = Phi(x(t))`` is simulated
together with the linear observer ``z(t+1) = A z(t) + b(y(t))`` and the
state estimate is recovered at every step by solving ``T(x) = z`` with
Newton's method, warm-started from the previous estimate.

    >>> from obslin import benchmarks, observer
    >>> bench = benchmarks.get('bench1')
    >>> x, iterations = observer.newton_invert(
    ...     bench.transform, [0.0, 0.0], [0.1, 0.1])
    >>> abs(x).max() < 1e-6, iterations <= 5
    (True, True)
"""
import logging

import numpy as np

from obslin import linalg, tools
from obslin.error import DomainError, NewtonError, SingularMatrixError
from obslin.maps import TransformMap

LOG_NEWTON_MSG = (
    u"(Newton) iteration %(iteration)s: |T(x) - z| = %(residual).3e, "
    u"|dx| = %(step).3e"
)
LOG_SIMULATE_MSG = (
    u"(simulate) %(horizon)s steps, final |e_x| = %(error_x).3e, "
    u"|e_z| = %(error_z).3e"
)

logger = logging.getLogger(__name__)

MAP_JACOBIAN = 'map'
FD_JACOBIAN = 'fd'


class NewtonOptions(tools.Options):
    """Options of :func:`newton_invert`: ``abs_tol`` and ``rel_tol``
    (1e-6), ``max_iter`` (50), ``jacobian`` (``'map'`` uses the map's own
    Jacobian, ``'fd'`` central differences of step ``fd_step``, 1e-6) and
    ``max_halvings`` (10) of the step when an iterate leaves the domain of
    the map.
    """

    _defaults = {
        'abs_tol': 1e-6,
        'rel_tol': 1e-6,
        'max_iter': 50,
        'fd_step': 1e-6,
        'jacobian': MAP_JACOBIAN,
        'max_halvings': 10,
    }

    def check(self, key, value):
        if key == 'jacobian':
            if value not in (MAP_JACOBIAN, FD_JACOBIAN):
                raise ValueError(
                    "The 'jacobian' option must be '{}' or '{}'".format(
                        MAP_JACOBIAN, FD_JACOBIAN
                    )
                )
            return value
        return super(NewtonOptions, self).check(key, value)


def _evaluate(transform, x, z):
    if not transform.contains(x):
        return None
    try:
        return transform(x) - z
    except DomainError:
        return None


def newton_invert(transform, z, x0, opts=None):
    """Solve ``transform(x) = z`` from the initial guess `x0`.

    Converged when ``|T(x) - z|_inf <= abs_tol`` and the last step
    ``|dx|_inf <= rel_tol (1 + |x|_inf)``. A step leading out of the domain
    of the map is halved up to ``max_halvings`` times.

    :return: ``(x, iterations)``
    :raise: :class:`obslin.error.NewtonError` (singular Jacobian, domain
        exit, iteration limit; ``info['iterations']`` holds the number of
        iterates computed)
    """
    opts = NewtonOptions(opts or {})
    z = np.asarray(z, dtype=float)
    x = np.array(x0, dtype=float)
    residual = _evaluate(transform, x, z)
    if residual is None:
        raise NewtonError(
            "Initial guess {} outside the domain of the map".format(
                x.tolist()
            ),
            {'iterations': 0, 'x': x.tolist()},
        )
    for iteration in range(1, opts['max_iter'] + 1):
        if opts['jacobian'] == MAP_JACOBIAN:
            jacobian = transform.jacobian(x)
        else:
            jacobian = TransformMap.jacobian(transform, x, opts['fd_step'])
        try:
            delta = linalg.lu_solve(jacobian, -residual)
        except SingularMatrixError:
            raise NewtonError(
                "Singular Jacobian at iteration {}".format(iteration),
                {'iterations': iteration - 1, 'x': x.tolist()},
            )
        scale = 1.0
        for _ in range(opts['max_halvings'] + 1):
            trial = _evaluate(transform, x + scale * delta, z)
            if trial is not None:
                break
            scale /= 2.0
        else:
            raise NewtonError(
                "Newton iterate left the domain of the map at iteration "
                "{}".format(iteration),
                {'iterations': iteration - 1, 'x': x.tolist()},
            )
        step = scale * delta
        x = x + step
        residual = trial
        size = float(np.max(np.abs(step)))
        logger.debug(
            LOG_NEWTON_MSG,
            {
                'iteration': iteration,
                'residual': float(np.max(np.abs(residual))),
                'step': size,
            },
        )
        converged = np.max(np.abs(residual)) <= opts['abs_tol']
        if converged and size <= opts['rel_tol'] * (1 + np.max(np.abs(x))):
            return x, iteration
    raise NewtonError(
        "Newton did not converge in {} iterations".format(opts['max_iter']),
        {'iterations': opts['max_iter'], 'x': x.tolist()},
    )


class Trajectory(object):
    """Closed-loop run of plant and observer. Every sequence has one entry
    per time step ``t = 0 .. horizon - 1``; ``e_z(t) = T(x(t)) - z(t)`` and
    ``e_x(t) = x(t) - x_hat(t)``. `x_bar` holds the estimates given by a
    closed-form inverse, when one was supplied.
    """

    def __init__(self, n, with_inverse=False):
        self.n = n
        self.with_inverse = with_inverse
        self.x = []
        self.y = []
        self.z = []
        self.x_hat = []
        self.x_bar = []
        self.e_z = []
        self.e_x = []
        self.newton_iterations = []

    def __len__(self):
        return len(self.x)

    def append(self, x, y, z, x_hat, e_z, iterations, x_bar=None):
        self.x.append(np.array(x))
        self.y.append(float(y))
        self.z.append(np.array(z))
        self.x_hat.append(np.array(x_hat))
        self.e_z.append(np.array(e_z))
        self.e_x.append(np.asarray(x) - np.asarray(x_hat))
        self.newton_iterations.append(int(iterations))
        if self.with_inverse:
            self.x_bar.append(np.array(x_bar))

    def error_norms(self, which='e_z'):
        """Infinity norms of ``e_z`` or ``e_x`` along the run."""
        return np.array(
            [np.max(np.abs(error)) for error in getattr(self, which)]
        )

    @property
    def header(self):
        def names(prefix):
            return ['{}{}'.format(prefix, i + 1) for i in range(self.n)]

        header = ['t'] + names('x') + ['y'] + names('z') + names('x_hat')
        if self.with_inverse:
            header += names('x_bar')
        return header + ['e_z_inf', 'e_x_inf', 'newton_iters']

    def rows(self):
        for t in range(len(self)):
            row = [t] + self.x[t].tolist() + [self.y[t]] + self.z[t].tolist()
            row += self.x_hat[t].tolist()
            if self.with_inverse:
                row += self.x_bar[t].tolist()
            row += [
                float(np.max(np.abs(self.e_z[t]))),
                float(np.max(np.abs(self.e_x[t]))),
                self.newton_iterations[t],
            ]
            yield row


def simulate(
    system,
    observer,
    transform,
    x0,
    z0,
    horizon,
    opts=None,
    guess=None,
    inverse=None,
    x_bar0=None,
):
    """Simulate `horizon` steps of the plant started at `x0` and of the
    observer started at `z0`. The estimate ``x_hat(t)`` solves
    ``transform(x_hat) = z(t)`` by Newton's method started at `guess`
    (default ``(0.1, ..., 0.1)``) for ``t = 0`` and at ``x_hat(t - 1)``
    afterwards. When `inverse` is given, ``x_bar(t) = inverse(z(t))`` is
    recorded as well, except ``x_bar(0)`` which is `x_bar0` when supplied.

    :return: a :class:`Trajectory`
    :raise: :class:`obslin.error.NewtonError` (``info['step']`` is the
        failing time step, ``info['trajectory']`` the steps already done),
        :class:`obslin.error.DomainError`,
        `ValueError` (bad dimensions, `x_bar0` without `inverse`)
    """
    n = system.n
    for vector in (x0, z0):
        if len(vector) != n:
            raise ValueError("Initial states must have {} entries".format(n))
    if x_bar0 is not None:
        if inverse is None:
            raise ValueError("x_bar0 requires a closed-form inverse")
        if len(x_bar0) != n:
            raise ValueError("x_bar0 must have {} entries".format(n))
    trajectory = Trajectory(n, inverse is not None)
    x = np.array(x0, dtype=float)
    z = np.array(z0, dtype=float)
    estimate = np.full(n, 0.1) if guess is None else np.array(guess, float)
    for t in range(horizon):
        y = system.output(x)
        try:
            estimate, iterations = newton_invert(transform, z, estimate, opts)
        except NewtonError as exc:
            exc.info.update(step=t, trajectory=trajectory)
            raise NewtonError(
                "Step {}: {}".format(t, exc.message), exc.info
            )
        x_bar = None
        if t == 0 and x_bar0 is not None:
            x_bar = np.array(x_bar0, dtype=float)
        elif inverse is not None:
            x_bar = inverse(z)
        trajectory.append(
            x, y, z, estimate, transform(x) - z, iterations, x_bar
        )
        if t + 1 < horizon:
            x, z = system.step(x), observer.advance(z, y)
    if horizon:
        logger.info(
            LOG_SIMULATE_MSG,
            {
                'horizon': horizon,
                'error_x': trajectory.error_norms('e_x')[-1],
                'error_z': trajectory.error_norms('e_z')[-1],
            },
        )
    return trajectory


def error_dynamics_check(system, observer, transform, x0, horizon, z0=None):
    """Follow the plant from `x0` and the observer from `z0` (default 0)
    and return ``max_t |e(t+1) - A e(t)|_inf`` with
    ``e(t) = transform(x(t)) - z(t)``. The deviation vanishes for an exact
    transformation; the empty maximum is 0.

    :raise: :class:`obslin.error.DomainError`
    """
    x = np.array(x0, dtype=float)
    z = np.zeros(system.n) if z0 is None else np.array(z0, dtype=float)
    previous = None
    worst = 0.0
    for t in range(horizon):
        error = transform(x) - z
        if previous is not None:
            deviation = error - observer.A @ previous
            worst = max(worst, float(np.max(np.abs(deviation))))
        previous = error
        if t + 1 < horizon:
            x, z = system.step(x), observer.advance(z, system.output(x))
    return worst
