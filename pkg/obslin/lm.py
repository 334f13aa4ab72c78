# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Levenberg-Marquardt minimizer of ``sum(r(x)**2)`` with a forward
finite-difference Jacobian and Marquardt scaling of the damping term.

    >>> import numpy as np
    >>> from obslin import lm
    >>> fit = lm.minimize(lambda a: a[0] * np.array([1., 2., 3.]) - [2, 4, 6],
    ...                   [0.0])
    >>> round(float(fit.x[0]), 10)
    2.0
    >>> fit.reason
    'cost-tol'
"""
import logging

import numpy as np

from obslin import linalg, tools
from obslin.error import DomainError, SingularMatrixError

LOG_ITERATION_MSG = (
    u"(LM) iteration %(iteration)s: cost %(cost).6e, damping %(damping).1e, "
    u"%(nfev)s evaluations"
)
LOG_DONE_MSG = (
    u"(LM) %(reason)s after %(iterations)s iterations and %(nfev)s "
    u"evaluations, cost %(cost).6e"
)

logger = logging.getLogger(__name__)

STEP_TOL = 'step-tol'
COST_TOL = 'cost-tol'
COST_RTOL = 'cost-rtol'
MAX_ITER = 'max-iter'
MAX_FEVAL = 'max-feval'
DAMPING_LIMIT = 'damping-limit'
BUDGET_REASONS = (MAX_ITER, MAX_FEVAL)


class LmOptions(tools.Options):
    """Options of :func:`minimize`.

    ``max_fev``: budget of residual evaluations (500000),
    ``max_iter``: maximum number of damped solves (50000),
    ``fd_step``: forward-difference step (1e-5, below 1),
    ``step_tol``: stop when ``max|delta|`` falls below it (1e-12),
    ``damping``: initial damping (1e-3), multiplied by ``damping_up`` on a
    rejected step and divided by ``damping_down`` on an accepted one (10),
    ``damping_max``: ceiling of the damping (1e12),
    ``cost_tol``: stop when the cost falls below it (1e-14),
    ``cost_rtol``: stop when an accepted step decreases the cost by less than
    this relative amount (0, disabled).
    """

    _defaults = {
        'max_fev': 500000,
        'max_iter': 50000,
        'fd_step': 1e-5,
        'step_tol': 1e-12,
        'damping': 1e-3,
        'damping_up': 10.0,
        'damping_down': 10.0,
        'damping_max': 1e12,
        'cost_tol': 1e-14,
        'cost_rtol': 0.0,
    }

    def check(self, key, value):
        if key == 'cost_rtol':
            value = float(value)
            if value < 0:
                raise ValueError("The 'cost_rtol' option must be >= 0")
            return value
        value = super(LmOptions, self).check(key, value)
        if key == 'fd_step' and not value < 1:
            raise ValueError("The 'fd_step' option must be below 1")
        return value


class LmResult(object):
    """Outcome of :func:`minimize`: final parameters `x`, `cost` (sum of
    squared residuals at `x`), `iterations`, `nfev`, termination `reason`
    and the `history` of accepted costs (initial cost first).
    """

    def __init__(self, x, cost, iterations, nfev, reason, history):
        self.x = x
        self.cost = cost
        self.iterations = iterations
        self.nfev = nfev
        self.reason = reason
        self.history = history

    @property
    def exhausted(self):
        """`True` when the minimizer ran out of budget."""
        return self.reason in BUDGET_REASONS

    def to_dict(self):
        return {
            'cost': self.cost,
            'iterations': self.iterations,
            'nfev': self.nfev,
            'reason': self.reason,
        }

    def __repr__(self):
        return "LmResult(cost={:.6e}, iterations={}, reason={!r})".format(
            self.cost, self.iterations, self.reason
        )


def fd_jacobian(residual_fn, x, step, base=None):
    """Forward-difference Jacobian of `residual_fn` at `x`: column ``j`` is
    ``(r(x + step e_j) - r(x)) / step``. `base` may hold ``r(x)`` already.

    :raise: :class:`obslin.error.DomainError` (``info['column']`` names the
        perturbed parameter)
    """
    x = np.asarray(x, dtype=float)
    if base is None:
        base = np.asarray(residual_fn(x), dtype=float)
    jacobian = np.empty((base.size, x.size))
    for j in range(x.size):
        shifted = x.copy()
        shifted[j] += step
        try:
            jacobian[:, j] = (np.asarray(residual_fn(shifted)) - base) / step
        except DomainError as exc:
            exc.info['column'] = j
            raise
    return jacobian


def _trial(residual_fn, x):
    try:
        residual = np.asarray(residual_fn(x), dtype=float)
    except DomainError:
        return None
    if not np.all(np.isfinite(residual)):
        return None
    return residual


def minimize(residual_fn, x0, opts=None):
    """Minimize ``sum(residual_fn(x)**2)`` starting from `x0`.

    Each iteration solves
    ``(J'J + damping * diag(J'J)) delta = -J'r``. A step is accepted when
    it decreases the cost (the damping is then divided by
    ``damping_down`` and the Jacobian recomputed), otherwise it is rejected
    and the damping multiplied by ``damping_up``. A trial point outside the
    domain of `residual_fn` counts as a rejection.

    Termination reasons: ``step-tol``, ``cost-tol``, ``cost-rtol``,
    ``max-iter``, ``max-feval`` and ``damping-limit``. The best iterate is
    always returned; the evaluation count never exceeds ``max_fev``.

    :return: a :class:`LmResult`
    :raise: :class:`obslin.error.DomainError` (`residual_fn` undefined at
        `x0`, or at a finite-difference evaluation)
    """
    opts = LmOptions(opts or {})
    x = np.array(x0, dtype=float)
    residual = np.asarray(residual_fn(x), dtype=float)
    nfev = 1
    cost = float(residual @ residual)
    history = [cost]
    damping = opts['damping']
    iterations = 0
    jacobian = None
    reason = None
    if cost < opts['cost_tol']:
        reason = COST_TOL
    elif nfev + x.size > opts['max_fev']:
        reason = MAX_FEVAL
    else:
        jacobian = fd_jacobian(residual_fn, x, opts['fd_step'], residual)
        nfev += x.size
    while reason is None:
        if iterations >= opts['max_iter']:
            reason = MAX_ITER
            break
        if nfev + 1 > opts['max_fev']:
            reason = MAX_FEVAL
            break
        normal = jacobian.T @ jacobian
        gradient = jacobian.T @ residual
        scale = np.diag(normal).copy()
        scale[scale == 0.0] = 1.0
        iterations += 1
        try:
            delta = linalg.lu_solve(
                normal + damping * np.diag(scale), -gradient
            )
        except SingularMatrixError:
            delta = None
        if delta is not None and np.max(np.abs(delta)) < opts['step_tol']:
            reason = STEP_TOL
            break
        trial = None
        if delta is not None:
            trial = _trial(residual_fn, x + delta)
            nfev += 1
        trial_cost = float(trial @ trial) if trial is not None else None
        if trial_cost is not None and trial_cost < cost:
            decrease = (cost - trial_cost) / cost
            x = x + delta
            residual, cost = trial, trial_cost
            history.append(cost)
            damping /= opts['damping_down']
            logger.debug(
                LOG_ITERATION_MSG,
                {
                    'iteration': iterations,
                    'cost': cost,
                    'damping': damping,
                    'nfev': nfev,
                },
            )
            if cost < opts['cost_tol']:
                reason = COST_TOL
            elif opts['cost_rtol'] and decrease < opts['cost_rtol']:
                reason = COST_RTOL
            elif nfev + x.size > opts['max_fev']:
                reason = MAX_FEVAL
            else:
                jacobian = fd_jacobian(
                    residual_fn, x, opts['fd_step'], residual
                )
                nfev += x.size
        else:
            damping *= opts['damping_up']
            if damping > opts['damping_max']:
                reason = DAMPING_LIMIT
    values = {
        'reason': reason,
        'iterations': iterations,
        'nfev': nfev,
        'cost': cost,
    }
    if reason in BUDGET_REASONS:
        logger.warning(LOG_DONE_MSG, values)
    else:
        logger.info(LOG_DONE_MSG, values)
    return LmResult(x, cost, iterations, nfev, reason, history)
