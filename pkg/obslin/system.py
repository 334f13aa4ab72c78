# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""This module contains the :class:`DiscreteSystem` (the plant
``x(t+1) = Phi(x(t))``, ``y(t) = h(x(t))``) and :class:`ObserverSpec` (the
target dynamics ``z(t+1) = A z(t) + b(y(t))``) classes, and the checks of the
hypotheses under which the observer transformation exists.

    >>> from obslin.system import DiscreteSystem, ObserverSpec
    >>> plant = DiscreteSystem(['0.5*x1', 'x1+0.2*x2'], 'x2')
    >>> plant.step([1.0, 0.0])
    array([0.5, 1. ])
    >>> observer = ObserverSpec([[0.1]], ['-y'])
    >>> observer.injection(0.5)
    array([-0.5])
"""
import logging
import math

import numpy as np

from obslin import expr, linalg, tools
from obslin.error import AssumptionError, DomainError

LOG_FD_MISMATCH_MSG = (
    u"(linearize) %(what)s: central differences with step %(step)s and "
    u"%(half)s differ by %(gap)s"
)

logger = logging.getLogger(__name__)

EQUILIBRIUM_TOL = 1e-10
FD_STEP = 1e-6
FD_CROSS_TOL = 1e-6
RESONANCE_TOL = 1e-9
MAX_RESONANCE_DEGREE = 60

PASS = 'PASS'
FAIL = 'FAIL'
WARNING = 'WARNING'


def _parse_all(items, arity, names=None):
    return tuple(
        item
        if isinstance(item, expr.ExprNode)
        else expr.parse(str(item), arity, names)
        for item in items
    )


class DiscreteSystem(object):
    """Autonomous discrete-time plant.

    `phi` holds one expression per state component and `h` the scalar
    output, both in the variables ``x1..xn`` (as text or
    :class:`obslin.expr.ExprNode`). The equilibrium is the origin.

    :raise: :class:`obslin.error.AssumptionError` (the origin is not an
        equilibrium, or the output does not vanish there)
    """

    def __init__(self, phi, h, name=None):
        n = len(phi)
        if n < 1:
            raise ValueError("A system needs at least one state")
        self.name = name
        self._phi = _parse_all(phi, n)
        self._h = _parse_all([h], n)[0]
        self._equilibrium = np.zeros(n)
        image = self.step(self._equilibrium)
        if np.max(np.abs(image - self._equilibrium)) > EQUILIBRIUM_TOL:
            raise AssumptionError(
                "The origin is not an equilibrium: Phi(0) = {}".format(
                    image.tolist()
                ),
                {'image': image.tolist()},
            )
        output = self.output(self._equilibrium)
        if abs(output) > EQUILIBRIUM_TOL:
            raise AssumptionError(
                "The output does not vanish at the origin: h(0) = "
                "{}".format(output),
                {'output': output},
            )

    @property
    def n(self):
        """State dimension."""
        return len(self._phi)

    @property
    def phi(self):
        return self._phi

    @property
    def h(self):
        return self._h

    @property
    def equilibrium(self):
        return self._equilibrium.copy()

    def step(self, x):
        """Return ``Phi(x)``.

        :raise: :class:`obslin.error.DomainError` (``info['component']``
            names the failing component)
        """
        x = np.asarray(x, dtype=float)
        image = np.empty(self.n)
        for i, node in enumerate(self._phi):
            try:
                image[i] = expr.evaluate(node, x)
            except DomainError as exc:
                exc.info['component'] = i
                raise
        return image

    def output(self, x):
        """Return ``h(x)``."""
        return expr.evaluate(self._h, np.asarray(x, dtype=float))

    def step_batch(self, points):
        return np.array([self.step(x) for x in points]).reshape(-1, self.n)

    def output_batch(self, points):
        return np.array([self.output(x) for x in points])

    def __repr__(self):
        return "DiscreteSystem({}, h={})".format(
            [expr.to_text(node) for node in self._phi],
            expr.to_text(self._h),
        )


class ObserverSpec(object):
    """Observer design: the matrix `A` and the output injection `b`, one
    expression per component in the variable ``y``.

    :raise: :class:`obslin.error.AssumptionError` (``A`` not Schur stable,
        ``b(0) != 0``)
    """

    def __init__(self, A, b):
        A = linalg.as_matrix(A)
        if A.shape != (A.shape[0], A.shape[0]) or A.shape[0] != len(b):
            raise ValueError(
                "A must be square with as many rows as b has components"
            )
        self._A = A
        self._A.flags.writeable = False
        self._b = _parse_all(b, 1, ('y',))
        radius = linalg.spectral_radius(A)
        if not radius < 1.0:
            raise AssumptionError(
                "The observer is unstable: spectral radius of A is "
                "{:.6g}".format(radius),
                {'spectral_radius': radius},
            )
        origin = self.injection(0.0)
        if np.max(np.abs(origin)) > EQUILIBRIUM_TOL:
            raise AssumptionError(
                "The output injection does not vanish at 0: b(0) = "
                "{}".format(origin.tolist()),
                {'injection': origin.tolist()},
            )

    @property
    def n(self):
        return self._A.shape[0]

    @property
    def A(self):
        return self._A

    @property
    def b(self):
        return self._b

    def injection(self, y):
        """Return ``b(y)``."""
        return np.array([expr.evaluate(node, [y]) for node in self._b])

    def injection_batch(self, outputs):
        return np.array([self.injection(y) for y in outputs]).reshape(
            -1, self.n
        )

    def advance(self, z, y):
        """Return ``A z + b(y)``."""
        return self._A @ np.asarray(z, dtype=float) + self.injection(y)

    def __repr__(self):
        return "ObserverSpec(A={}, b={})".format(
            self._A.tolist(), [expr.to_text(node) for node in self._b]
        )


class LinearizationData(object):
    """Jacobians at the equilibrium: ``F = dPhi/dx``, ``H = dh/dx``
    (``1 x n``) and ``B = db/dy`` (``n x 1``).
    """

    def __init__(self, F, H, B):
        self.F = linalg.as_matrix(F)
        self.H = linalg.as_matrix(H).reshape(1, -1)
        self.B = linalg.as_matrix(B).reshape(-1, 1)

    @property
    def n(self):
        return self.F.shape[0]

    def __repr__(self):
        return "LinearizationData(F={}, H={}, B={})".format(
            self.F.tolist(), self.H.tolist(), self.B.tolist()
        )


def _central_difference(fun, point, step):
    point = np.asarray(point, dtype=float)
    columns = []
    for k in range(point.size):
        shift = np.zeros(point.size)
        shift[k] = step
        forward = np.atleast_1d(fun(point + shift))
        backward = np.atleast_1d(fun(point - shift))
        columns.append((forward - backward) / (2 * step))
    return np.column_stack(columns)


def _checked_difference(what, fun, point, step):
    full = _central_difference(fun, point, step)
    half = _central_difference(fun, point, step / 2)
    gap = float(np.max(np.abs(full - half)))
    if gap > FD_CROSS_TOL:
        logger.warning(
            LOG_FD_MISMATCH_MSG,
            {'what': what, 'step': step, 'half': step / 2, 'gap': gap},
        )
    return full


def linearize(system, observer, step=FD_STEP):
    """Return the :class:`LinearizationData` of `system` and `observer` at
    the origin, by central finite differences. Each Jacobian is recomputed
    with half the step and a warning is logged when both disagree by more
    than ``1e-6``.

        >>> from obslin import benchmarks, system
        >>> bench = benchmarks.get('bench1')
        >>> lin = system.linearize(bench.system, bench.observer)
        >>> lin.F.round(6) + 0.0
        array([[ 0. , -0.2],
               [ 0.5,  0.9]])

    :raise: :class:`obslin.error.DomainError`
    """
    origin = system.equilibrium
    F = _checked_difference('F', system.step, origin, step)
    H = _checked_difference('H', system.output, origin, step)
    B = _checked_difference(
        'B', lambda y: observer.injection(y[0]), [0.0], step
    )
    return LinearizationData(F, H, B)


def check_observability(lin):
    """Rank test of the observability matrix ``[H; HF; ...; HF^(n-1)]``.

    :return: ``(ok, report)`` where the report holds the rank
    """
    rank = linalg.rank(linalg.observability_matrix(lin.H, lin.F))
    return rank == lin.n, {'rank': rank, 'n': lin.n}


def check_controllability(lin, observer):
    """Rank test of the controllability matrix ``[B, AB, ...]`` of the
    observer pair ``(A, B)``.

    :return: ``(ok, report)``
    """
    rank = linalg.rank(linalg.controllability_matrix(observer.A, lin.B))
    return rank == observer.n, {'rank': rank, 'n': observer.n}


def check_stability(observer):
    """:return: ``(ok, report)`` with the spectral radius of ``A``"""
    radius = linalg.spectral_radius(observer.A)
    return radius < 1.0, {'spectral_radius': radius}


def _resonance_bound(k_max, lambdas):
    nonzero = [abs(value) for value in lambdas if abs(value) > RESONANCE_TOL]
    if not nonzero or k_max <= RESONANCE_TOL:
        return 0
    ratio = math.log(min(nonzero)) / math.log(k_max)
    return max(1, int(math.ceil(ratio)) + 1)


def check_resonance(lin, observer):
    """Look for a resonance ``prod_i k_i^m_i = lambda_j`` (``sum m_i > 0``)
    between the eigenvalues ``k`` of ``F`` and ``lambda`` of ``A``.

    When the spectrum of ``F`` lies inside the unit disc, products shrink
    with the degree and only degrees up to
    ``ceil(ln(min|lambda|) / ln(max|k|)) + 1`` are enumerated. Otherwise the
    test is not conclusive and a ``WARNING`` is returned.

        >>> from obslin import system
        >>> lin = system.LinearizationData([[0.5]], [[1.0]], [[1.0]])
        >>> obs = system.ObserverSpec([[0.25]], ['y'])
        >>> status, report = system.check_resonance(lin, obs)
        >>> status, report['multi_index'], report['eigenvalue_index']
        ('FAIL', (2,), 1)

    :return: ``(status, report)``, status being ``PASS``, ``FAIL`` or
        ``WARNING``; ``eigenvalue_index`` is 1-based
    """
    ks = linalg.eigenvalues(lin.F)
    lambdas = linalg.eigenvalues(observer.A)
    report = {
        'k': [complex(value) for value in ks],
        'lambda': [complex(value) for value in lambdas],
    }
    k_max = max(abs(value) for value in ks)
    if k_max >= 1.0 - RESONANCE_TOL:
        report['reason'] = 'outside Poincare domain'
        return WARNING, report
    n = len(ks)
    # Products vanish only through a zero k_i
    for i, k in enumerate(ks):
        if abs(k) > RESONANCE_TOL:
            continue
        for j, lam in enumerate(lambdas):
            if abs(lam) <= RESONANCE_TOL:
                multi_index = tuple(int(i == p) for p in range(n))
                report.update(
                    multi_index=multi_index, eigenvalue_index=j + 1
                )
                return FAIL, report
    bound = _resonance_bound(k_max, lambdas)
    report['max_degree'] = bound
    if bound > MAX_RESONANCE_DEGREE:
        report['reason'] = 'degree bound above {}'.format(
            MAX_RESONANCE_DEGREE
        )
        return WARNING, report
    candidates = [
        (j, lam) for j, lam in enumerate(lambdas) if abs(lam) > RESONANCE_TOL
    ]
    for degree in range(1, bound + 1):
        for multi_index in tools.multi_indices(n, degree):
            product = complex(1.0)
            for k, power in zip(ks, multi_index):
                product *= k ** power
            for j, lam in candidates:
                if abs(product - lam) <= RESONANCE_TOL:
                    report.update(
                        multi_index=multi_index, eigenvalue_index=j + 1
                    )
                    return FAIL, report
    return PASS, report


def phase_target(lin, observer):
    """Solve ``J F - A J = B H``, the Jacobian of the transformation at the
    origin.
    """
    return linalg.sylvester_solve(lin.F, observer.A, lin.B @ lin.H)

