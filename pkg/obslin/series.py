# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Power-series solution of ``T(Phi(x)) = A T(x) + b(h(x))``, ``T(0) = 0``.

The Taylor coefficients of ``T`` are computed degree by degree. At degree
``N`` the unknown coefficients ``X`` (``n x s_N``, one column per monomial
of degree ``N``) satisfy the linear system

    X P_N - A X = G_N - sum_{|beta| < N} C_beta P_beta[N]

where ``P_beta`` is the expansion of ``Phi(x)^beta``, ``P_N`` gathers the
degree-``N`` coefficients of ``Phi^beta`` for ``|beta| = N``, ``G_N`` those
of ``b(h(x))`` and ``C_beta`` the coefficients already known.

    >>> from obslin import benchmarks, series
    >>> bench = benchmarks.get('bench1')
    >>> T = series.solve_series(bench.system, bench.observer, 2)
    >>> sorted((k, round(v, 8)) for k, v in T.components()[1].coefficients(
    ...     1e-10).items())
    [((0, 1), 1.0)]
"""
import logging

import numpy as np

from obslin import expr, linalg, tools
from obslin.error import ResonanceError, SingularMatrixError
from obslin.maps import TransformMap
from obslin.taylor import TruncatedSeries

LOG_DEGREE_MSG = u"(series) degree %(degree)s: %(unknowns)s unknowns solved"

logger = logging.getLogger(__name__)

MAX_ORDER = 10


class PolyMap(TransformMap):
    """Polynomial map with zero constant term: the ``n x S`` matrix
    `coefficients` holds one row per component in the graded layout of
    :func:`obslin.tools.graded_indices`.
    """

    kind = 'polynomial'

    def __init__(self, n, order, coefficients):
        super(PolyMap, self).__init__(n)
        indices = tools.graded_indices(n, order)
        coefficients = np.array(coefficients, dtype=float)
        if coefficients.shape != (n, len(indices)):
            raise ValueError(
                "Expected a {}x{} coefficient matrix".format(n, len(indices))
            )
        coefficients[:, 0] = 0.0
        coefficients.flags.writeable = False
        self.order = order
        self.coefficients = coefficients
        self._exponents = np.array(indices, dtype=float)

    def components(self):
        """Return one :class:`obslin.taylor.TruncatedSeries` per
        component.
        """
        return [
            TruncatedSeries(self.n, self.order, row)
            for row in self.coefficients
        ]

    def _monomials(self, points):
        return np.prod(
            points[:, None, :] ** self._exponents[None, :, :], axis=2
        )

    def __call__(self, x):
        return self.evaluate_batch(np.asarray(x, dtype=float)[None, :])[0]

    def evaluate_batch(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return self._monomials(points) @ self.coefficients.T

    def jacobian(self, x, step=None):
        x = np.asarray(x, dtype=float)
        result = np.empty((self.n, self.n))
        for k in range(self.n):
            exponents = self._exponents.copy()
            factors = exponents[:, k].copy()
            exponents[:, k] = np.maximum(exponents[:, k] - 1, 0)
            derivative = factors * np.prod(x ** exponents, axis=1)
            result[:, k] = self.coefficients @ derivative
        return result

    def to_dict(self):
        indices = tools.graded_indices(self.n, self.order)[1:]
        return {
            'kind': self.kind,
            'n': self.n,
            'order': self.order,
            'components': [
                [[list(alpha), float(c)] for alpha, c in zip(indices, row)]
                for row in self.coefficients[:, 1:]
            ],
        }

    @classmethod
    def from_dict(cls, data):
        n, order = data['n'], data['order']
        position = {
            alpha: i
            for i, alpha in enumerate(tools.graded_indices(n, order))
        }
        coefficients = np.zeros((n, len(position)))
        for j, terms in enumerate(data['components']):
            for alpha, value in terms:
                coefficients[j, position[tuple(alpha)]] = value
        return cls(n, order, coefficients)


def _power_table(phi_series, n, order):
    """Coefficient vectors of ``Phi(x)^beta`` for every multi-index
    ``beta`` of the graded layout, one row per ``beta``.
    """
    indices = tools.graded_indices(n, order)
    powers = {indices[0]: TruncatedSeries.constant(1.0, n, order)}
    for alpha in indices[1:]:
        i = next(p for p, power in enumerate(alpha) if power)
        lower = tuple(power - (p == i) for p, power in enumerate(alpha))
        powers[alpha] = powers[lower] * phi_series[i]
    return np.array([powers[alpha].coefficient_vector for alpha in indices])


def solve_series(system, observer, order):
    """Taylor coefficients of the transformation up to total degree `order`.

    Degree 1 is the Sylvester solve of ``J F - A J = B H``; every higher
    degree is a dense linear system of ``n s_N`` unknowns.

    :return: a :class:`PolyMap`
    :raise: :class:`obslin.error.ResonanceError` (singular degree-``N``
        operator, ``info['degree']``),
        :class:`obslin.error.SpectraOverlapError` (degree 1),
        :class:`obslin.error.DomainError`, `ValueError` (`order` outside
        ``1..10``)
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(
            "The order must lie between 1 and {}".format(MAX_ORDER)
        )
    n = system.n
    origin = np.zeros(n)
    phi_series = [expr.series_eval(node, origin, order) for node in system.phi]
    output = expr.series_eval(system.h, origin, order)
    injection = np.array(
        [
            expr.evaluate_series(node, [output]).coefficient_vector
            for node in observer.b
        ]
    )
    powers = _power_table(phi_series, n, order)
    A = observer.A
    C = np.zeros((n, len(tools.graded_indices(n, order))))
    for degree in range(1, order + 1):
        block = tools.degree_slice(n, degree)
        known = slice(1, block.start)
        rhs = injection[:, block] - C[:, known] @ powers[known, block]
        operator = powers[block, block]
        if degree == 1:
            solution = linalg.sylvester_solve(operator, A, rhs)
        else:
            try:
                vec = linalg.lu_solve(
                    linalg.sylvester_operator(operator, A),
                    rhs.ravel(order='F'),
                )
            except SingularMatrixError as exc:
                raise ResonanceError(
                    "Resonance at degree {}: the linear operator is "
                    "singular".format(degree),
                    dict(exc.info, degree=degree),
                )
            solution = vec.reshape(rhs.shape, order='F')
        C[:, block] = solution
        logger.debug(
            LOG_DEGREE_MSG, {'degree': degree, 'unknowns': solution.size}
        )
    return PolyMap(n, order, C)


def eval_polymap(polymap, x):
    """Evaluate `polymap` at the point `x`."""
    return polymap(x)
