# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Provide the :class:`TruncatedSeries` class, a multivariate Taylor
polynomial truncated at a total degree ``K``.

Coefficients are stored in a flat `numpy` vector following the
graded-lexicographic layout of :func:`obslin.tools.graded_indices`:

    >>> from obslin.taylor import TruncatedSeries
    >>> x1 = TruncatedSeries.variable(0, 2, 3)
    >>> x2 = TruncatedSeries.variable(1, 2, 3)
    >>> s = (1 + x1) * (1 - x2)
    >>> s.coefficients()
    {(0, 0): 1.0, (1, 0): 1.0, (0, 1): -1.0, (1, 1): -1.0}
"""
import functools
import math

import numpy as np

from obslin import tools
from obslin.error import DomainError, InternalError


@functools.lru_cache(maxsize=None)
def _product_table(n, order):
    """Index table of the truncated product: for every pair of monomials
    whose degrees sum to at most `order`, the position of the product.
    """
    indices = tools.graded_indices(n, order)
    position = {alpha: i for i, alpha in enumerate(indices)}
    left, right, target = [], [], []
    for i, alpha in enumerate(indices):
        for j, beta in enumerate(indices):
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            if sum(gamma) <= order:
                left.append(i)
                right.append(j)
                target.append(position[gamma])
    return (
        np.array(left, dtype=np.intp),
        np.array(right, dtype=np.intp),
        np.array(target, dtype=np.intp),
    )


@functools.lru_cache(maxsize=None)
def _exponents(n, order):
    return np.array(tools.graded_indices(n, order), dtype=float).reshape(
        -1, n
    )


class TruncatedSeries(object):
    """Taylor polynomial in `n` variables truncated at total degree `order`,
    expanded about `center`.

    Instances are immutable; arithmetic returns new series and closes over
    the same ``(n, order, center)``. Python numbers are promoted to constant
    series.
    """

    __array_priority__ = 100

    def __init__(self, n, order, coefficients=None, center=None):
        if order < 0:
            raise ValueError("The truncation order must be non-negative")
        if n < 1:
            raise ValueError("The number of variables must be positive")
        self._n = n
        self._order = order
        size = len(tools.graded_indices(n, order))
        if coefficients is None:
            coefficients = np.zeros(size)
        coefficients = np.array(coefficients, dtype=float)
        if coefficients.shape != (size,):
            raise ValueError(
                "Expected {} coefficients, got {}".format(
                    size, coefficients.shape
                )
            )
        coefficients.flags.writeable = False
        self._coefficients = coefficients
        if center is None:
            center = np.zeros(n)
        center = np.array(center, dtype=float)
        center.flags.writeable = False
        self._center = center

    @classmethod
    def constant(cls, value, n, order, center=None):
        """Return the constant series `value`."""
        series = np.zeros(len(tools.graded_indices(n, order)))
        series[0] = value
        return cls(n, order, series, center)

    @classmethod
    def variable(cls, index, n, order, center=None):
        """Return the series of the variable `index` (0-based) about
        `center`: ``center[index] + (x[index] - center[index])``.
        """
        if not 0 <= index < n:
            raise ValueError("Variable index out of range")
        series = np.zeros(len(tools.graded_indices(n, order)))
        if center is not None:
            series[0] = center[index]
        if order >= 1:
            series[1 + index] = 1.0
        return cls(n, order, series, center)

    n = property(lambda self: self._n, doc="Number of variables.")
    order = property(lambda self: self._order, doc="Truncation order.")
    center = property(lambda self: self._center, doc="Expansion point.")

    @property
    def coefficient_vector(self):
        """Read-only coefficient vector in graded-lexicographic layout."""
        return self._coefficients

    @property
    def constant_term(self):
        return float(self._coefficients[0])

    def __getitem__(self, alpha):
        """Return the coefficient of the monomial with exponent `alpha`
        (0 if the degree of `alpha` exceeds the truncation order).
        """
        alpha = tuple(alpha)
        if len(alpha) != self._n:
            raise ValueError("Multi-index of wrong length")
        if sum(alpha) > self._order:
            return 0.0
        indices = tools.graded_indices(self._n, self._order)
        return float(self._coefficients[indices.index(alpha)])

    def coefficients(self, tol=0.0):
        """Return the non-zero coefficients as a dictionary keyed by
        multi-index, in graded-lexicographic order.
        """
        indices = tools.graded_indices(self._n, self._order)
        return {
            alpha: float(value)
            for alpha, value in zip(indices, self._coefficients)
            if abs(value) > tol
        }

    def degree_part(self, degree):
        """Return the coefficients of the homogeneous part of `degree`."""
        return self._coefficients[tools.degree_slice(self._n, degree)]

    def _like(self, coefficients):
        return TruncatedSeries(
            self._n, self._order, coefficients, self._center
        )

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if (
                other._n != self._n
                or other._order != self._order
                or not np.array_equal(other._center, self._center)
            ):
                raise InternalError(
                    "Series arithmetic requires the same variables, order "
                    "and center"
                )
            return other
        return TruncatedSeries.constant(
            float(other), self._n, self._order, self._center
        )

    def __add__(self, other):
        other = self._coerce(other)
        return self._like(self._coefficients + other._coefficients)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self._coefficients)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + -self._coerce(other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self._like(self._coefficients * float(other))
        other = self._coerce(other)
        left, right, target = _product_table(self._n, self._order)
        products = self._coefficients[left] * other._coefficients[right]
        return self._like(
            np.bincount(
                target, weights=products, minlength=len(self._coefficients)
            )
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = float(other)
            if other == 0.0:
                raise DomainError("Division by zero")
            return self._like(self._coefficients / other)
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Only non-negative integer exponents")
        result = TruncatedSeries.constant(
            1.0, self._n, self._order, self._center
        )
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def compose_univariate(self, taylor_coefficients):
        """Return ``f(self)`` where ``f(g0 + h) = sum c_k h^k`` is given by
        its Taylor coefficients ``c_k`` about the constant term ``g0`` of
        this series. Horner evaluation; terms beyond the truncation order
        vanish since ``h`` has no constant term.
        """
        shift = self._coefficients.copy()
        shift[0] = 0.0
        shift = self._like(shift)
        result = self._like(np.zeros(len(self._coefficients)))
        for c in reversed(list(taylor_coefficients)[: self._order + 1]):
            result = result * shift + c
        return result

    def reciprocal(self):
        g0 = self.constant_term
        if g0 == 0.0:
            raise DomainError("Division by zero")
        return self.compose_univariate(
            (-1.0) ** k / g0 ** (k + 1) for k in range(self._order + 1)
        )

    def exp(self):
        g0 = self.constant_term
        try:
            e0 = math.exp(g0)
        except OverflowError:
            raise DomainError("Overflow in exp")
        return self.compose_univariate(
            e0 / math.factorial(k) for k in range(self._order + 1)
        )

    def log(self):
        g0 = self.constant_term
        if not g0 > 0.0:
            raise DomainError("Logarithm of a non-positive number")
        coefficients = [math.log(g0)]
        coefficients.extend(
            (-1.0) ** (k + 1) / (k * g0 ** k)
            for k in range(1, self._order + 1)
        )
        return self.compose_univariate(coefficients)

    def sqrt(self):
        g0 = self.constant_term
        if not g0 > 0.0:
            raise DomainError("Square root of a non-positive number")
        coefficients, binomial = [], 1.0
        for k in range(self._order + 1):
            coefficients.append(binomial * math.sqrt(g0) / g0 ** k)
            binomial *= (0.5 - k) / (k + 1)
        return self.compose_univariate(coefficients)

    def __call__(self, x):
        """Evaluate the polynomial at the point `x` (absolute coordinates,
        the expansion center is subtracted).
        """
        dx = np.asarray(x, dtype=float) - self._center
        monomials = np.prod(dx ** _exponents(self._n, self._order), axis=1)
        return float(self._coefficients @ monomials)

    def __repr__(self):
        return "TruncatedSeries(n={}, order={}, {})".format(
            self._n, self._order, self.coefficients()
        )
