# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""This module contains the :class:`TransformMap` abstraction, the common
interface of every approximation of the observer transformation ``T``
(closed-form oracle, neural network, polynomial), and the JSON dispatch used
to store them on disk.

    >>> from obslin import maps
    >>> T = maps.ExprMap(['ln(1+x1+x2)', 'x2'])
    >>> T([0.0, 0.0])
    array([0., 0.])
    >>> T.jacobian([0.0, 0.0])
    array([[1., 1.],
           [0., 1.]])
"""
import json
import logging

import numpy as np

from obslin import expr, export
from obslin.error import DomainError, InternalError

logger = logging.getLogger(__name__)

FD_STEP = 1e-6


class TransformMap(object):
    """Base class of maps ``R^n -> R^n``.

    Subclasses implement :func:`__call__` or :func:`evaluate_batch` and may
    provide an exact :func:`jacobian`; the default one uses central finite
    differences.
    """

    kind = None

    def __init__(self, n):
        self._n = n

    @property
    def n(self):
        """Dimension of the input and output spaces."""
        return self._n

    def __call__(self, x):
        x = np.asarray(x, dtype=float).reshape(1, self._n)
        return self.evaluate_batch(x)[0]

    def evaluate_batch(self, points):
        """Evaluate the map on the rows of `points` (an ``(M, n)`` array).

        :return: an ``(M, n)`` array
        """
        return np.array([self(x) for x in np.asarray(points, dtype=float)])

    def jacobian(self, x, step=FD_STEP):
        """Return ``dT/dx`` at `x` (row ``j`` holds the gradient of
        component ``j``).
        """
        x = np.asarray(x, dtype=float)
        result = np.empty((self._n, self._n))
        for k in range(self._n):
            shift = np.zeros(self._n)
            shift[k] = step
            result[:, k] = (self(x + shift) - self(x - shift)) / (2 * step)
        return result

    def contains(self, x):
        """Return `True` if `x` lies in the domain of the map."""
        return True

    def check_dimension(self, n):
        """:raise: :class:`obslin.error.InternalError` (dimension
        mismatch)
        """
        if n != self._n:
            raise InternalError(
                "Map of dimension {} can not be used with a problem of "
                "dimension {}".format(self._n, n),
                {'map': self._n, 'problem': n},
            )

    def to_dict(self):
        raise NotImplementedError

    def __repr__(self):
        return "{}(n={})".format(self.__class__.__name__, self._n)


class ExprMap(TransformMap):
    """Closed-form map given by one expression per component.

    Components are parsed with the variable names `names` (``x1..xn`` by
    default, ``z1..zn`` for inverse maps). The Jacobian is exact: the
    degree-1 coefficients of the Taylor expansion at the point.
    """

    kind = 'analytic'

    def __init__(self, components, names=None):
        n = len(components)
        super(ExprMap, self).__init__(n)
        if names is None:
            names = expr.default_names(n)
        self._names = tuple(names)
        self._nodes = tuple(
            node
            if isinstance(node, expr.ExprNode)
            else expr.parse(node, n, self._names)
            for node in components
        )

    @property
    def nodes(self):
        return self._nodes

    @property
    def names(self):
        return self._names

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        values = np.empty(self._n)
        for j, node in enumerate(self._nodes):
            try:
                values[j] = expr.evaluate(node, x)
            except DomainError as exc:
                exc.info['component'] = j
                raise
        return values

    def jacobian(self, x, step=None):
        x = np.asarray(x, dtype=float)
        result = np.empty((self._n, self._n))
        for j, node in enumerate(self._nodes):
            result[j] = expr.series_eval(node, x, 1).degree_part(1)
        return result

    def contains(self, x):
        try:
            self(x)
        except DomainError:
            return False
        return True

    def to_dict(self):
        return {
            'kind': self.kind,
            'n': self._n,
            'names': list(self._names),
            'components': [
                expr.to_text(node, self._names) for node in self._nodes
            ],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['components'], data.get('names'))

    def __repr__(self):
        return "ExprMap({})".format(
            [expr.to_text(node, self._names) for node in self._nodes]
        )


def zero_map(n):
    """Return the map ``x -> 0`` of dimension `n`."""
    return ExprMap(['0'] * n)


def from_dict(data):
    """Build a map from its dictionary form, dispatching on ``kind``.

    :raise: :class:`obslin.error.InternalError` (unknown kind)
    """
    # Local imports, both modules depend on this one
    from obslin import mlp, series

    kinds = {
        ExprMap.kind: ExprMap,
        mlp.MlpMap.kind: mlp.MlpMap,
        series.PolyMap.kind: series.PolyMap,
    }
    kind = data.get('kind')
    if kind not in kinds:
        raise InternalError(
            "Unknown map kind '{}'".format(kind), {'kind': kind}
        )
    return kinds[kind].from_dict(data)


def load_map(path):
    """Load a map stored by :func:`dump_map`."""
    with open(path) as file_:
        data = json.load(file_)
    return from_dict(data)


def dump_map(transform, path):
    """Store `transform` as a JSON document at `path`."""
    export.write_json(path, transform.to_dict())
