# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""This module contains the :class:`Options <obslin.tools.Options>` class
which manages the options of the numerical solvers, and some useful helper
functions used internally in `ObsLin`.
"""
from collections.abc import MutableMapping
import functools
import itertools

from .error import InternalError


class Options(MutableMapping):
    """Base class which manages a fixed set of solver options.

    Subclasses declare their keys and default values in ``_defaults``.
    Unknown keys are refused, values are checked on assignment by
    :func:`check`, and options can not be deleted:

    >>> from obslin.lm import LmOptions
    >>> opts = LmOptions(max_iter=200)
    >>> opts['max_iter']
    200
    >>> opts['fd_step']
    1e-05
    >>> opts['fd_step'] = -1
    Traceback (most recent call last):
    ...
    ValueError: The 'fd_step' option must be positive
    """

    _defaults = {}

    def __init__(self, options=None, **kwargs):
        super(Options, self).__init__()
        self._options = dict(self._defaults)
        for key, value in dict(options or {}, **kwargs).items():
            self[key] = value

    def __getitem__(self, key):
        return self._options[key]

    def __setitem__(self, key, value):
        if key not in self._defaults:
            raise InternalError(
                "Unknown option '{}' for {}".format(
                    key, self.__class__.__name__
                )
            )
        self._options[key] = self.check(key, value)

    def __delitem__(self, key):
        raise InternalError("Operation not allowed")

    def __iter__(self):
        return self._options.__iter__()

    def __len__(self):
        return len(self._options)

    def __str__(self):
        return self._options.__str__()

    def __repr__(self):
        return "{}({})".format(self.__class__.__name__, self._options)

    def check(self, key, value):
        """Check and normalize the value of an option.
        Default policy: numbers of the type of the default value, strictly
        positive.

        :return: the normalized value
        :raise: `ValueError`
        """
        default = self._defaults[key]
        if isinstance(default, bool) or isinstance(default, str):
            return value
        try:
            value = type(default)(value)
        except (ValueError, TypeError):
            raise ValueError(
                "The '{}' option must be a number".format(key)
            )
        if not value > 0:
            raise ValueError("The '{}' option must be positive".format(key))
        return value

    def copy(self):
        return self.__class__(self._options)


def multi_indices(n, degree):
    """Return the exponent multi-indices of the monomials of total degree
    `degree` in `n` variables, in lexicographic descending order (so that
    ``x1`` ranks above ``x2``):

        >>> from obslin.tools import multi_indices
        >>> multi_indices(2, 2)
        [(2, 0), (1, 1), (0, 2)]
    """
    if n == 1:
        return [(degree,)]
    indices = []
    for first in range(degree, -1, -1):
        for rest in multi_indices(n - 1, degree - first):
            indices.append((first,) + rest)
    return indices


@functools.lru_cache(maxsize=None)
def graded_indices(n, order):
    """Return the multi-indices of all monomials of total degree up to
    `order` in `n` variables, in graded-lexicographic order. This order fixes
    the coefficient layout of every truncated series and polynomial map.

        >>> from obslin.tools import graded_indices
        >>> graded_indices(2, 2)
        ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    """
    return tuple(
        itertools.chain.from_iterable(
            multi_indices(n, degree) for degree in range(order + 1)
        )
    )


def degree_slice(n, degree):
    """Return the slice of the graded coefficient layout holding the
    monomials of total degree `degree`.

        >>> from obslin.tools import degree_slice
        >>> degree_slice(2, 2)
        slice(3, 6, None)
    """
    start = len(graded_indices(n, degree - 1)) if degree > 0 else 0
    return slice(start, len(graded_indices(n, degree)))


def parse_floats(text):
    """Parse a comma separated list of numbers.

        >>> from obslin.tools import parse_floats
        >>> parse_floats('0.5, 0.3')
        [0.5, 0.3]

    :raise: `ValueError`
    """
    return [float(item) for item in text.split(',') if item.strip()]
