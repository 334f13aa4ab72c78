# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""This module contains all exceptions raised by `ObsLin` when an error
occurred.

Every exception carries a human readable message and an ``info`` dictionary
holding the diagnostics gathered at the place of failure:

    >>> from obslin import expr
    >>> from obslin.error import DomainError
    >>> node = expr.parse('ln(x1)', 1)
    >>> try:
    ...     expr.evaluate(node, [-1.0])
    ... except DomainError as exc:
    ...     exc.info['subexpression']
    ...
    'ln(x1)'
"""


class Error(Exception):
    """Base class for exception."""

    def __init__(self, message, info=None):
        super(Error, self).__init__(message, info)
        self.message = message
        self.info = info or {}

    def __str__(self):
        return self.args and self.args[0] or ''

    def __repr__(self):
        return "{}({})".format(self.__class__.__name__, repr(self.args[0]))


class ParseError(Error):
    """Exception raised when an expression or a problem definition file can
    not be parsed. The character position (0-based) is available in
    ``info['position']`` when known.
    """

    pass


class DomainError(Error):
    """Exception raised when an expression is evaluated outside of its
    analyticity domain (logarithm or square root of a non-positive number,
    division by zero, overflow).
    """

    pass


class LinAlgError(Error):
    """Base class for errors raised by :mod:`obslin.linalg`."""

    pass


class SingularMatrixError(LinAlgError):
    """Exception raised when a pivot falls below the singularity threshold.
    The failing pivot column is stored in ``info['column']``.
    """

    pass


class SpectraOverlapError(LinAlgError):
    """Exception raised when the Sylvester equation has no unique solution
    because the two spectra intersect.
    """

    pass


class ConvergenceError(LinAlgError):
    """Exception raised when an iterative linear algebra routine does not
    converge.
    """

    pass


class AssumptionError(Error):
    """Exception raised when a system or an observer design violates one of
    its invariants (equilibrium, stability of ``A``, ``b(0) = 0``).
    """

    pass


class ResonanceError(Error):
    """Exception raised by the series solver when the linear operator of a
    degree is singular. The degree is stored in ``info['degree']``.
    """

    pass


class TrainingError(Error):
    """Exception raised when a training stage fails."""

    pass


class NewtonError(Error):
    """Exception raised when the Newton inversion of a map fails."""

    pass


class InternalError(Error):
    """Exception raised for errors occurring during an internal operation."""

    pass
