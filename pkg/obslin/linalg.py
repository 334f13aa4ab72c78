# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Small dense real linear algebra on `numpy` arrays: LU solve, eigenvalues,
numerical rank and the Sylvester solve used by the phase condition.

Matrices are two-dimensional ``numpy`` arrays of floats.
"""
import itertools
import logging
import warnings

import numpy as np
from scipy import linalg as sla

from obslin.error import (
    ConvergenceError,
    SingularMatrixError,
    SpectraOverlapError,
)

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-13
SPECTRA_SEPARATION = 1e-8
MAX_EIGEN_DIMENSION = 8


def as_matrix(data):
    """Return `data` as a 2D float array.

    :raise: `ValueError` (empty or non rectangular input)
    """
    matrix = np.array(data, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    if matrix.ndim != 2 or matrix.size == 0:
        raise ValueError("A matrix needs at least one row and one column")
    return matrix


def lu_solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` by LU factorization with partial pivoting.

        >>> import numpy as np
        >>> from obslin import linalg
        >>> linalg.lu_solve(np.array([[0, -0.2], [0.5, 0.9]]), [1, 0])
        array([-9., -5.])

    `rhs` may be a vector or a matrix of right-hand sides.

    :return: the solution as a `numpy` array
    :raise: :class:`obslin.error.SingularMatrixError` (pivot magnitude below
        ``1e-13``, the failing column is reported)
    """
    matrix = as_matrix(matrix)
    if matrix.shape[0] != matrix.shape[1]:
        raise ValueError("lu_solve needs a square matrix")
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', sla.LinAlgWarning)
        lu, piv = sla.lu_factor(matrix, check_finite=False)
    pivots = np.abs(np.diag(lu))
    small = np.flatnonzero(~(pivots > PIVOT_TOL))
    if small.size:
        column = int(small[0])
        raise SingularMatrixError(
            "Singular matrix: pivot {:.3e} in column {}".format(
                pivots[column], column
            ),
            {'column': column, 'pivot': float(pivots[column])},
        )
    return sla.lu_solve((lu, piv), np.asarray(rhs, dtype=float))


def _sort_spectrum(values):
    order = sorted(
        range(len(values)),
        key=lambda i: (-abs(values[i]), -values[i].real, -values[i].imag),
    )
    return np.array([values[i] for i in order], dtype=complex)


def eigenvalues(matrix):
    """Return the eigenvalues of a small square matrix sorted by descending
    magnitude. 1x1 and 2x2 matrices use the closed-form roots of the
    characteristic polynomial; larger ones go through LAPACK (Hessenberg
    reduction and shifted QR).

        >>> from obslin import linalg
        >>> linalg.eigenvalues([[0.5, 0.3], [0.5, 0.4]]).real.round(4)
        array([0.8405, 0.0515])

    :return: complex `numpy` array
    :raise: :class:`obslin.error.ConvergenceError`, `ValueError` (dimension
        above 8)
    """
    matrix = as_matrix(matrix)
    size = matrix.shape[0]
    if size != matrix.shape[1]:
        raise ValueError("eigenvalues needs a square matrix")
    if size > MAX_EIGEN_DIMENSION:
        raise ValueError(
            "eigenvalues supports dimensions up to {}".format(
                MAX_EIGEN_DIMENSION
            )
        )
    if size == 1:
        return np.array([complex(matrix[0, 0])])
    if size == 2:
        trace = matrix[0, 0] + matrix[1, 1]
        det = matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0]
        root = np.sqrt(complex(trace * trace / 4.0 - det))
        return _sort_spectrum([trace / 2.0 + root, trace / 2.0 - root])
    try:
        values = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(
            "Eigenvalue iteration did not converge: {}".format(exc),
            {'matrix': matrix.tolist()},
        )
    return _sort_spectrum(list(values.astype(complex)))


def spectral_radius(matrix):
    return float(max(abs(value) for value in eigenvalues(matrix)))


def rank(matrix, tol=1e-10):
    """Numerical rank: number of pivots of magnitude above
    ``tol * ||matrix||_inf`` under Gaussian elimination with complete
    pivoting.

        >>> from obslin import linalg
        >>> linalg.rank([[1, 1], [1, 1]])
        1

    :raise: `ValueError` (non-positive tolerance)
    """
    if not tol > 0:
        raise ValueError("The rank tolerance must be positive")
    work = as_matrix(matrix).copy()
    norm = np.abs(work).sum(axis=1).max()
    if norm == 0.0:
        return 0
    threshold = tol * norm
    result = 0
    for step in range(min(work.shape)):
        block = np.abs(work[step:, step:])
        row, col = np.unravel_index(np.argmax(block), block.shape)
        if not block[row, col] > threshold:
            break
        row += step
        col += step
        work[[step, row]] = work[[row, step]]
        work[:, [step, col]] = work[:, [col, step]]
        factors = work[step + 1:, step] / work[step, step]
        work[step + 1:, step:] -= np.outer(factors, work[step, step:])
        result += 1
    return result


def matrix_power_stack(first, step, count):
    """Stack ``first, first @ step, ..., first @ step^(count-1)``
    vertically.
    """
    blocks, block = [], as_matrix(first)
    for _ in range(count):
        blocks.append(block)
        block = block @ step
    return np.vstack(blocks)


def observability_matrix(H, F):
    """Return ``[H; H F; ...; H F^(n-1)]``."""
    F = as_matrix(F)
    return matrix_power_stack(H, F, F.shape[0])


def controllability_matrix(A, B):
    """Return ``[B, A B, ..., A^(n-1) B]``."""
    A = as_matrix(A)
    B = as_matrix(B).reshape(A.shape[0], -1)
    blocks, block = [], B
    for _ in range(A.shape[0]):
        blocks.append(block)
        block = A @ block
    return np.hstack(blocks)


def sylvester_operator(F, A):
    """Return the matrix of ``J -> J F - A J`` acting on the column-major
    vectorization of ``J`` (``J`` has as many rows as `A` and as many
    columns as `F`): ``kron(F.T, I) - kron(I, A)``.
    """
    F = as_matrix(F)
    A = as_matrix(A)
    return np.kron(F.T, np.eye(A.shape[0])) - np.kron(
        np.eye(F.shape[0]), A
    )


def sylvester_solve(F, A, C):
    """Solve ``J F - A J = C`` for ``J``. The phase condition pins the
    Jacobian of the transformation at the equilibrium this way, with
    ``C = B H``.

        >>> from obslin import linalg
        >>> F = [[0.0, -0.2], [0.5, 0.9]]
        >>> A = [[0.5, 0.3], [0.5, 0.4]]
        >>> C = [[0.0, -0.1], [0.0, 0.0]]
        >>> linalg.sylvester_solve(F, A, C).round(12) + 0.0
        array([[1., 1.],
               [0., 1.]])

    :return: ``J`` as a `numpy` array
    :raise: :class:`obslin.error.SpectraOverlapError` (an eigenvalue of `F`
        lies within ``1e-8`` of an eigenvalue of `A`)
    """
    F = as_matrix(F)
    A = as_matrix(A)
    C = as_matrix(C).reshape(A.shape[0], F.shape[0])
    for (i, kf), (j, ka) in itertools.product(
        enumerate(eigenvalues(F)), enumerate(eigenvalues(A))
    ):
        if abs(kf - ka) <= SPECTRA_SEPARATION:
            raise SpectraOverlapError(
                "Spectra overlap: eigenvalue {} of F collides with "
                "eigenvalue {} of A".format(kf, ka),
                {'pair': (i, j), 'values': (complex(kf), complex(ka))},
            )
    vec = lu_solve(sylvester_operator(F, A), C.ravel(order='F'))
    return vec.reshape(C.shape, order='F')
