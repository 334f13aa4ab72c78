# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Evaluation grids, error fields, discrete norms and the aggregation of
error norms over independent training runs.

    >>> from obslin import metrics
    >>> spec = metrics.GridSpec('chebyshev-lobatto', [(-1.0, 1.0)], [3])
    >>> metrics.make_grid(spec).ravel().round(12) + 0.0
    array([-1.,  0.,  1.])
    >>> metrics.norms([-3.0])
    (3.0, 3.0, 3.0)
"""
import logging

import numpy as np

logger = logging.getLogger(__name__)

EQUISPACED = 'equispaced'
CHEBYSHEV_LOBATTO = 'chebyshev-lobatto'
GRID_KINDS = (EQUISPACED, CHEBYSHEV_LOBATTO)
NORMS = ('L1', 'L2', 'Linf')
PERCENTILES = (('p5', 5.0), ('median', 50.0), ('p95', 95.0))


class GridSpec(object):
    """Tensor-product grid: `kind`, one ``(a, b)`` interval and one point
    count per dimension.
    """

    def __init__(self, kind, bounds, counts):
        if kind not in GRID_KINDS:
            raise ValueError("Unknown grid kind '{}'".format(kind))
        bounds = [(float(a), float(b)) for a, b in bounds]
        counts = [int(count) for count in counts]
        if len(bounds) != len(counts):
            raise ValueError("One point count per interval is required")
        for (a, b), count in zip(bounds, counts):
            if not a < b:
                raise ValueError("Empty interval [{}, {}]".format(a, b))
            if count < 2:
                raise ValueError("A grid needs at least 2 points per axis")
        self.kind = kind
        self.bounds = bounds
        self.counts = counts

    @classmethod
    def square(cls, kind, domain, count):
        """Grid with `count` points along every axis of `domain`."""
        return cls(kind, domain, [count] * len(domain))

    def __repr__(self):
        return "GridSpec({!r}, {}, {})".format(
            self.kind, self.bounds, self.counts
        )


def _axis(kind, a, b, count):
    if kind == EQUISPACED:
        return np.linspace(a, b, count)
    i = np.arange(count)
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * np.cos(np.pi * i / (count - 1))
    return np.sort(nodes)


def make_grid(spec):
    """Return the points of `spec` as an ``(M, n)`` array, the first
    coordinate varying slowest.
    """
    axes = [
        _axis(spec.kind, a, b, count)
        for (a, b), count in zip(spec.bounds, spec.counts)
    ]
    mesh = np.meshgrid(*axes, indexing='ij')
    return np.column_stack([axis.ravel() for axis in mesh])


def error_field(transform, oracle, grid):
    """Return ``transform(x) - oracle(x)`` for every grid point, as an
    ``(M, n)`` array.

    :raise: :class:`obslin.error.DomainError`
    """
    grid = np.asarray(grid, dtype=float)
    return transform.evaluate_batch(grid) - oracle.evaluate_batch(grid)


def norms(values):
    """Unnormalized discrete norms ``(L1, L2, Linf)`` of the entries of
    `values`.
    """
    values = np.abs(np.asarray(values, dtype=float).ravel())
    if not values.size:
        raise ValueError("Norms of an empty field")
    return (
        float(values.sum()),
        float(np.sqrt(values @ values)),
        float(values.max()),
    )


def field_norms(field):
    """Norms of every component of an error field.

    :return: ``{'T1': {'L1': ..., 'L2': ..., 'Linf': ...}, ...}``
    """
    field = np.asarray(field, dtype=float)
    return {
        'T{}'.format(j + 1): dict(zip(NORMS, norms(field[:, j])))
        for j in range(field.shape[1])
    }


class ErrorStats(object):
    """Median and 5th/95th percentiles of each norm over `count` runs.
    `values` maps a norm name to ``{'median', 'p5', 'p95'}``.
    """

    def __init__(self, values, count):
        self.values = values
        self.count = count

    def __getitem__(self, norm):
        return self.values[norm]

    def to_dict(self):
        return {'runs': self.count, 'norms': self.values}

    def __repr__(self):
        return "ErrorStats(runs={}, {})".format(self.count, self.values)


def uq_aggregate(per_run_norms):
    """Aggregate per-run norms. Every run is a mapping from norm name to
    value (or a ``(L1, L2, Linf)`` sequence). Percentiles interpolate
    linearly between order statistics (position ``p (N - 1)``):

        >>> from obslin import metrics
        >>> stats = metrics.uq_aggregate([(v, v, v) for v in range(1, 6)])
        >>> sorted((k, round(v, 12)) for k, v in stats['L1'].items())
        [('median', 3.0), ('p5', 1.2), ('p95', 4.8)]

    :return: an :class:`ErrorStats`
    :raise: `ValueError` (fewer than two runs)
    """
    runs = [
        run if isinstance(run, dict) else dict(zip(NORMS, run))
        for run in per_run_norms
    ]
    if len(runs) < 2:
        raise ValueError("At least two runs are required")
    values = {}
    for norm in runs[0]:
        samples = np.array([run[norm] for run in runs], dtype=float)
        values[norm] = {
            name: float(np.percentile(samples, q, method='linear'))
            for name, q in PERCENTILES
        }
    return ErrorStats(values, len(runs))


def campaign_stats(per_run_norms, sizes):
    """Statistics of the nested campaigns made of the first `size` runs, for
    each of `sizes`.

    :return: ``{size: ErrorStats}``
    """
    result = {}
    for size in sizes:
        if size > len(per_run_norms):
            raise ValueError(
                "Campaign of {} runs but only {} available".format(
                    size, len(per_run_norms)
                )
            )
        result[size] = uq_aggregate(per_run_norms[:size])
    return result
