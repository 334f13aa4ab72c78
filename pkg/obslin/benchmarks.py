# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Built-in benchmark problems, each with a closed-form transformation and
its inverse used as oracles.

``bench1`` has the output ``y = x2`` and a transformation with a logarithmic
singularity on ``x1 + x2 = -1``; ``bench2`` has the output ``y = x1``, a
transition map with an eigenvalue on the unit circle and a rational
transformation:

    >>> from obslin import benchmarks
    >>> benchmarks.get('bench1').observer.A
    array([[0.5, 0.3],
           [0.5, 0.4]])
    >>> benchmarks.analytic_transform('bench2', [-0.5, 0.1]).round(12)
    array([-0.91, -2.25])
"""
import functools

import numpy as np

from obslin.maps import ExprMap
from obslin.pinn import make_schedule
from obslin.problem import Problem
from obslin.system import DiscreteSystem, ObserverSpec

Z_NAMES = ('z1', 'z2')

DEFINITIONS = {
    'bench1': {
        'phi': [
            'exp(0.2*x2/(1+x2))*sqrt(1+x1+x2)-1-0.4*x2-0.5*ln(1+x1+x2)',
            '0.5*ln(1+x1+x2)+0.4*x2',
        ],
        'h': 'x2',
        'A': [[0.5, 0.3], [0.5, 0.4]],
        'b': ['0.2*y/(1+y)-0.3*y', '0'],
        'domain': [(-0.495, 0.0), (-0.495, 0.0)],
        'transform': ['ln(1+x1+x2)', 'x2'],
        'inverse': ['exp(z1)-z2-1', 'z2'],
        'schedule': (-0.1, (-0.4, -0.1), (-0.49, -0.01), (-0.495, -0.001)),
    },
    'bench2': {
        'phi': [
            '(0.5*x1/(1+x1)-0.9*x2)/(1-0.5*x1/(1+x1)+0.9*x2)',
            'x2',
        ],
        'h': 'x1',
        'A': [[0.0, 0.0], [0.0, 0.1]],
        'b': ['0.5*y/(1+y)', 'y/(1+y)'],
        'domain': [(-0.91, 0.0), (-0.91, 0.0)],
        'transform': ['x1/(1+x1)+0.9*x2', '2.5*(x1/(1+x1)+x2)'],
        'inverse': [
            '(10*z1-3.6*z2)/(1-10*z1+3.6*z2)',
            '4*z2-10*z1',
        ],
        'schedule': (-0.1, (-0.8, -0.1), (-0.91, -0.01)),
    },
}


# Initial plant state, observer state, Newton guess and first inverse
# estimate of the simulations
SIMULATIONS = {
    'bench1': {
        'x0': (-0.495, 0.35),
        'z0': (0.0, 0.0),
        'guess': (0.1, 0.1),
        'x_bar0': (0.0, 0.0),
    },
    'bench2': {
        'x0': (-0.5, -0.4),
        'z0': (0.0, 0.0),
        'guess': (0.1, 0.1),
        'x_bar0': (1.0, -0.4),
    },
}


def simulation_defaults(problem):
    """Return the default initial conditions of a simulation of
    `problem`: those of the benchmark, or the center of the domain for the
    plant, the origin for the observer, ``0.1`` for the Newton guess and
    no first inverse estimate.
    """
    if problem.name in SIMULATIONS:
        return dict(SIMULATIONS[problem.name])
    return {
        'x0': tuple(0.5 * (a + b) for a, b in problem.domain),
        'z0': (0.0,) * problem.n,
        'guess': (0.1,) * problem.n,
        'x_bar0': None,
    }


def names():
    """Return the identifiers of the registered benchmarks."""
    return sorted(DEFINITIONS)


@functools.lru_cache(maxsize=None)
def get(id_):
    """Return the benchmark `id_` as a :class:`obslin.problem.Problem`.

    :raise: `ValueError` (unknown benchmark)
    """
    if id_ not in DEFINITIONS:
        raise ValueError(
            "Unknown benchmark '{}' (available: {})".format(
                id_, ', '.join(names())
            )
        )
    data = DEFINITIONS[id_]
    system = DiscreteSystem(data['phi'], data['h'], name=id_)
    observer = ObserverSpec(data['A'], data['b'])
    return Problem(
        id_,
        system,
        observer,
        data['domain'],
        transform=ExprMap(data['transform']),
        inverse=ExprMap(data['inverse'], Z_NAMES),
        schedule=make_schedule(*data['schedule']),
    )


def analytic_transform(id_, x):
    """Evaluate the closed-form transformation of benchmark `id_` at `x`.

    :raise: :class:`obslin.error.DomainError` (singular locus)
    """
    return get(id_).transform(np.asarray(x, dtype=float))


def analytic_inverse(id_, z):
    """Evaluate the closed-form inverse transformation of benchmark `id_` at
    `z`.

    :raise: :class:`obslin.error.DomainError` (``z`` outside the image)
    """
    return get(id_).inverse(np.asarray(z, dtype=float))
