# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""The `obslin` package designs observers of discrete-time nonlinear
systems ``x(t+1) = Phi(x(t))``, ``y(t) = h(x(t))`` by computing a change of
coordinates ``z = T(x)`` in which the observer is linear,
``z(t+1) = A z(t) + b(y(t))``.

Here's a sample session using this package::

    >>> from obslin import benchmarks, series, observer
    >>> bench = benchmarks.get('bench1')
    >>> T = series.solve_series(bench.system, bench.observer, 6)
    >>> trajectory = observer.simulate(
    ...     bench.system, bench.observer, bench.transform,
    ...     [-0.3, -0.2], [0.0, 0.0], 40)

To catch debug logs of ObsLin from your own code, you have to configure
a logger the way you want with a log level set to `DEBUG`::

    >>> import logging
    >>> logging.basicConfig()
    >>> logger = logging.getLogger('obslin')
    >>> logger.setLevel(logging.DEBUG)

Then every training stage, LM stop and Newton iteration is logged.
"""

__licence__ = 'LGPL v3'
__version__ = '0.1.0'

__all__ = ['benchmarks', 'error']

import logging

from obslin import error

logging.getLogger(__name__).addHandler(logging.NullHandler())
