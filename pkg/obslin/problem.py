# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""This module contains the :class:`Problem` class, which bundles a plant, an
observer design and a domain, and the helper functions used to load and save
problem definition files.

A definition file is an INI file::

    [system]
    name = toy
    phi1 = 0.5*x1
    phi2 = x1+0.2*x2
    h = x2

    [observer]
    a = 0.1, 0; 0, 0.2
    b1 = -y
    b2 = 0

    [domain]
    x1 = -0.5, 0
    x2 = -0.5, 0

Optional sections: ``[transform]`` (closed-form transformation ``t1..tn``
and its inverse ``inverse1..inversen`` in ``z1..zn``) and ``[schedule]``
(``start`` and ``legs`` of the continuation, see
:func:`obslin.pinn.make_schedule`).
"""
import logging
from configparser import ConfigParser, Error as ConfigError

import numpy as np

from obslin import expr, maps, tools
from obslin.error import ParseError
from obslin.system import DiscreteSystem, ObserverSpec

logger = logging.getLogger(__name__)


class Problem(object):
    """Observer design problem.

    `domain` is a list of ``(lower, upper)`` pairs, one per state. `transform`
    and `inverse` are optional closed-form maps (:class:`obslin.maps.ExprMap`)
    used as oracles. `schedule` is the optional list of lower bounds of the
    nested training subdomains.
    """

    def __init__(
        self,
        name,
        system,
        observer,
        domain,
        transform=None,
        inverse=None,
        schedule=None,
    ):
        if observer.n != system.n:
            raise ValueError(
                "The observer and the system have different dimensions"
            )
        domain = [(float(lower), float(upper)) for lower, upper in domain]
        if len(domain) != system.n:
            raise ValueError("One interval per state is required")
        for lower, upper in domain:
            if not lower < upper:
                raise ValueError(
                    "Empty interval [{}, {}]".format(lower, upper)
                )
        for transform_map in (transform, inverse):
            if transform_map is not None:
                transform_map.check_dimension(system.n)
        self.name = name
        self.system = system
        self.observer = observer
        self.domain = domain
        self.transform = transform
        self.inverse = inverse
        self.schedule = list(schedule) if schedule else None

    @property
    def n(self):
        return self.system.n

    def subdomain(self, lower):
        """Return the domain with every lower bound replaced by `lower`."""
        return [(lower, upper) for _, upper in self.domain]

    def __repr__(self):
        return "Problem({!r}, n={})".format(self.name, self.n)


def _get(conf, section, option):
    if not conf.has_option(section, option):
        raise ParseError(
            "Missing option '{}' in section [{}]".format(option, section),
            {'section': section, 'option': option},
        )
    return conf.get(section, option)


def _floats(conf, section, option):
    text = _get(conf, section, option)
    try:
        return tools.parse_floats(text)
    except ValueError:
        raise ParseError(
            "Bad number in [{}] {} = {}".format(section, option, text),
            {'section': section, 'option': option},
        )


def _expression(conf, section, option, arity, names=None):
    text = _get(conf, section, option)
    try:
        return expr.parse(text, arity, names)
    except ParseError as exc:
        exc.info.update(section=section, option=option)
        raise ParseError(
            "[{}] {}: {}".format(section, option, exc.message), exc.info
        )


def _matrix(conf, section, option, n):
    rows = _get(conf, section, option).split(';')
    try:
        matrix = np.array([tools.parse_floats(row) for row in rows])
    except ValueError:
        raise ParseError(
            "Bad number in [{}] {}".format(section, option),
            {'section': section, 'option': option},
        )
    if matrix.shape != (n, n):
        raise ParseError(
            "[{}] {} must be a {}x{} matrix".format(section, option, n, n),
            {'section': section, 'option': option},
        )
    return matrix


def from_config(conf):
    """Build a :class:`Problem` from a `ConfigParser` instance.

    :raise: :class:`obslin.error.ParseError` (missing section or option,
        malformed number or expression),
        :class:`obslin.error.AssumptionError`
    """
    from obslin import pinn

    for section in ('system', 'observer', 'domain'):
        if not conf.has_section(section):
            raise ParseError(
                "Missing section [{}]".format(section), {'section': section}
            )
    n = 0
    while conf.has_option('system', 'phi{}'.format(n + 1)):
        n += 1
    if not n:
        raise ParseError(
            "Section [system] defines no 'phi1'", {'section': 'system'}
        )
    phi = [
        _expression(conf, 'system', 'phi{}'.format(i + 1), n)
        for i in range(n)
    ]
    h = _expression(conf, 'system', 'h', n)
    name = conf.get('system', 'name', fallback='problem')
    system = DiscreteSystem(phi, h, name=name)
    A = _matrix(conf, 'observer', 'a', n)
    b = [
        _expression(conf, 'observer', 'b{}'.format(i + 1), 1, ('y',))
        for i in range(n)
    ]
    observer = ObserverSpec(A, b)
    domain = []
    for name_ in expr.default_names(n):
        bounds = _floats(conf, 'domain', name_)
        if len(bounds) != 2:
            raise ParseError(
                "[domain] {} needs a lower and an upper bound".format(name_),
                {'section': 'domain', 'option': name_},
            )
        domain.append(tuple(bounds))
    transform = inverse = None
    if conf.has_section('transform'):
        transform = maps.ExprMap(
            [
                _expression(conf, 'transform', 't{}'.format(i + 1), n)
                for i in range(n)
            ]
        )
        if conf.has_option('transform', 'inverse1'):
            z_names = tuple('z{}'.format(i + 1) for i in range(n))
            inverse = maps.ExprMap(
                [
                    _expression(
                        conf,
                        'transform',
                        'inverse{}'.format(i + 1),
                        n,
                        z_names,
                    )
                    for i in range(n)
                ],
                z_names,
            )
    schedule = None
    if conf.has_section('schedule'):
        start = _floats(conf, 'schedule', 'start')
        legs = []
        text = conf.get('schedule', 'legs', fallback='')
        for leg in text.split(','):
            if not leg.strip():
                continue
            try:
                end, step = [float(item) for item in leg.split(':')]
            except ValueError:
                raise ParseError(
                    "Bad continuation leg '{}'".format(leg.strip()),
                    {'section': 'schedule', 'option': 'legs'},
                )
            legs.append((end, step))
        try:
            schedule = pinn.make_schedule(start[0], *legs)
        except (ValueError, IndexError) as exc:
            raise ParseError(
                "Bad schedule: {}".format(exc), {'section': 'schedule'}
            )
    return Problem(
        system.name, system, observer, domain, transform, inverse, schedule
    )


def load(path):
    """Load the problem defined in the file `path`.

    :raise: :class:`obslin.error.ParseError`, `IOError`
    """
    conf = ConfigParser(interpolation=None)
    try:
        with open(path) as file_:
            conf.read_file(file_)
    except ConfigError as exc:
        raise ParseError(
            "Malformed problem file {}: {}".format(path, exc), {'path': path}
        )
    return from_config(conf)


def to_config(problem):
    """Return a `ConfigParser` describing `problem`."""
    system, observer = problem.system, problem.observer
    conf = ConfigParser(interpolation=None)
    conf.add_section('system')
    conf.set('system', 'name', str(problem.name))
    for i, node in enumerate(system.phi):
        conf.set('system', 'phi{}'.format(i + 1), expr.to_text(node))
    conf.set('system', 'h', expr.to_text(system.h))
    conf.add_section('observer')
    conf.set(
        'observer',
        'a',
        '; '.join(
            ', '.join(repr(float(value)) for value in row)
            for row in observer.A
        ),
    )
    for i, node in enumerate(observer.b):
        conf.set('observer', 'b{}'.format(i + 1), expr.to_text(node))
    conf.add_section('domain')
    for name, (lower, upper) in zip(
        expr.default_names(problem.n), problem.domain
    ):
        conf.set('domain', name, '{!r}, {!r}'.format(lower, upper))
    if problem.transform is not None:
        conf.add_section('transform')
        for i, node in enumerate(problem.transform.nodes):
            conf.set('transform', 't{}'.format(i + 1), expr.to_text(node))
        if problem.inverse is not None:
            for i, node in enumerate(problem.inverse.nodes):
                conf.set(
                    'transform',
                    'inverse{}'.format(i + 1),
                    expr.to_text(node, problem.inverse.names),
                )
    if problem.schedule:
        conf.add_section('schedule')
        conf.set('schedule', 'start', repr(problem.schedule[0]))
        # Explicit bounds, one leg per stage
        legs = []
        previous = problem.schedule[0]
        for bound in problem.schedule[1:]:
            legs.append(
                '{!r}:{!r}'.format(bound, round(bound - previous, 12))
            )
            previous = bound
        conf.set('schedule', 'legs', ', '.join(legs))
    return conf


def save(problem, path):
    """Write `problem` to the definition file `path`."""
    conf = to_config(problem)
    with open(path, 'w') as file_:
        conf.write(file_)
    logger.debug(u"(write) %(path)s", {'path': path})
