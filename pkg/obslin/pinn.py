# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Physics-informed training of the network approximating the observer
transformation ``T``.

The residual vector stacks, for a set of collocation points ``x_i``:

- the functional equation ``T(Phi(x_i)) - A T(x_i) - b(h(x_i))``, point by
  point and component by component,
- the anchor ``T(0)``,
- the Jacobian constraint ``dT/dx(0) - J0`` (column-major), ``J0`` solving
  ``J0 F - A J0 = B H``,

all with unit weight. :func:`greedy_train` minimizes it over a nested family
of growing subdomains, warm-starting every stage from the previous one.
"""
import logging

import numpy as np

from obslin import lm, metrics, mlp, system as system_
from obslin.error import DomainError, LinAlgError, TrainingError

LOG_STAGE_MSG = (
    u"(stage %(index)s/%(count)s) lower bound %(lower)s: cost %(initial).3e "
    u"-> %(final).3e in %(iterations)s iterations (%(reason)s)"
)
LOG_BUDGET_MSG = (
    u"(stage %(index)s) LM budget exhausted (%(reason)s), final cost "
    u"%(final).3e"
)
LOG_NO_SCHEDULE_MSG = (
    u"(greedy) problem %(problem)s has no continuation schedule, "
    u"training on the whole domain in one stage"
)

logger = logging.getLogger(__name__)

GRID_SIZE = 15
GREEDY = 'pinn-greedy'
SINGLE = 'pinn-single'


def make_schedule(start, *legs):
    """Build the lower bounds of a continuation schedule. Every leg
    ``(end, step)`` extends the schedule by constant steps until `end`:

        >>> from obslin.pinn import make_schedule
        >>> make_schedule(-0.1, (-0.3, -0.1), (-0.32, -0.01))
        [-0.1, -0.2, -0.3, -0.31, -0.32]

    Bounds are rounded to 10 decimals.

    :raise: `ValueError` (step of the wrong sign, `end` not reached by a
        whole number of steps)
    """
    bounds = [round(float(start), 10)]
    for end, step in legs:
        base = bounds[-1]
        if step == 0 or (end - base) * step <= 0:
            raise ValueError(
                "Leg ({}, {}) does not extend {}".format(end, step, base)
            )
        count = int(round((end - base) / step))
        if abs(base + count * step - end) > 1e-9:
            raise ValueError(
                "Leg ({}, {}) does not reach {} from {}".format(
                    end, step, end, base
                )
            )
        bounds.extend(round(base + (i + 1) * step, 10) for i in range(count))
    return bounds


def check_schedule(schedule):
    """:raise: `ValueError` (empty or non nested schedule)"""
    if not schedule:
        raise ValueError("Empty continuation schedule")
    for previous, current in zip(schedule, schedule[1:]):
        if not current < previous:
            raise ValueError(
                "Schedule is not nested: {} follows {}".format(
                    current, previous
                )
            )


class PhaseTarget(object):
    """Jacobian ``J0`` of the transformation at the origin."""

    def __init__(self, J0):
        self.J0 = np.array(J0, dtype=float)

    @classmethod
    def from_problem(cls, system, observer):
        lin = system_.linearize(system, observer)
        return cls(system_.phase_target(lin, observer))

    def __repr__(self):
        return "PhaseTarget({})".format(self.J0.tolist())


class CollocationSet(object):
    """Collocation points with the images ``Phi(x_i)`` and injections
    ``b(h(x_i))`` computed once.

    :raise: :class:`obslin.error.DomainError` (``info['point']`` holds the
        offending collocation point)
    """

    def __init__(self, points, system, observer):
        self.points = np.atleast_2d(np.asarray(points, dtype=float))
        self.observer = observer
        images, injections = [], []
        for point in self.points:
            try:
                images.append(system.step(point))
                injections.append(observer.injection(system.output(point)))
            except DomainError as exc:
                exc.info['point'] = point.tolist()
                raise DomainError(
                    "{} at collocation point {}".format(
                        exc.message, point.tolist()
                    ),
                    exc.info,
                )
        self.images = np.array(images)
        self.injections = np.array(injections)

    @classmethod
    def on_grid(cls, system, observer, domain, size=GRID_SIZE):
        """Collocation set on the ``size x ... x size`` equispaced grid over
        `domain`.
        """
        spec = metrics.GridSpec.square(metrics.EQUISPACED, domain, size)
        return cls(metrics.make_grid(spec), system, observer)

    def __len__(self):
        return len(self.points)


def transform_residuals(transform, colloc, phase):
    """Residual vector of any :class:`obslin.maps.TransformMap` on `colloc`,
    of length ``M n + n + n^2``.
    """
    A = colloc.observer.A
    n = A.shape[0]
    values = transform.evaluate_batch(colloc.points)
    images = transform.evaluate_batch(colloc.images)
    equation = images - values @ A.T - colloc.injections
    origin = np.zeros(n)
    anchor = transform(origin)
    slope = transform.jacobian(origin) - phase.J0
    return np.concatenate(
        [equation.ravel(), anchor, slope.ravel(order='F')]
    )


def residual_vector(cfg, params, colloc, phase):
    """Residual vector of the network with parameters `params`."""
    return transform_residuals(mlp.MlpMap(cfg, params), colloc, phase)


class StageReport(object):
    """Outcome of one training stage."""

    def __init__(self, index, lower, points, initial_cost, result):
        self.index = index
        self.lower = lower
        self.points = points
        self.initial_cost = initial_cost
        self.final_cost = result.cost
        self.iterations = result.iterations
        self.nfev = result.nfev
        self.reason = result.reason

    def to_dict(self):
        return {
            'stage': self.index,
            'lower': self.lower,
            'points': self.points,
            'initial_cost': self.initial_cost,
            'final_cost': self.final_cost,
            'iterations': self.iterations,
            'nfev': self.nfev,
            'reason': self.reason,
        }

    HEADER = (
        'stage',
        'lower',
        'points',
        'initial_cost',
        'final_cost',
        'iterations',
        'nfev',
        'reason',
    )

    def row(self):
        data = self.to_dict()
        return [data[key] for key in self.HEADER]

    def __repr__(self):
        return "StageReport({})".format(self.to_dict())


class TrainedMap(mlp.MlpMap):
    """Trained network with its per-stage reports."""

    def __init__(self, cfg, params, report=None, provenance=None):
        super(TrainedMap, self).__init__(cfg, params, provenance)
        self.report = list(report or [])
        if self.report:
            self.provenance['stages'] = [
                stage.to_dict() for stage in self.report
            ]
            self.provenance['final_cost'] = self.report[-1].final_cost

    @property
    def final_cost(self):
        return self.report[-1].final_cost if self.report else None


def train(cfg, colloc, phase, params0, lm_opts=None, index=1, lower=None):
    """Minimize the squared residuals over `colloc` from `params0`.

    Running out of LM budget is not an error, the best iterate is kept and
    a warning is logged.

    :return: a :class:`TrainedMap` with one :class:`StageReport`
    :raise: :class:`obslin.error.TrainingError`
    """
    def residuals(params):
        return residual_vector(cfg, params, colloc, phase)

    initial = residuals(params0)
    initial_cost = float(initial @ initial)
    try:
        result = lm.minimize(residuals, params0, lm_opts)
    except (DomainError, LinAlgError) as exc:
        raise TrainingError(
            "Stage {} failed: {}".format(index, exc),
            {'stage': index, 'cause': repr(exc)},
        )
    if not np.isfinite(result.cost):
        raise TrainingError(
            "Stage {} diverged".format(index),
            {'stage': index, 'reason': result.reason, 'cost': result.cost},
        )
    report = StageReport(index, lower, len(colloc), initial_cost, result)
    if result.exhausted:
        logger.warning(
            LOG_BUDGET_MSG,
            {'index': index, 'reason': result.reason, 'final': result.cost},
        )
    return TrainedMap(cfg, result.x, [report])


def _continuation(problem, domains, bounds, cfg, lm_opts, seed, grid_size):
    cfg = cfg or mlp.MlpConfig(problem.n)
    phase = PhaseTarget.from_problem(problem.system, problem.observer)
    params = mlp.init_random(cfg, seed)
    reports = []
    for index, (domain, lower) in enumerate(zip(domains, bounds), 1):
        try:
            colloc = CollocationSet.on_grid(
                problem.system, problem.observer, domain, grid_size
            )
        except DomainError as exc:
            raise TrainingError(
                "Stage {}: {}".format(index, exc.message),
                dict(exc.info, stage=index),
            )
        stage = train(cfg, colloc, phase, params, lm_opts, index, lower)
        params = stage.params
        reports.extend(stage.report)
        report = stage.report[0]
        logger.info(
            LOG_STAGE_MSG,
            {
                'index': index,
                'count': len(domains),
                'lower': lower,
                'initial': report.initial_cost,
                'final': report.final_cost,
                'iterations': report.iterations,
                'reason': report.reason,
            },
        )
    return cfg, params, reports


def greedy_train(
    problem,
    cfg=None,
    lm_opts=None,
    seed=0,
    schedule=None,
    grid_size=GRID_SIZE,
):
    """Train on the nested subdomains of `schedule` (default: the schedule
    of `problem`), stage ``k`` starting from the parameters of stage
    ``k - 1`` and stage 1 from :func:`obslin.mlp.init_random`. Without any
    schedule this falls back to :func:`single_train` with a warning, and
    the provenance of the result names ``pinn-single``.

    :return: a :class:`TrainedMap`
    :raise: :class:`obslin.error.TrainingError` (with the stage index),
        `ValueError` (bad schedule)
    """
    if schedule is None:
        schedule = problem.schedule
    if schedule is None:
        logger.warning(LOG_NO_SCHEDULE_MSG, {'problem': problem.name})
        return single_train(problem, cfg, lm_opts, seed, grid_size)
    schedule = list(schedule)
    check_schedule(schedule)
    domains = [problem.subdomain(lower) for lower in schedule]
    cfg, params, reports = _continuation(
        problem, domains, schedule, cfg, lm_opts, seed, grid_size
    )
    provenance = {
        'problem': problem.name,
        'solver': GREEDY,
        'seed': seed,
        'schedule': schedule,
    }
    return TrainedMap(cfg, params, reports, provenance)


def single_train(
    problem, cfg=None, lm_opts=None, seed=0, grid_size=GRID_SIZE
):
    """Train on the whole domain of `problem` in one stage."""
    lower = min(lower for lower, _ in problem.domain)
    cfg, params, reports = _continuation(
        problem, [problem.domain], [lower], cfg, lm_opts, seed, grid_size
    )
    provenance = {'problem': problem.name, 'solver': SINGLE, 'seed': seed}
    return TrainedMap(cfg, params, reports, provenance)


def verify_transform(transform, system, observer, grid):
    """Return the largest of ``max_x |T(Phi(x)) - A T(x) - b(h(x))|_inf``
    over `grid` and ``|T(0)|_inf``.

    :raise: :class:`obslin.error.DomainError`
    """
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    images = system.step_batch(grid)
    injections = observer.injection_batch(system.output_batch(grid))
    equation = (
        transform.evaluate_batch(images)
        - transform.evaluate_batch(grid) @ observer.A.T
        - injections
    )
    origin = np.max(np.abs(transform(np.zeros(system.n))))
    worst = np.max(np.abs(equation)) if equation.size else 0.0
    return float(max(worst, origin))
