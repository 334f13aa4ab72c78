# -*- coding: utf-8 -*-
# License LGPL-3.0 or later (http://www.gnu.org/licenses/lgpl)
"""Command line interface::

    $ obslin check --benchmark bench1
    $ obslin solve --benchmark bench1 --solver series --order 6 --out out
    $ obslin eval --benchmark bench1 out/bench1_series6.json --out out
    $ obslin simulate --benchmark bench1 analytic --horizon 60 --out out
    $ obslin uq --benchmark bench1 --runs 20 --workers 4 --out out

Exit codes: 0 success (or warning), 1 usage, configuration or parse error,
2 a design hypothesis fails, 3 numerical failure, 4 too many failed runs in
an uncertainty quantification campaign.
"""
import argparse
import concurrent.futures
import logging
import os
import sys

import obslin
from obslin import (
    benchmarks,
    export,
    lm,
    maps,
    metrics,
    mlp,
    observer as observer_,
    pinn,
    problem as problem_,
    series,
    system as system_,
    tools,
)
from obslin.error import (
    AssumptionError,
    DomainError,
    InternalError,
    LinAlgError,
    NewtonError,
    ParseError,
    ResonanceError,
    TrainingError,
)

LOG_RUN_FAILED_MSG = u"(uq) run %(run)s (seed %(seed)s) failed: %(error)s"

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ASSUMPTION = 2
EXIT_NUMERICAL = 3
EXIT_UQ = 4

SERIES = 'series'
SOLVERS = (pinn.GREEDY, pinn.SINGLE, SERIES)
ANALYTIC = 'analytic'
MAX_FAILURE_RATE = 0.2


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser exiting with the usage code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "{}: error: {}\n".format(self.prog, message))


def _vector(text):
    try:
        return tools.parse_floats(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "'{}' is not a comma separated list of numbers".format(text)
        )


def _sizes(text):
    try:
        return [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "'{}' is not a comma separated list of integers".format(text)
        )


def build_parser():
    common = ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument(
        '--benchmark', choices=benchmarks.names(), help="built-in problem"
    )
    source.add_argument('--problem', help="problem definition file")
    common.add_argument(
        '--out', default='out', help="output directory (default: out)"
    )
    common.add_argument(
        '--log-level',
        default='WARNING',
        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'),
    )
    training = ArgumentParser(add_help=False)
    training.add_argument('--seed', type=int, default=0)
    training.add_argument(
        '--widths', type=_sizes, default=[5, 5], help="hidden layer widths"
    )
    training.add_argument('--grid-train', type=int, default=pinn.GRID_SIZE)
    training.add_argument('--max-iter', type=int, help="LM iterations")
    training.add_argument('--max-fev', type=int, help="LM evaluations")
    training.add_argument(
        '--cost-rtol', type=float, help="LM relative cost decrease stop"
    )

    parser = ArgumentParser(
        prog='obslin',
        description="Design nonlinear observers by exact linearization.",
    )
    parser.add_argument(
        '--version', action='version', version=obslin.__version__
    )
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    check = commands.add_parser(
        'check', parents=[common], help="check the design hypotheses"
    )
    check.set_defaults(func=cmd_check)

    solve = commands.add_parser(
        'solve', parents=[common, training], help="compute a transformation"
    )
    solve.add_argument('--solver', choices=SOLVERS, default=pinn.GREEDY)
    solve.add_argument('--order', type=int, default=6)
    solve.set_defaults(func=cmd_solve)

    eval_ = commands.add_parser(
        'eval', parents=[common], help="error fields against the oracle"
    )
    eval_.add_argument('map', help="map file, or 'analytic'")
    eval_.add_argument('--grid-train', type=int, default=pinn.GRID_SIZE)
    eval_.add_argument('--grid-test', type=int, default=20)
    eval_.set_defaults(func=cmd_eval)

    simulate = commands.add_parser(
        'simulate', parents=[common], help="run plant and observer"
    )
    simulate.add_argument('map', help="map file, or 'analytic'")
    simulate.add_argument('--horizon', type=int, default=60)
    simulate.add_argument('--x0', type=_vector, help="plant initial state")
    simulate.add_argument('--z0', type=_vector, help="observer initial state")
    simulate.add_argument('--guess', type=_vector, help="first Newton guess")
    simulate.add_argument(
        '--x-bar0', type=_vector, help="first closed-form inverse estimate"
    )
    simulate.set_defaults(func=cmd_simulate)

    uq = commands.add_parser(
        'uq', parents=[common, training], help="seeded training campaign"
    )
    uq.add_argument(
        '--solver', choices=(pinn.GREEDY, pinn.SINGLE), default=pinn.GREEDY
    )
    uq.add_argument('--runs', type=int, default=20)
    uq.add_argument('--workers', type=int, default=1)
    uq.add_argument('--grid-test', type=int, default=20)
    uq.add_argument(
        '--campaigns', type=_sizes, help="nested campaign sizes, e.g. 10,20"
    )
    uq.add_argument(
        '--compare-single',
        action='store_true',
        help="also run the single-domain training",
    )
    uq.add_argument(
        '--fixed-seed',
        action='store_true',
        help="use the base seed for every run",
    )
    uq.set_defaults(func=cmd_uq)
    return parser


def load_problem(kind, source):
    """Return the problem of a benchmark id or a definition file."""
    if kind == 'benchmark':
        return benchmarks.get(source)
    return problem_.load(source)


def _source(args):
    if args.benchmark:
        return 'benchmark', args.benchmark
    return 'problem', args.problem


def _lm_options(args):
    opts = lm.LmOptions()
    if args.max_iter is not None:
        opts['max_iter'] = args.max_iter
    if args.max_fev is not None:
        opts['max_fev'] = args.max_fev
    if args.cost_rtol is not None:
        opts['cost_rtol'] = args.cost_rtol
    return opts


def _load_transform(name, problem):
    if name == ANALYTIC:
        if problem.transform is None:
            raise InternalError(
                "Problem '{}' has no closed-form transformation".format(
                    problem.name
                )
            )
        return problem.transform
    transform = maps.load_map(name)
    transform.check_dimension(problem.n)
    return transform


def _path(args, problem, suffix):
    return os.path.join(args.out, '{}_{}'.format(problem.name, suffix))


def _stem(args, problem):
    if args.map == ANALYTIC:
        return '{}_{}'.format(problem.name, ANALYTIC)
    return os.path.splitext(os.path.basename(args.map))[0]


def _format_spectrum(values):
    return ', '.join(
        '{:.4f}'.format(value.real)
        if abs(value.imag) < 1e-12
        else '{:.4f}{:+.4f}j'.format(value.real, value.imag)
        for value in values
    )


def cmd_check(args):
    """Print the checks of the design hypotheses.

    :return: 0 (all pass, or only warnings), 2 (a hypothesis fails)
    """
    problem = load_problem(*_source(args))
    lin = system_.linearize(problem.system, problem.observer)
    observable, obs_report = system_.check_observability(lin)
    controllable, ctrl_report = system_.check_controllability(
        lin, problem.observer
    )
    stable, stab_report = system_.check_stability(problem.observer)
    status, res_report = system_.check_resonance(lin, problem.observer)
    print("problem: {}".format(problem.name))
    print("equilibrium: PASS (Phi(0) = 0, h(0) = 0)")
    print("eigenvalues of F: {}".format(_format_spectrum(res_report['k'])))
    print(
        "eigenvalues of A: {}".format(_format_spectrum(res_report['lambda']))
    )
    print(
        "stability of A: {} (spectral radius {:.4f})".format(
            stable and system_.PASS or system_.FAIL,
            stab_report['spectral_radius'],
        )
    )
    print(
        "observability: {} (rank {} of {})".format(
            observable and system_.PASS or system_.FAIL,
            obs_report['rank'],
            obs_report['n'],
        )
    )
    print(
        "controllability of (A, B): {} (rank {} of {})".format(
            controllable and system_.PASS or system_.FAIL,
            ctrl_report['rank'],
            ctrl_report['n'],
        )
    )
    detail = ''
    if status == system_.FAIL:
        detail = ' (multi-index {}, eigenvalue {})'.format(
            res_report['multi_index'], res_report['eigenvalue_index']
        )
    elif status == system_.WARNING:
        detail = ' ({})'.format(res_report['reason'])
    print("resonance: {}{}".format(status, detail))
    failed = status == system_.FAIL or not (
        observable and controllable and stable
    )
    return EXIT_ASSUMPTION if failed else EXIT_OK


def cmd_solve(args):
    """Compute a transformation with the selected solver and write it with
    its training log and residual report.
    """
    problem = load_problem(*_source(args))
    report = {'problem': problem.name, 'solver': args.solver}
    if args.solver == SERIES:
        transform = series.solve_series(
            problem.system, problem.observer, args.order
        )
        report['order'] = args.order
        stem = '{}{}'.format(SERIES, args.order)
    else:
        cfg = mlp.MlpConfig(problem.n, args.widths)
        train = pinn.single_train
        if args.solver == pinn.GREEDY:
            train = pinn.greedy_train
        transform = train(
            problem,
            cfg,
            _lm_options(args),
            args.seed,
            grid_size=args.grid_train,
        )
        report['solver'] = transform.provenance.get('solver', args.solver)
        report['seed'] = args.seed
        report['stages'] = [stage.to_dict() for stage in transform.report]
        stem = args.solver
        export.write_csv(
            _path(args, problem, '{}_stages.csv'.format(stem)),
            pinn.StageReport.HEADER,
            [stage.row() for stage in transform.report],
        )
    spec = metrics.GridSpec.square(
        metrics.EQUISPACED, problem.domain, args.grid_train
    )
    report['residual'] = pinn.verify_transform(
        transform,
        problem.system,
        problem.observer,
        metrics.make_grid(spec),
    )
    map_path = _path(args, problem, '{}.json'.format(stem))
    maps.dump_map(transform, map_path)
    export.write_json(
        _path(args, problem, '{}_report.json'.format(stem)), report
    )
    print("map: {}".format(map_path))
    print("max functional equation residual: {:.6e}".format(
        report['residual']
    ))
    return EXIT_OK


def _field_rows(grid, field):
    for point, error in zip(grid, field):
        yield list(point) + list(error)


def cmd_eval(args):
    """Write the error fields against the closed-form transformation on
    the training and test grids, and their norms.
    """
    problem = load_problem(*_source(args))
    oracle = _load_transform(ANALYTIC, problem)
    transform = _load_transform(args.map, problem)
    grids = {
        'train': metrics.GridSpec.square(
            metrics.EQUISPACED, problem.domain, args.grid_train
        ),
        'test': metrics.GridSpec.square(
            metrics.CHEBYSHEV_LOBATTO, problem.domain, args.grid_test
        ),
    }
    stem = _stem(args, problem)
    header = ['x{}'.format(i + 1) for i in range(problem.n)] + [
        'e{}'.format(i + 1) for i in range(problem.n)
    ]
    result = {}
    for name, spec in sorted(grids.items()):
        grid = metrics.make_grid(spec)
        field = metrics.error_field(transform, oracle, grid)
        export.write_csv(
            os.path.join(args.out, '{}_{}_field.csv'.format(stem, name)),
            header,
            _field_rows(grid, field),
        )
        result[name] = metrics.field_norms(field)
    export.write_json(
        os.path.join(args.out, '{}_norms.json'.format(stem)), result
    )
    for component, values in sorted(result['test'].items()):
        print(
            "{} test: L1 {:.3e}  L2 {:.3e}  Linf {:.3e}".format(
                component, values['L1'], values['L2'], values['Linf']
            )
        )
    return EXIT_OK


def cmd_simulate(args):
    """Simulate plant and observer and write the trajectory."""
    problem = load_problem(*_source(args))
    transform = _load_transform(args.map, problem)
    defaults = benchmarks.simulation_defaults(problem)
    x0 = args.x0 or defaults['x0']
    z0 = args.z0 or defaults['z0']
    guess = args.guess or defaults['guess']
    x_bar0 = args.x_bar0 or defaults['x_bar0']
    trajectory = observer_.simulate(
        problem.system,
        problem.observer,
        transform,
        x0,
        z0,
        args.horizon,
        guess=guess,
        inverse=problem.inverse,
        x_bar0=x_bar0,
    )
    stem = _stem(args, problem)
    path = os.path.join(args.out, '{}_trajectory.csv'.format(stem))
    export.write_csv(path, trajectory.header, trajectory.rows())
    if len(trajectory):
        print(
            "final |e_x|: {:.6e}".format(trajectory.error_norms('e_x')[-1])
        )
    print("trajectory: {}".format(path))
    return EXIT_OK


def _uq_job(job):
    """Train and evaluate one run of a campaign (runs in a worker
    process).
    """
    kind, source, solver, run, seed, options, widths, grid_train, grid_test = (
        job
    )
    problem = load_problem(kind, source)
    record = {'run': run, 'seed': seed, 'solver': solver}
    try:
        cfg = mlp.MlpConfig(problem.n, widths)
        train = pinn.single_train
        if solver == pinn.GREEDY:
            train = pinn.greedy_train
        transform = train(
            problem, cfg, lm.LmOptions(options), seed, grid_size=grid_train
        )
        spec = metrics.GridSpec.square(
            metrics.CHEBYSHEV_LOBATTO, problem.domain, grid_test
        )
        field = metrics.error_field(
            transform, problem.transform, metrics.make_grid(spec)
        )
    except (TrainingError, DomainError, LinAlgError) as exc:
        record.update(status='failed', error=str(exc))
        return record
    record.update(status='ok', norms=metrics.field_norms(field))
    return record


def _run_campaign(args, solver):
    kind, source = _source(args)
    options = dict(_lm_options(args))
    jobs = [
        (
            kind,
            source,
            solver,
            run,
            args.seed if args.fixed_seed else args.seed + run,
            options,
            tuple(args.widths),
            args.grid_train,
            args.grid_test,
        )
        for run in range(args.runs)
    ]
    if args.workers > 1:
        with concurrent.futures.ProcessPoolExecutor(args.workers) as pool:
            records = list(pool.map(_uq_job, jobs))
    else:
        records = [_uq_job(job) for job in jobs]
    for record in records:
        if record['status'] != 'ok':
            logger.warning(LOG_RUN_FAILED_MSG, record)
    return records


def _campaign_summary(records, sizes):
    succeeded = [record for record in records if record['status'] == 'ok']
    summary = {
        'runs': len(records),
        'failures': len(records) - len(succeeded),
    }
    if len(succeeded) < 2:
        return summary
    components = sorted(succeeded[0]['norms'])
    samples = {
        component: [record['norms'][component] for record in succeeded]
        for component in components
    }
    summary['stats'] = {
        component: metrics.uq_aggregate(values).to_dict()
        for component, values in samples.items()
    }
    # Nested campaigns larger than the successful runs are left out
    sizes = [size for size in sizes or () if size <= len(succeeded)]
    if sizes:
        campaigns = {
            component: metrics.campaign_stats(values, sizes)
            for component, values in samples.items()
        }
        summary['campaigns'] = {
            str(size): {
                component: campaigns[component][size].to_dict()
                for component in components
            }
            for size in sizes
        }
    return summary


def _norm_rows(records, n):
    components = ['T{}'.format(i + 1) for i in range(n)]
    for record in records:
        row = [record['run'], record['seed'], record['solver']]
        row.append(record['status'])
        for component in components:
            values = record.get('norms', {}).get(component, {})
            row += [values.get(norm, '') for norm in metrics.NORMS]
        yield row


def cmd_uq(args):
    """Run a seeded campaign of independent trainings and aggregate the
    test-grid error norms.

    :return: 0, or 4 when more than 20% of the runs failed
    """
    if args.runs < 2:
        raise ValueError("A campaign needs at least 2 runs")
    problem = load_problem(*_source(args))
    if problem.transform is None:
        raise InternalError(
            "Problem '{}' has no closed-form transformation".format(
                problem.name
            )
        )
    solvers = [args.solver]
    if args.compare_single and args.solver != pinn.SINGLE:
        solvers.append(pinn.SINGLE)
    header = ['run', 'seed', 'solver', 'status']
    for i in range(problem.n):
        header += ['T{}_{}'.format(i + 1, norm) for norm in metrics.NORMS]
    result = {}
    status = EXIT_OK
    for solver in solvers:
        records = _run_campaign(args, solver)
        export.write_csv(
            _path(args, problem, 'uq_{}_runs.csv'.format(solver)),
            header,
            _norm_rows(records, problem.n),
        )
        summary = _campaign_summary(records, args.campaigns)
        result[solver] = summary
        rate = summary['failures'] / float(summary['runs'])
        if rate > MAX_FAILURE_RATE or 'stats' not in summary:
            status = EXIT_UQ
        print(
            "{}: {} runs, {} failed".format(
                solver, summary['runs'], summary['failures']
            )
        )
        for component, stats in sorted(summary.get('stats', {}).items()):
            linf = stats['norms']['Linf']
            print(
                "  {} Linf median {:.3e} (5%: {:.3e}, 95%: {:.3e})".format(
                    component, linf['median'], linf['p5'], linf['p95']
                )
            )
    export.write_json(_path(args, problem, 'uq_stats.json'), result)
    return status


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level))
    try:
        return args.func(args)
    except AssumptionError as exc:
        print("FAIL: {}".format(exc), file=sys.stderr)
        return EXIT_ASSUMPTION
    except (ParseError, InternalError, ValueError, IOError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_USAGE
    except NewtonError as exc:
        print(
            "Newton failure at step {}: {}".format(
                exc.info.get('step'), exc
            ),
            file=sys.stderr,
        )
        return EXIT_NUMERICAL
    except (
        DomainError,
        LinAlgError,
        ResonanceError,
        TrainingError,
    ) as exc:
        print("numerical failure: {}".format(exc), file=sys.stderr)
        return EXIT_NUMERICAL

