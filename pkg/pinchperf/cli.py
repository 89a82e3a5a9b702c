"""
cli.py

Command-line front end.

    pinchperf sweep      outage / rate tables over gamma_t, alpha or d_x
    pinchperf validate   closed forms against their quadrature oracles
    pinchperf placement  optimal pinch position for one user
    pinchperf power-gap  transmit SNR needed for a target outage

Exit status: 0 success, 2 bad input, 3 tolerance violation, 4 quadrature
failure.
"""
import argparse
import csv
import itertools
import json
import logging
import math
import sys
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from pinchperf import analytics, oracles
from pinchperf.config import AXES, METRICS, load_settings, parse_list
from pinchperf.errors import (ConfigError, ConvergenceError, InvalidParameterError,
                              PinchPerfError, ToleranceViolationError)
from pinchperf.helpers.dispatch import Dispatch
from pinchperf.model import Deployment, UserPosition, received_snr
from pinchperf.oracles import Strategy
from pinchperf.placement import optimal_position, placement_gain, deviation_bound

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_TOLERANCE = 3
EXIT_CONVERGENCE = 4

MONTE_CARLO = analytics.Method.MONTE_CARLO.value
STDERR_SUFFIX = '.stderr'

# Method of the deterministic column each strategy gets; None means the
# strategy is only available by simulation
EXACT_METHOD = {
    Strategy.PINCH_AT_USER_X: analytics.Method.CLOSED_FORM.value,
    Strategy.CONVENTIONAL: analytics.Method.QUADRATURE.value,
    Strategy.PINCH_OPTIMAL: None,
}


@dataclass(frozen=True)
class SweepSpec:
    """
    One sweep: the axis and its inclusive range, which strategy/metric
    columns to produce, and the deployment every row starts from.
    """
    axis: str
    start: float
    stop: float
    step: float
    strategies: Tuple[Strategy, ...]
    metrics: Tuple[str, ...]
    deployment: Deployment
    gamma_thr: float = 100.0
    n_samples: int = 0
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.axis not in AXES:
            raise InvalidParameterError("axis must be one of %s, got %r"
                                        % (', '.join(AXES), self.axis))
        if not self.step > 0:
            raise InvalidParameterError("range step must be > 0, got %r" % self.step)
        if not self.start < self.stop:
            raise InvalidParameterError("range start %r must be below stop %r"
                                        % (self.start, self.stop))
        if not self.strategies:
            raise InvalidParameterError("at least one strategy is required")
        if not self.metrics:
            raise InvalidParameterError("at least one metric is required")
        if self.n_samples < 0:
            raise InvalidParameterError("n_samples must be >= 0")
        if Strategy.PINCH_OPTIMAL in self.strategies and self.n_samples < 1:
            raise InvalidParameterError(
                "%s has no closed form; it needs samples > 0"
                % Strategy.PINCH_OPTIMAL.value)

    @classmethod
    def from_settings(cls, settings):
        start, stop, step = settings.sweep_range
        return cls(axis=settings.axis, start=start, stop=stop, step=step,
                   strategies=settings.strategies, metrics=settings.metrics,
                   deployment=settings.deployment(),
                   gamma_thr=settings.gamma_thr, n_samples=settings.samples,
                   seed=settings.seed, workers=settings.workers)

    def axis_values(self):
        """
        axis_values: -> [value, ...] from start to stop inclusive
        """
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]

    def deployment_at(self, value):
        if self.axis == 'gamma_t_db':
            return self.deployment.with_gamma_t_db(value)
        return self.deployment.replace(**{self.axis: value})


@dataclass
class SweepCell:
    value: float
    deployment: Deployment
    # strategy -> (outage McEstimate, rate McEstimate) for this cell
    simulations: Dict[Strategy, tuple] = field(default_factory=dict)


@dataclass(frozen=True)
class ResultRow:
    axis_value: float
    values: Dict[str, float]


def column_name(strategy, metric, method):
    return '%s.%s.%s' % (strategy.value, metric, method)


def _exact_value(strategy, metric, dep, gamma_thr):
    if strategy is Strategy.PINCH_AT_USER_X:
        if metric == 'outage':
            return analytics.outage_probability(dep, gamma_thr).probability
        return analytics.average_rate(dep).rate

    if metric == 'outage':
        return oracles.benchmark_outage_quadrature(dep, gamma_thr).probability
    return oracles.benchmark_rate_quadrature(dep).rate


def _simulated(spec, strategy, cell):
    if strategy not in cell.simulations:
        cell.simulations[strategy] = oracles.simulate(
            cell.deployment, spec.gamma_thr, strategy, spec.n_samples,
            spec.seed, workers=spec.workers)
    return cell.simulations[strategy]


def _with_row_context(spec, evaluate):
    def callback(name, cell):
        try:
            return evaluate(cell)
        except ConvergenceError as err:
            raise err.with_context(column=name, **{spec.axis: cell.value})
    return callback


def exact_method(spec, strategy, metric):
    """
    exact_method: SweepSpec, Strategy, metric -> method label or None

    The pinch-at-user-x rate has no closed form without loss. When every
    row of the sweep is lossless its column is labelled quadrature.
    """
    method = EXACT_METHOD[strategy]
    if (strategy is Strategy.PINCH_AT_USER_X and metric == 'rate'
            and all(spec.deployment_at(value).alpha == 0 for value in spec.axis_values())):
        return analytics.Method.QUADRATURE.value
    return method


def build_dispatch(spec, cells=None):
    """
    build_dispatch: SweepSpec, cells -> Dispatch

    Registers one column per (strategy, metric, method), plus a standard
    error column for every Monte Carlo value. Every column is evaluated
    on every cell.
    """
    dispatch = Dispatch(cells=cells)

    for strategy, metric in itertools.product(spec.strategies, spec.metrics):
        method = exact_method(spec, strategy, metric)
        if method is not None:
            dispatch.register(
                column_name(strategy, metric, method),
                _with_row_context(spec, lambda cell, s=strategy, m=metric:
                                  _exact_value(s, m, cell.deployment, spec.gamma_thr)))

        if spec.n_samples > 0:
            index = METRICS.index(metric)
            name = column_name(strategy, metric, MONTE_CARLO)
            dispatch.register(
                name,
                lambda _, cell, s=strategy, i=index: _simulated(spec, s, cell)[i].value)
            dispatch.register(
                name + STDERR_SUFFIX,
                lambda _, cell, s=strategy, i=index: _simulated(spec, s, cell)[i].std_error)

    return dispatch


def run_sweep(spec):
    """
    run_sweep: SweepSpec -> (columns, [ResultRow, ...])

    Rows come back in ascending axis order. Monte Carlo columns for the
    same strategy share one simulation per row, and every row reuses the
    same seed.
    """
    cells = [SweepCell(value, spec.deployment_at(value))
             for value in spec.axis_values()]
    dispatch = build_dispatch(spec, cells)

    rows = []
    for cell, values in zip(cells, dispatch.run()):
        log.debug("sweep %s=%r done", spec.axis, cell.value)
        rows.append(ResultRow(axis_value=cell.value, values=values))

    return dispatch.columns, rows


def write_csv(axis, columns, rows, out):
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow([axis] + list(columns))
    for row in rows:
        writer.writerow([format(row.axis_value, '.17g')]
                        + [format(row.values[name], '.17g') for name in columns])


def read_csv(text):
    """
    read_csv: CSV text -> (axis, columns, [ResultRow, ...])
    """
    records = list(csv.reader(text.splitlines()))
    header, body = records[0], records[1:]
    columns = header[1:]
    rows = [ResultRow(axis_value=float(record[0]),
                      values=OrderedDict(zip(columns, map(float, record[1:]))))
            for record in body]
    return header[0], columns, rows


def write_json(axis, columns, rows, out):
    document = OrderedDict([
        ('axis', axis),
        ('columns', list(columns)),
        ('rows', [OrderedDict([(axis, row.axis_value)]
                              + [(name, row.values[name]) for name in columns])
                  for row in rows]),
    ])
    json.dump(document, out, indent=2, allow_nan=False)
    out.write('\n')


@dataclass(frozen=True)
class ValidationGrid:
    """
    Parameter grids and tolerances for run_validate. Outage deltas are
    absolute, rate deltas relative.
    """
    gamma_t_db: Tuple[float, ...] = tuple(float(v) for v in np.linspace(90.0, 115.0, 20))
    alphas: Tuple[float, ...] = (0.001, 0.01, 0.05, 0.1)
    d_xs: Tuple[float, ...] = (10.0, 30.0)
    rate_gamma_t_db: Tuple[float, ...] = (80.0, 90.0, 100.0, 110.0)
    rate_alphas: Tuple[float, ...] = (0.01, 0.05, 0.1)
    outage_tolerance: float = 1e-9
    rate_tolerance: float = 1e-6
    lossless: bool = True
    check_rate: bool = True


class ValidationReport(object):
    """
    Worst-case delta per (check, branch) over a validation grid.
    """

    def __init__(self):
        self.entries = OrderedDict()
        self.checks = 0

    def record(self, check, branch, delta, tolerance, parameters):
        self.checks += 1
        key = (check, branch)
        entry = self.entries.get(key)
        if entry is None:
            entry = self.entries[key] = {'check': check, 'branch': branch,
                                         'count': 0, 'worst_delta': -1.0,
                                         'tolerance': tolerance,
                                         'parameters': {}}
        entry['count'] += 1
        if delta > entry['worst_delta']:
            entry['worst_delta'] = delta
            entry['parameters'] = dict(parameters)

    @property
    def violations(self):
        return [entry for entry in self.entries.values()
                if not entry['worst_delta'] <= entry['tolerance']]

    @property
    def passed(self):
        return not self.violations

    def raise_for_violation(self):
        """
        Raises ToleranceViolationError for the entry furthest over its
        tolerance, if any.
        """
        violations = self.violations
        if not violations:
            return
        worst = max(violations, key=lambda entry: entry['worst_delta'] / entry['tolerance'])
        raise ToleranceViolationError('%s/%s' % (worst['check'], worst['branch']),
                                      worst['worst_delta'], worst['tolerance'],
                                      worst['parameters'])

    def to_dict(self):
        return OrderedDict([
            ('passed', self.passed),
            ('checks', self.checks),
            ('branches', list(self.entries.values())),
        ])


def run_validate(dep, grid=None, gamma_thr=100.0, strict=True):
    """
    run_validate: Deployment, ValidationGrid -> ValidationReport

    Compares the outage table with its quadrature over gamma_t x alpha x
    d_x (alpha = 0 goes through the lossless expression), and the lossy
    average rate with its 2D quadrature. With strict set, a tolerance
    violation raises ToleranceViolationError naming the parameters.
    """
    grid = grid or ValidationGrid()
    report = ValidationReport()

    alphas = tuple(grid.alphas) + ((0.0,) if grid.lossless else ())
    for d_x, alpha, gamma_t_db in itertools.product(grid.d_xs, alphas, grid.gamma_t_db):
        point = dep.replace(d_x=d_x, alpha=alpha).with_gamma_t_db(gamma_t_db)
        closed = analytics.outage_probability(point, gamma_thr)
        oracle = oracles.outage_quadrature(point, gamma_thr)

        report.record('outage', closed.branch.value,
                      abs(closed.probability - oracle.probability),
                      grid.outage_tolerance,
                      {'gamma_t_db': gamma_t_db, 'alpha': alpha, 'd_x': d_x})

    if grid.check_rate:
        for d_x, alpha, gamma_t_db in itertools.product(
                grid.d_xs, grid.rate_alphas, grid.rate_gamma_t_db):
            point = dep.replace(d_x=d_x, alpha=alpha).with_gamma_t_db(gamma_t_db)
            closed = analytics.avg_rate_lossy(point).rate
            oracle = oracles.rate_quadrature(point).rate

            report.record('rate', 'lossy', abs(closed - oracle) / max(abs(oracle), 1e-300),
                          grid.rate_tolerance,
                          {'gamma_t_db': gamma_t_db, 'alpha': alpha, 'd_x': d_x})

    log.debug("validate: %d checks, passed=%s", report.checks, report.passed)
    if strict:
        report.raise_for_violation()
    return report


def run_placement_demo(dep, user):
    """
    run_placement_demo: Deployment, UserPosition -> OrderedDict report

    deviation_bound is None when the objective has no stationary point
    (the bound is unbounded there).
    """
    solution = optimal_position(dep, user)
    bound = deviation_bound(dep, user)
    return OrderedDict([
        ('x_m', user.x_m),
        ('y_m', user.y_m),
        ('alpha', dep.alpha),
        ('branch', solution.branch.value),
        ('x_star', solution.x_star),
        ('discriminant', solution.discriminant),
        ('deviation', abs(solution.x_star - user.x_m)),
        ('deviation_bound', bound if math.isfinite(bound) else None),
        ('snr_at_user_x', received_snr(dep, user.x_m, user)),
        ('snr_optimal', received_snr(dep, solution.x_star, user)),
        ('gain', placement_gain(dep, user)),
    ])


def _write_mapping(mapping, fmt, out):
    if fmt == 'json':
        json.dump(mapping, out, indent=2, allow_nan=False)
        out.write('\n')
        return

    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(['key', 'value'])
    for key, value in mapping.items():
        # None is written as an empty field
        writer.writerow([key, format(value, '.17g') if isinstance(value, float) else value])


def _command_sweep(args, settings, out):
    if (args.gamma_t_db is not None and ':' not in args.gamma_t_db
            and settings.axis == 'gamma_t_db'):
        raise ConfigError("--gamma-t-db %s is a single value but the sweep axis is "
                          "gamma_t_db; give START:STOP:STEP or pick another --axis"
                          % args.gamma_t_db)

    spec = SweepSpec.from_settings(settings)
    columns, rows = run_sweep(spec)

    if settings.format == 'json':
        write_json(spec.axis, columns, rows, out)
    else:
        write_csv(spec.axis, columns, rows, out)
    return EXIT_OK


def _command_validate(args, settings, out):
    defaults = ValidationGrid()
    grid = ValidationGrid(
        outage_tolerance=(defaults.outage_tolerance if args.outage_tolerance is None
                          else args.outage_tolerance),
        rate_tolerance=(defaults.rate_tolerance if args.rate_tolerance is None
                        else args.rate_tolerance),
        check_rate=not args.skip_rate)

    report = run_validate(settings.deployment(), grid, gamma_thr=settings.gamma_thr,
                          strict=False)

    if settings.format == 'json':
        json.dump(report.to_dict(), out, indent=2, allow_nan=False)
        out.write('\n')
    else:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['check', 'branch', 'count', 'worst_delta', 'tolerance',
                         'parameters'])
        for entry in report.entries.values():
            writer.writerow([entry['check'], entry['branch'], entry['count'],
                             format(entry['worst_delta'], '.17g'),
                             format(entry['tolerance'], '.17g'),
                             ';'.join('%s=%r' % item
                                      for item in sorted(entry['parameters'].items()))])

    report.raise_for_violation()
    return EXIT_OK


def _command_placement(args, settings, out):
    dep = settings.deployment()
    user = UserPosition.inside(dep, args.x_m, args.y_m)
    _write_mapping(run_placement_demo(dep, user), settings.format, out)
    return EXIT_OK


def _command_power_gap(args, settings, out):
    d_x_pair = tuple(float(value) for value in parse_list(args.compare_dx))
    if len(d_x_pair) != 2:
        raise InvalidParameterError("--compare-dx needs two lengths, got %r"
                                    % args.compare_dx)

    dep = settings.deployment()
    rows = []
    for strategy in settings.strategies:
        if strategy is Strategy.PINCH_OPTIMAL and settings.samples < 1:
            raise InvalidParameterError("%s needs samples > 0" % strategy.value)
        rows.append((strategy.value,) + oracles.power_gap(
            dep, settings.gamma_thr, args.target, strategy, d_x_pair,
            n_samples=settings.samples, seed=settings.seed))

    labels = ['required_db.d_x=%s' % format(d_x, 'g') for d_x in d_x_pair]
    if settings.format == 'json':
        json.dump([OrderedDict(zip(['strategy'] + labels + ['gap_db'], row))
                   for row in rows], out, indent=2, allow_nan=False)
        out.write('\n')
    else:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['strategy'] + labels + ['gap_db'])
        for row in rows:
            writer.writerow([row[0]] + [format(value, '.17g') for value in row[1:]])
    return EXIT_OK


def _add_common_flags(parser):
    # Defaults stay None so unset flags fall through to the config file
    parser.add_argument('--config', metavar='PATH',
                        help='key = value settings file (else $PINCHPERF_CONFIG)')
    parser.add_argument('--gamma-t-db', metavar='START:STOP:STEP',
                        help='transmit SNR P_t/sigma^2 in dB; a range sweeps it. '
                             'sweep only takes a single value with another --axis')
    parser.add_argument('--axis', choices=AXES, help='sweep axis')
    parser.add_argument('--range', metavar='START:STOP:STEP', dest='sweep_range',
                        help='inclusive sweep range for --axis')
    parser.add_argument('--alpha', type=float, help='absorption coefficient (1/m)')
    parser.add_argument('--dx', type=float, dest='d_x', help='region length D_x (m)')
    parser.add_argument('--dy', type=float, dest='d_y', help='region width D_y (m)')
    parser.add_argument('--h', type=float, help='waveguide height (m)')
    parser.add_argument('--f-c', type=float, dest='f_c', help='carrier frequency (Hz)')
    parser.add_argument('--n-eff', type=float, dest='n_eff',
                        help='effective refractive index')
    parser.add_argument('--sigma2-dbm', type=float, dest='sigma2_dbm',
                        help='noise power (dBm)')
    parser.add_argument('--n-antennas', type=int, dest='n_antennas',
                        help='number of antennas N')
    parser.add_argument('--gamma-thr', type=float, dest='gamma_thr',
                        help='linear SNR outage threshold')
    parser.add_argument('--strategy', action='append',
                        help='%s (repeatable)' % ', '.join(s.value for s in Strategy))
    parser.add_argument('--metric', action='append', help='outage, rate (repeatable)')
    parser.add_argument('--samples', type=int,
                        help='Monte Carlo realizations, 0 for none')
    parser.add_argument('--seed', type=int, help='64-bit Monte Carlo seed')
    parser.add_argument('--workers', type=int, help='Monte Carlo worker threads')
    parser.add_argument('--format', choices=('csv', 'json'))
    parser.add_argument('--out', metavar='PATH', help='output file (default stdout)')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pinchperf',
        description='Outage and rate of pinching-antenna systems.')
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    sweep = commands.add_parser('sweep', help='outage / rate table over an axis')
    _add_common_flags(sweep)
    sweep.set_defaults(func=_command_sweep)

    validate = commands.add_parser('validate',
                                   help='check closed forms against quadrature')
    _add_common_flags(validate)
    validate.add_argument('--outage-tolerance', type=float)
    validate.add_argument('--rate-tolerance', type=float)
    validate.add_argument('--skip-rate', action='store_true',
                          help='only run the outage grid')
    validate.set_defaults(func=_command_validate)

    placement = commands.add_parser('placement', help='optimal pinch for one user')
    _add_common_flags(placement)
    placement.add_argument('--x-m', type=float, default=5.0, dest='x_m')
    placement.add_argument('--y-m', type=float, default=2.0, dest='y_m')
    placement.set_defaults(func=_command_placement)

    power = commands.add_parser('power-gap',
                                help='transmit SNR needed for a target outage')
    _add_common_flags(power)
    power.add_argument('--target', type=float, default=1e-5, help='target outage')
    power.add_argument('--compare-dx', default='10,30',
                       help='two region lengths to compare')
    power.set_defaults(func=_command_power_gap)

    return parser


def settings_overrides(args):
    """
    settings_overrides: argparse Namespace -> {config key: value}
    """
    overrides = dict((key, getattr(args, key)) for key in (
        'd_x', 'd_y', 'h', 'alpha', 'f_c', 'n_eff', 'sigma2_dbm', 'n_antennas',
        'gamma_thr', 'samples', 'seed', 'format', 'workers', 'axis',
        'strategy', 'metric'))
    overrides['range'] = args.sweep_range

    if args.gamma_t_db is not None:
        if ':' in args.gamma_t_db:
            overrides['axis'] = 'gamma_t_db'
            overrides['range'] = args.gamma_t_db
        else:
            overrides['gamma_t_db'] = args.gamma_t_db

    return overrides


def _configure_logging(verbose):
    logging.basicConfig(stream=sys.stderr,
                        level=logging.DEBUG if verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None, stdout=None):
    """
    main: argv, text sink -> exit status
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        settings = load_settings(settings_overrides(args), config_path=args.config)

        if args.out:
            try:
                out = open(args.out, 'w', newline='', encoding='utf-8')
            except OSError as err:
                raise ConfigError("cannot write %s: %s" % (args.out, err))
            with out:
                return args.func(args, settings, out)
        return args.func(args, settings, stdout or sys.stdout)

    except ToleranceViolationError as err:
        log.error("%s", err)
        return EXIT_TOLERANCE
    except ConvergenceError as err:
        log.error("%s", err)
        return EXIT_CONVERGENCE
    except PinchPerfError as err:
        log.error("%s", err)
        return EXIT_BAD_INPUT


if __name__ == '__main__':
    sys.exit(main())
