"""
integrate.py

Adaptive Gauss-Kronrod quadrature (QUADPACK via scipy.integrate.quad)
with failure checking, and the integral forms of outage probability and
average rate that the closed forms are checked against.

Every integral here is written straight from its probabilistic
definition over the uniform user rectangle; none of them reuse the
closed-form algebra.
"""
import logging
import math

from scipy import integrate

from pinchperf.errors import ConvergenceError
from pinchperf.model import REFERENCE_DISTANCE

log = logging.getLogger(__name__)

OUTAGE_EPSABS = 1e-12
RATE_EPSREL = 1e-9
MAX_SUBINTERVALS = 200

# QUADPACK sometimes flags roundoff once it is already at machine precision;
# only estimates this many times above the request count as a failure
CONVERGENCE_SLACK = 1e3


def checked_quad(func, a, b, label, epsabs=0.0, epsrel=1e-10,
                 limit=MAX_SUBINTERVALS):
    """
    checked_quad: f, a, b, label -> (value, abserr)

    Runs scipy.integrate.quad and raises ConvergenceError when QUADPACK
    reports a problem and its error estimate is not within
    CONVERGENCE_SLACK of the requested tolerance.
    """
    if b <= a:
        return 0.0, 0.0

    result = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel,
                            limit=limit, full_output=1)
    value, abserr = result[0], result[1]

    if len(result) > 3:
        tolerance = max(epsabs, epsrel * abs(value))
        if not math.isfinite(value) or abserr > CONVERGENCE_SLACK * tolerance:
            raise ConvergenceError(label, value, abserr, result[3])
        log.warning("%s: accepted QUADPACK warning (abserr=%.3g): %s",
                    label, abserr, result[3])

    return value, abserr


def piecewise_quad(func, a, b, breakpoints, label, epsabs=0.0, epsrel=1e-10):
    """
    piecewise_quad: f, a, b, [x ...], label -> (value, abserr)

    Integrates separately between consecutive breakpoints lying strictly
    inside (a, b), so kinks in the integrand land on segment ends.
    """
    edges = [a] + sorted(set(x for x in breakpoints
                             if math.isfinite(x) and a < x < b)) + [b]
    segments = len(edges) - 1

    values = []
    errors = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, abserr = checked_quad(func, lo, hi, label,
                                     epsabs=epsabs / segments, epsrel=epsrel)
        values.append(value)
        errors.append(abserr)

    return math.fsum(values), math.fsum(errors)


def _coverage_outage(radicand, d_x, d_y, breakpoints, label):
    """
    Fraction of the rectangle in outage when, at abscissa x, a user is
    served iff y^2 < radicand(x).
    """
    half_width = d_y / 2.0

    def outage_fraction(x):
        served = math.sqrt(max(radicand(x), 0.0))
        return 1.0 - min(half_width, served) / half_width

    value, abserr = piecewise_quad(outage_fraction, 0.0, d_x, breakpoints,
                                   label, epsabs=OUTAGE_EPSABS * d_x,
                                   epsrel=0.0)
    log.debug("%s: integral %.17g (abserr %.3g)", label, value, abserr)
    return value / d_x, abserr / d_x


def pas_outage_integral(d_x, d_y, h, alpha, c_const):
    """
    pas_outage_integral: geometry, alpha, C -> (P_out, abserr)

    (1/d_x) integral_0^d_x 1 - (2/d_y) min(d_y/2, sqrt(max(C e^(-alpha x) - h^2, 0))) dx

    for a pinching antenna directly above the user's x coordinate.
    """
    h2 = h * h
    b2 = d_y * d_y / 4.0

    breakpoints = []
    if alpha > 0 and c_const > 0:
        breakpoints = [math.log(c_const / h2) / alpha,
                       math.log(c_const / (h2 + b2)) / alpha]

    return _coverage_outage(lambda x: c_const * math.exp(-alpha * x) - h2,
                            d_x, d_y, breakpoints, 'pas-outage')


def benchmark_outage_integral(d_x, d_y, c_const):
    """
    benchmark_outage_integral: geometry, C -> (P_out, abserr)

    Outage of an antenna at the floor corner: a user at (x, y) is served
    iff max(x^2 + y^2, 1) < C.
    """
    if c_const <= REFERENCE_DISTANCE ** 2:
        return 1.0, 0.0

    b2 = d_y * d_y / 4.0
    breakpoints = [math.sqrt(c_const)]
    if c_const > b2:
        breakpoints.append(math.sqrt(c_const - b2))

    return _coverage_outage(lambda x: c_const - x * x, d_x, d_y,
                            breakpoints, 'benchmark-outage')


def _rate_integral(log_gain, d_x, d_y, inner_breaks, outer_breaks, label,
                   epsrel):
    """
    (2 / (d_x d_y ln 2)) integral_0^d_x integral_0^(d_y/2) log_gain(x, y) dy dx
    """
    half_width = d_y / 2.0

    def inner(x):
        value, _ = piecewise_quad(lambda y: log_gain(x, y), 0.0, half_width,
                                  inner_breaks(x), label + '-inner',
                                  epsrel=epsrel / 10.0)
        return value

    value, abserr = piecewise_quad(inner, 0.0, d_x, outer_breaks, label,
                                   epsrel=epsrel)
    log.debug("%s: integral %.17g (abserr %.3g)", label, value, abserr)

    scale = 2.0 / (d_x * d_y * math.log(2.0))
    return scale * value, scale * abserr


def pas_rate_integral(d_x, d_y, h, alpha, a_const, epsrel=RATE_EPSREL):
    """
    pas_rate_integral: geometry, alpha, A -> (R, abserr)

    Mean of log2(1 + A e^(-alpha x) / (y^2 + h^2)) over the rectangle.
    """
    h2 = h * h

    def log_gain(x, y):
        return math.log1p(a_const * math.exp(-alpha * x) / (y * y + h2))

    return _rate_integral(log_gain, d_x, d_y, lambda x: (), (),
                          'pas-rate', epsrel)


def benchmark_rate_integral(d_x, d_y, a_const, epsrel=RATE_EPSREL):
    """
    benchmark_rate_integral: geometry, A -> (R, abserr)

    Mean of log2(1 + A / max(x^2 + y^2, 1)) over the rectangle.
    """
    r2 = REFERENCE_DISTANCE ** 2

    def log_gain(x, y):
        return math.log1p(a_const / max(x * x + y * y, r2))

    def inner_breaks(x):
        if x < REFERENCE_DISTANCE:
            return (math.sqrt(r2 - x * x),)
        return ()

    return _rate_integral(log_gain, d_x, d_y, inner_breaks,
                          (REFERENCE_DISTANCE,), 'benchmark-rate', epsrel)
