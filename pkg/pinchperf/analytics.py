"""
analytics.py

Closed-form outage probability and average rate when the pinching
antenna is placed directly above the user, at (x_m, 0, h).

The lossy outage probability is a six-row table of (condition,
expression) pairs over C = eta N P_t / (gamma_thr sigma^2); the lossless
one has three rows. Rows are tried top to bottom and the first whose
condition holds is used. Adjacent rows agree on their shared boundary,
so the tie-break never changes the value.
"""
import enum
import logging
import math
from collections import namedtuple
from dataclasses import dataclass
from typing import Optional

from pinchperf import integrate
from pinchperf.errors import InvalidParameterError
from pinchperf.model import derive_constants
from pinchperf.specfun import dilog, z_kernel

log = logging.getLogger(__name__)

LN2 = math.log(2.0)

# Radicands this close below zero are rounding dust at a row boundary
RADICAND_SLACK = 1e-12
PROBABILITY_SLACK = 1e-12


class Method(enum.Enum):
    CLOSED_FORM = 'closed-form'
    MONTE_CARLO = 'monte-carlo'
    QUADRATURE = 'quadrature'


class OutageBranch(enum.Enum):
    FULL_OUTAGE = 'row-1'
    FEED_PARTIAL = 'row-2'
    FEED_SATURATED = 'row-3'
    SPAN_PARTIAL = 'row-4'
    SPAN_SATURATED = 'row-5'
    NO_OUTAGE = 'row-6'
    LOSSLESS_FULL_OUTAGE = 'lossless-1'
    LOSSLESS_PARTIAL = 'lossless-2'
    LOSSLESS_NO_OUTAGE = 'lossless-3'


@dataclass(frozen=True)
class OutageResult:
    probability: float
    method: Method
    branch: Optional[OutageBranch] = None
    abs_error: float = 0.0


@dataclass(frozen=True)
class RateResult:
    rate: float
    method: Method
    abs_error: float = 0.0


# Quantities every table row is written in terms of.
#   h2 = h^2, b2 = d_y^2 / 4, c = C, ce = C exp(-alpha d_x)
TableTerms = namedtuple('TableTerms', 'h h2 b2 c ce alpha d_x d_y')


def table_terms(dep, c_const):
    """
    table_terms: Deployment, C -> TableTerms
    """
    return TableTerms(h=dep.h, h2=dep.h ** 2, b2=dep.d_y ** 2 / 4.0,
                      c=c_const, ce=c_const * math.exp(-dep.alpha * dep.d_x),
                      alpha=dep.alpha, d_x=dep.d_x, d_y=dep.d_y)


def _root(radicand):
    if radicand < -RADICAND_SLACK:
        raise ArithmeticError("negative radicand %r outside row domain" % radicand)
    return math.sqrt(max(radicand, 0.0))


def _coverage(t, r):
    # r - h atan(r/h): antiderivative piece shared by rows 2, 4 and 5
    return r - t.h * math.atan(r / t.h)


def _span_factor(t):
    return 4.0 / (t.alpha * t.d_x * t.d_y)


def _saturated_log(t):
    # ln(h^2/C + d_y^2/(4C)), evaluated as one quotient
    return math.log((t.h2 + t.b2) / t.c) / (t.alpha * t.d_x)


def _row_full_outage(t):
    return 1.0


def _row_feed_partial(t):
    return 1.0 - _span_factor(t) * _coverage(t, _root(t.c - t.h2))


def _row_feed_saturated(t):
    return (1.0 + (math.log((t.h2 + t.b2) / t.c) - 2.0) / (t.alpha * t.d_x)
            + 4.0 * t.h * math.atan(t.d_y / (2.0 * t.h))
            / (t.alpha * t.d_x * t.d_y))


def _row_span_partial(t):
    return 1.0 + _span_factor(t) * (_coverage(t, _root(t.ce - t.h2))
                                    - _coverage(t, _root(t.c - t.h2)))


def _row_span_saturated(t):
    return (1.0 + _span_factor(t) * (_coverage(t, _root(t.ce - t.h2))
                                     - _coverage(t, t.d_y / 2.0))
            + _saturated_log(t))


def _row_no_outage(t):
    return 0.0


# Format:
#        [{branch: OutageBranch,
#          condition: TableTerms -> bool,
#          expression: TableTerms -> probability},
#         ...
#         ]
# in the order the rows are tried.
OUTAGE_TABLE = [
    {'branch': OutageBranch.FULL_OUTAGE,
     'condition': lambda t: t.h2 >= t.c,
     'expression': _row_full_outage},
    {'branch': OutageBranch.FEED_PARTIAL,
     'condition': lambda t: t.h2 <= t.c and t.h2 >= t.c - t.b2 and t.h2 >= t.ce,
     'expression': _row_feed_partial},
    {'branch': OutageBranch.FEED_SATURATED,
     'condition': lambda t: t.h2 <= t.c - t.b2 and t.h2 >= t.ce,
     'expression': _row_feed_saturated},
    {'branch': OutageBranch.SPAN_PARTIAL,
     'condition': lambda t: t.h2 >= t.c - t.b2 and t.h2 <= t.ce,
     'expression': _row_span_partial},
    {'branch': OutageBranch.SPAN_SATURATED,
     'condition': lambda t: (t.h2 <= t.c - t.b2 and t.h2 <= t.ce
                             and t.h2 >= t.ce - t.b2),
     'expression': _row_span_saturated},
    {'branch': OutageBranch.NO_OUTAGE,
     'condition': lambda t: t.h2 <= t.ce - t.b2,
     'expression': _row_no_outage},
]

LOSSLESS_OUTAGE_TABLE = [
    {'branch': OutageBranch.LOSSLESS_FULL_OUTAGE,
     'condition': lambda t: t.h2 >= t.c,
     'expression': lambda t: 1.0},
    {'branch': OutageBranch.LOSSLESS_PARTIAL,
     'condition': lambda t: t.h2 <= t.c <= t.h2 + t.b2,
     'expression': lambda t: 1.0 - 2.0 / t.d_y * _root(t.c - t.h2)},
    {'branch': OutageBranch.LOSSLESS_NO_OUTAGE,
     'condition': lambda t: t.c >= t.h2 + t.b2,
     'expression': lambda t: 0.0},
]


def select_row(table, terms):
    """
    select_row: row table, TableTerms -> row

    Returns the first row whose condition holds.
    """
    for row in table:
        if row['condition'](terms):
            return row

    raise ArithmeticError("No outage row matched %r" % (terms,))


def _evaluate_table(table, terms):
    row = select_row(table, terms)
    probability = row['expression'](terms)

    if not -PROBABILITY_SLACK <= probability <= 1.0 + PROBABILITY_SLACK:
        log.warning("%s produced probability %.17g outside [0, 1]",
                    row['branch'].value, probability)
    log.debug("outage row %s -> %.17g", row['branch'].value, probability)

    return OutageResult(probability=min(max(probability, 0.0), 1.0),
                        method=Method.CLOSED_FORM, branch=row['branch'])


def outage_lossy(dep, gamma_thr):
    """
    outage_lossy: Deployment with alpha > 0, gamma_thr -> OutageResult
    """
    if not dep.alpha > 0:
        raise InvalidParameterError(
            "outage_lossy needs alpha > 0; use outage_lossless for alpha = 0")

    constants = derive_constants(dep, gamma_thr)
    return _evaluate_table(OUTAGE_TABLE, table_terms(dep, constants.c_const))


def outage_lossless(dep, gamma_thr):
    """
    outage_lossless: Deployment, gamma_thr -> OutageResult

    Three-branch lossless expression; dep.alpha is ignored.
    """
    constants = derive_constants(dep, gamma_thr)
    return _evaluate_table(LOSSLESS_OUTAGE_TABLE,
                           table_terms(dep.replace(alpha=0.0), constants.c_const))


def outage_probability(dep, gamma_thr):
    if dep.alpha > 0:
        return outage_lossy(dep, gamma_thr)
    return outage_lossless(dep, gamma_thr)


def _rate_antiderivative(s, excess, h, d_y):
    """
    _rate_antiderivative: s, s^2 - h^2, h, d_y -> real

    The four-term bracket of the average-rate closed form at
    s = sqrt(A e^(-alpha x) + h^2). ln((s-h)/(s+h)) is taken as
    ln((s^2-h^2)/(s+h)^2) so small gains keep their digits.
    """
    half_width = d_y / 2.0
    arctan = math.atan(half_width / s)

    return (d_y / 4.0 * math.log(half_width ** 2 + s * s)
            + s * arctan
            + h / 2.0 * arctan * math.log(excess / (s + h) ** 2)
            + h / 4.0 * (z_kernel(s, h, d_y) - z_kernel(s, -h, d_y)))


def avg_rate_lossy(dep):
    """
    avg_rate_lossy: Deployment with alpha > 0 -> RateResult

    Average rate in bits/s/Hz with A = eta N P_t / sigma^2, assembled as
    the dilogarithm term, the arctangent term and the bracketed
    antiderivative between s(0) = sqrt(A + h^2) and
    s(d_x) = sqrt(A e^(-alpha d_x) + h^2).
    """
    if not dep.alpha > 0:
        raise InvalidParameterError(
            "avg_rate_lossy needs alpha > 0; use avg_rate_lossless_numeric")

    a_const = dep.gain
    alpha, d_x, d_y, h = dep.alpha, dep.d_x, dep.d_y, dep.h
    h2 = h * h
    k = h2 + d_y ** 2 / 4.0

    excess_feed = a_const
    excess_end = a_const * math.exp(-alpha * d_x)
    if excess_end <= 0.0:
        raise InvalidParameterError(
            "A exp(-alpha d_x) underflows to zero (A=%r)" % a_const)

    s_feed = math.sqrt(excess_feed + h2)
    s_end = math.sqrt(excess_end + h2)

    dilog_term = d_y / (alpha * LN2) * (dilog(-excess_end / k) - dilog(-excess_feed / k))
    arctan_term = 4.0 * h * d_x / LN2 * math.atan(d_y / (2.0 * h))
    bracket = (_rate_antiderivative(s_end, excess_end, h, d_y)
               - _rate_antiderivative(s_feed, excess_feed, h, d_y))

    rate = (dilog_term - arctan_term - 8.0 / (alpha * LN2) * bracket) / (d_x * d_y)
    log.debug("avg_rate_lossy: A=%.6g -> %.17g", a_const, rate)

    return RateResult(rate=max(rate, 0.0), method=Method.CLOSED_FORM)


def avg_rate_lossless_numeric(dep):
    """
    avg_rate_lossless_numeric: Deployment -> RateResult

    Lossless average rate by 2D adaptive quadrature (dep.alpha ignored).
    """
    rate, abserr = integrate.pas_rate_integral(dep.d_x, dep.d_y, dep.h, 0.0,
                                               dep.gain)
    return RateResult(rate=max(rate, 0.0), method=Method.QUADRATURE,
                      abs_error=abserr)


def average_rate(dep):
    if dep.alpha > 0:
        return avg_rate_lossy(dep)
    return avg_rate_lossless_numeric(dep)
