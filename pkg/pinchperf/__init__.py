"""
pinchperf package initialization file

Closed-form outage probability and average rate of pinching-antenna
systems, optimal antenna placement, and the Monte Carlo and quadrature
oracles the closed forms are checked against.
"""
import logging

from pinchperf.errors import (BracketError, ConfigError, ConvergenceError,
                              DomainError, InvalidParameterError,
                              PinchPerfError, ToleranceViolationError)
from pinchperf.specfun import ComplexValue, dilog, im_dilog, z_kernel
from pinchperf.model import (Deployment, DerivedConstants, UserPosition,
                             benchmark_snr, derive_constants, received_snr)
from pinchperf.analytics import (Method, OutageBranch, OutageResult, RateResult,
                                 average_rate, avg_rate_lossless_numeric,
                                 avg_rate_lossy, outage_lossless, outage_lossy,
                                 outage_probability)
from pinchperf.placement import (PlacementBranch, PlacementSolution,
                                 optimal_position, optimal_positions,
                                 placement_gain, deviation_bound)
from pinchperf.oracles import (McEstimate, Strategy, benchmark_outage_quadrature,
                               benchmark_rate_quadrature, find_power_for_outage,
                               outage_quadrature, power_gap, rate_quadrature,
                               simulate, simulate_outage, simulate_rate)

__version__ = '1.0.0'

logging.getLogger(__name__).addHandler(logging.NullHandler())
