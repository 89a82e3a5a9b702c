"""
placement.py

Where to pinch the waveguide for one user. The received SNR is
(eta N P_t / sigma^2) f(x_p) with

    f(x_p) = exp(-alpha x_p) / ((x_m - x_p)^2 + y_m^2 + h^2)

and its maximizer over [0, d_x] has a closed form driven by the
discriminant Delta = 4 - 4 alpha^2 (y_m^2 + h^2).
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

# |Delta| at or below this counts as the double-root case
DISCRIMINANT_TOLERANCE = 1e-12


class PlacementBranch(enum.Enum):
    INTERIOR_ROOT = 'interior-root'
    DOUBLE_ROOT = 'double-root'
    FEED_POINT = 'feed-point'
    LOSSLESS = 'lossless'


# Index order used by optimal_positions' branch codes
BRANCH_CODES = (PlacementBranch.INTERIOR_ROOT, PlacementBranch.DOUBLE_ROOT,
                PlacementBranch.FEED_POINT, PlacementBranch.LOSSLESS)


@dataclass(frozen=True)
class PlacementSolution:
    x_star: float
    branch: PlacementBranch
    objective: float
    discriminant: float


def objective_field(alpha, h, x_m, y_m, x_p):
    """
    objective_field: alpha, h, x_m, y_m, x_p (floats or arrays) -> f(x_p)
    """
    return np.exp(-alpha * x_p) / ((x_m - x_p) ** 2 + y_m ** 2 + h ** 2)


def snr_objective(dep, user, x_p):
    """
    snr_objective: Deployment, UserPosition, x_p -> f(x_p)

    received_snr(dep, x_p, user) == dep.gain * snr_objective(dep, user, x_p)
    """
    return float(objective_field(dep.alpha, dep.h, user.x_m, user.y_m, x_p))


def _root_offset(alpha, rho2):
    # (1 - sqrt(1 - alpha^2 rho2)) / alpha without the cancellation
    return alpha * rho2 / (1.0 + np.sqrt(np.maximum(1.0 - alpha ** 2 * rho2, 0.0)))


def optimal_positions(dep, x_m, y_m):
    """
    optimal_positions: Deployment, x_m, y_m (arrays) -> (x_star, codes)

    Vectorized optimum. codes index BRANCH_CODES. The stationary point
    x_o1 wins when Delta > 0, x_o1 > 0 and f(x_o1) > f(0); the double
    root x_o2 = x_m - 1/alpha wins when Delta == 0 and x_o2 > 0; the feed
    point wins otherwise. alpha == 0 gives x_m.
    """
    x_m = np.asarray(x_m, dtype=float)
    y_m = np.asarray(y_m, dtype=float)
    alpha, h = dep.alpha, dep.h

    if alpha == 0:
        x_star = np.clip(x_m, 0.0, dep.d_x)
        return x_star, np.full(x_star.shape, BRANCH_CODES.index(PlacementBranch.LOSSLESS))

    rho2 = y_m ** 2 + h ** 2
    discriminant = 4.0 - 4.0 * alpha ** 2 * rho2

    x_o1 = x_m - _root_offset(alpha, rho2)
    x_o2 = x_m - 1.0 / alpha

    interior = ((discriminant > DISCRIMINANT_TOLERANCE) & (x_o1 > 0)
                & (objective_field(alpha, h, x_m, y_m, x_o1)
                   > objective_field(alpha, h, x_m, y_m, 0.0)))
    double = (~interior & (np.abs(discriminant) <= DISCRIMINANT_TOLERANCE)
              & (x_o2 > 0))

    x_star = np.where(interior, x_o1, np.where(double, x_o2, 0.0))
    codes = np.where(interior, 0, np.where(double, 1, 2))

    # x_o1 <= x_m <= d_x already; kept so no caller ever sees x_star > d_x
    return np.clip(x_star, 0.0, dep.d_x), codes


def optimal_position(dep, user):
    """
    optimal_position: Deployment, UserPosition -> PlacementSolution
    """
    x_star, codes = optimal_positions(dep, user.x_m, user.y_m)
    x_star = float(x_star)

    return PlacementSolution(
        x_star=x_star,
        branch=BRANCH_CODES[int(codes)],
        objective=snr_objective(dep, user, x_star),
        discriminant=4.0 - 4.0 * dep.alpha ** 2 * (user.y_m ** 2 + dep.h ** 2))


def placement_gain(dep, user):
    """
    placement_gain: Deployment, UserPosition -> f(x*) / f(x_m)

    How much SNR the optimal pinch buys over pinching above the user.
    """
    best = optimal_position(dep, user)
    return best.objective / snr_objective(dep, user, user.x_m)


def stationarity_residual(dep, user, x_p):
    """
    Numerator of f'(x_p) without its exp factor:
    -alpha((x_m - x_p)^2 + y_m^2 + h^2) + 2(x_m - x_p)
    """
    offset = user.x_m - x_p
    return -dep.alpha * (offset ** 2 + user.y_m ** 2 + dep.h ** 2) + 2.0 * offset


def deviation_bound(dep, user):
    """
    deviation_bound: Deployment, UserPosition -> distance

    Distance between x_m and the stationary point x_o1. Infinite when
    Delta < 0 (no stationary point), 0 when alpha == 0.
    """
    rho2 = user.y_m ** 2 + dep.h ** 2
    if dep.alpha == 0:
        return 0.0
    if dep.alpha ** 2 * rho2 > 1.0:
        return math.inf
    return float(_root_offset(dep.alpha, rho2))
