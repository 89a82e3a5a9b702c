"""
model.py

Physical description of a pinching-antenna deployment and the received
SNR it produces.

A user stands at (x_m, y_m, 0) inside the rectangle [0, d_x] x
[-d_y/2, d_y/2]. The waveguide runs along the x axis at height h and is
fed at (0, 0, h); a pinching antenna at (x_p, 0, h) radiates what is left
after exp(-alpha x_p) of absorption. The conventional benchmark is a
fixed antenna at the floor corner (0, 0, 0).
"""
import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from pinchperf.errors import InvalidParameterError

SPEED_OF_LIGHT = 299792458.0

# Far-field path loss is referenced to 1 m; the benchmark never gets closer
REFERENCE_DISTANCE = 1.0


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


def linear_to_db(value):
    return 10.0 * math.log10(value)


def dbm_to_watts(dbm):
    """
    dbm_to_watts: power in dBm -> power in watts
    """
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts):
    return 10.0 * math.log10(watts) + 30.0


def _require(condition, message, *args):
    if not condition:
        raise InvalidParameterError(message % args)


@dataclass(frozen=True)
class Deployment:
    """
    Full physical scenario.

    Fields:
        d_x:        waveguide / service region length along x (m)
        d_y:        service region width along y (m)
        h:          waveguide height (m)
        alpha:      waveguide absorption coefficient (1/m), 0 for lossless
        f_c:        carrier frequency (Hz)
        n_eff:      effective refractive index of the waveguide
        p_t:        transmit power (W)
        sigma2:     noise power (W)
        n_antennas: number of pinching (or benchmark) antennas N
    """
    d_x: float = 10.0
    d_y: float = 10.0
    h: float = 3.0
    alpha: float = 0.01
    f_c: float = 28e9
    n_eff: float = 1.4
    p_t: float = 1e-2
    sigma2: float = 1e-12
    n_antennas: int = 1

    def __post_init__(self):
        for name in ('d_x', 'd_y', 'h', 'f_c', 'p_t', 'sigma2'):
            value = getattr(self, name)
            _require(math.isfinite(value) and value > 0,
                     "Deployment.%s must be a finite positive number, got %r",
                     name, value)
        _require(math.isfinite(self.alpha) and self.alpha >= 0,
                 "Deployment.alpha must be >= 0, got %r", self.alpha)
        _require(math.isfinite(self.n_eff) and self.n_eff > 1,
                 "Deployment.n_eff must be > 1, got %r", self.n_eff)
        _require(int(self.n_antennas) == self.n_antennas and self.n_antennas >= 1,
                 "Deployment.n_antennas must be an integer >= 1, got %r",
                 self.n_antennas)

    @property
    def wavelength(self):
        return SPEED_OF_LIGHT / self.f_c

    @property
    def guided_wavelength(self):
        return self.wavelength / self.n_eff

    @property
    def eta(self):
        """
        Free-space path loss at the 1 m reference distance, lambda^2 / (16 pi^2).
        """
        return self.wavelength ** 2 / (16.0 * math.pi ** 2)

    @property
    def gain(self):
        """
        eta N P_t / sigma^2: the SNR a user would see at 1 m with no absorption.
        """
        return self.eta * self.n_antennas * self.p_t / self.sigma2

    @property
    def gamma_t_db(self):
        return linear_to_db(self.p_t / self.sigma2)

    def with_gamma_t_db(self, gamma_t_db):
        """
        with_gamma_t_db: transmit SNR in dB -> Deployment

        Returns a copy whose P_t gives the requested P_t / sigma^2.
        """
        return self.replace(p_t=self.sigma2 * db_to_linear(gamma_t_db))

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class UserPosition:
    """
    A user's (x_m, y_m) coordinates. Use UserPosition.inside() to check
    the bounds against a deployment.
    """
    x_m: float
    y_m: float

    def __post_init__(self):
        _require(math.isfinite(self.x_m) and math.isfinite(self.y_m),
                 "UserPosition coordinates must be finite, got (%r, %r)",
                 self.x_m, self.y_m)

    @classmethod
    def inside(cls, dep, x_m, y_m):
        """
        inside: Deployment, x_m, y_m -> UserPosition

        Builds a position and enforces x_m in [0, d_x], |y_m| <= d_y/2.
        """
        _require(0.0 <= x_m <= dep.d_x,
                 "x_m=%r is outside [0, %r]", x_m, dep.d_x)
        _require(abs(y_m) <= dep.d_y / 2.0,
                 "y_m=%r is outside [-%r, %r]", y_m, dep.d_y / 2.0, dep.d_y / 2.0)
        return cls(float(x_m), float(y_m))


@dataclass(frozen=True)
class DerivedConstants:
    """
    c_const = eta N P_t / (gamma_thr sigma^2), a_const = eta N P_t / sigma^2.
    """
    c_const: float
    a_const: float
    gamma_thr: float


def derive_constants(dep, gamma_thr):
    """
    derive_constants: Deployment, gamma_thr -> DerivedConstants

    Folds the N-fold array gain into both constants.
    """
    _require(math.isfinite(gamma_thr) and gamma_thr > 0,
             "gamma_thr must be > 0, got %r", gamma_thr)
    a_const = dep.gain
    return DerivedConstants(c_const=a_const / gamma_thr, a_const=a_const,
                            gamma_thr=float(gamma_thr))


def snr_field(dep, x_p, x_m, y_m):
    """
    snr_field: Deployment, x_p, x_m, y_m (floats or arrays) -> SNR

    eta N P_t exp(-alpha x_p) / (sigma^2 ((x_m - x_p)^2 + y_m^2 + h^2)),
    broadcast over numpy arrays.
    """
    x_p = np.asarray(x_p, dtype=float)
    x_m = np.asarray(x_m, dtype=float)
    y_m = np.asarray(y_m, dtype=float)
    distance2 = (x_m - x_p) ** 2 + y_m ** 2 + dep.h ** 2
    return dep.gain * np.exp(-dep.alpha * x_p) / distance2


def benchmark_snr_field(dep, x_m, y_m):
    """
    benchmark_snr_field: Deployment, x_m, y_m (floats or arrays) -> SNR

    SNR of N co-located antennas at (0, 0, 0). Distances below the 1 m
    reference distance are clamped to it.
    """
    x_m = np.asarray(x_m, dtype=float)
    y_m = np.asarray(y_m, dtype=float)
    distance2 = np.maximum(x_m ** 2 + y_m ** 2, REFERENCE_DISTANCE ** 2)
    return dep.gain / distance2


def received_snr(dep, x_p, user):
    """
    received_snr: Deployment, x_p in [0, d_x], UserPosition -> SNR

    SNR at the user when the pinching antenna sits at (x_p, 0, h).
    """
    _require(0.0 <= x_p <= dep.d_x, "x_p=%r is outside [0, %r]", x_p, dep.d_x)
    return float(snr_field(dep, x_p, user.x_m, user.y_m))


def benchmark_snr(dep, user):
    return float(benchmark_snr_field(dep, user.x_m, user.y_m))
