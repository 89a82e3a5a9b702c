"""
specfun.py

Special functions needed by the average-rate closed form: the real
dilogarithm, the imaginary part of the complex dilogarithm and the
z(x, y) kernel built from them.

All functions are pure; nothing is cached between calls.
"""
import cmath
import math
from dataclasses import dataclass

from scipy.special import bernoulli, factorial

from pinchperf.errors import DomainError

PI2_6 = math.pi ** 2 / 6.0

# Power series sum_k x^k / k^2 is only used for |x| <= SERIES_RADIUS
SERIES_RADIUS = 0.5
SERIES_MAX_TERMS = 200

# Li2(z) = sum_n B_n u^(n+1) / (n+1)!  with u = -ln(1-z); converges for |u| < 2*pi
_BERNOULLI_TERMS = 40
_BERNOULLI_COEFFS = tuple(
    float(b) / float(f) for b, f in zip(
        bernoulli(_BERNOULLI_TERMS),
        factorial(list(range(1, _BERNOULLI_TERMS + 2)), exact=False)))


@dataclass(frozen=True)
class ComplexValue:
    """
    A complex number as a (re, im) pair. Both parts must be finite.
    """
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(
                "ComplexValue parts must be finite, got (%r, %r)"
                % (self.re, self.im))

    def __complex__(self):
        return complex(self.re, self.im)

    def conjugate(self):
        return ComplexValue(self.re, -self.im)

    @classmethod
    def from_complex(cls, value):
        value = complex(value)
        return cls(value.real, value.imag)


def _power_series(x):
    """
    _power_series: real or complex with |x| <= 0.5 -> same type

    Sums x^k / k^2 until the terms stop changing the result.
    """
    total = 0.0 * x
    power = x
    for k in range(1, SERIES_MAX_TERMS + 1):
        term = power / (k * k)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        power *= x
    return total


def dilog(x):
    """
    dilog: real x <= 1 -> real

    Real dilogarithm Li2(x) = -integral_0^x ln(1-u)/u du.

    Arguments below -1 are inverted into (-1, 0), arguments in [-1, -0.5)
    are moved into (1/3, 0.5] by the Landen identity and arguments in
    (0.5, 1) are reflected into (0, 0.5) before the power series is summed.
    """
    x = float(x)
    if math.isnan(x) or x > 1.0:
        raise DomainError("dilog is only defined here for x <= 1, got %r" % x)

    if x == 1.0:
        return PI2_6
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        raise DomainError("dilog argument must be finite")

    if x < -1.0:
        # Inversion: Li2(x) + Li2(1/x) = -pi^2/6 - ln(-x)^2 / 2
        return -PI2_6 - 0.5 * math.log(-x) ** 2 - dilog(1.0 / x)
    if x < -SERIES_RADIUS:
        # Landen: Li2(x) = -Li2(x/(x-1)) - ln(1-x)^2 / 2
        return -_power_series(x / (x - 1.0)) - 0.5 * math.log1p(-x) ** 2
    if x <= SERIES_RADIUS:
        return _power_series(x)

    # Reflection: Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x)
    return PI2_6 - math.log(x) * math.log1p(-x) - _power_series(1.0 - x)


def _bernoulli_series(z):
    u = -cmath.log(1.0 - z)
    total = 0j
    power = u
    for coeff in _BERNOULLI_COEFFS:
        total += coeff * power
        power *= u
    return total


def _complex_dilog(z):
    """
    _complex_dilog: complex z not on [1, inf) -> complex

    Principal branch of Li2 on the cut plane.
    """
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6, 0.0)

    if abs(z) > 1.0:
        return -PI2_6 - 0.5 * cmath.log(-z) ** 2 - _complex_dilog(1.0 / z)
    if abs(z) <= SERIES_RADIUS:
        return _power_series(z)
    if z.real > 0.5:
        return PI2_6 - cmath.log(z) * cmath.log(1.0 - z) - _complex_dilog(1.0 - z)

    return _bernoulli_series(z)


def im_dilog(z):
    """
    im_dilog: ComplexValue -> real

    Imaginary part of the principal complex dilogarithm. Real arguments
    below 1 give exactly 0; arguments on the branch cut [1, inf) raise
    DomainError.
    """
    if not isinstance(z, ComplexValue):
        z = ComplexValue.from_complex(z)

    if z.im == 0.0:
        if z.re >= 1.0:
            raise DomainError(
                "im_dilog argument %r lies on the branch cut [1, inf)" % (z.re,))
        return 0.0

    return _complex_dilog(complex(z)).imag


def z_kernel(x, y, d_y):
    """
    z_kernel: real x, real y, real d_y > 0 -> real

    z(x, y) = 2 ln(x-y) (atan(2x/d_y) - atan(2y/d_y))
              + 2 Im Li2((y-x) / (y - j d_y/2))

    x must not be smaller than y; at x == y the kernel is 0 (its limit).
    """
    x = float(x)
    y = float(y)
    d_y = float(d_y)

    if not d_y > 0.0:
        raise DomainError("z_kernel requires d_y > 0, got %r" % d_y)
    if not x >= y:
        raise DomainError("z_kernel requires x >= y, got x=%r y=%r" % (x, y))
    if x == y:
        return 0.0

    arctan_term = math.atan(2.0 * x / d_y) - math.atan(2.0 * y / d_y)
    argument = complex(y - x, 0.0) / complex(y, -d_y / 2.0)

    return (2.0 * math.log(x - y) * arctan_term
            + 2.0 * im_dilog(ComplexValue.from_complex(argument)))
