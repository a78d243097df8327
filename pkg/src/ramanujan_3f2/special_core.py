"""Complex gamma, log-gamma, digamma and Pochhammer symbols.

All routines accept Python numbers (int, float, complex) and return
``complex``.  ``pochhammer`` additionally works in exact rational
arithmetic when handed ``int`` or ``fractions.Fraction`` arguments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "CONSTANTS",
    "EULER_GAMMA",
    "POLE_TOL",
    "Constants",
    "PoleError",
    "cot_pi",
    "digamma",
    "gamma",
    "gamma_ratio",
    "harmonic_like_sum",
    "is_rational",
    "log_gamma",
    "nearest_nonpositive_integer",
    "pochhammer",
    "rgamma",
    "sin_pi",
    "tan_pi",
]

EULER_GAMMA = 0.57721566490153286060651209008240243
POLE_TOL = 1e-10

LOG_SQRT_2PI = 0.91893853320467274178032973640561764
SQRT_PI = 1.77245385090551602729816748334114518


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = EULER_GAMMA
    pi: float = math.pi
    ln2: float = math.log(2.0)


CONSTANTS = Constants()


class PoleError(ArithmeticError):
    """Argument lies within ``POLE_TOL`` of a pole."""


# Lanczos approximation, g = 607/128, 15 terms (Godfrey).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

# B_{2k} / (2k (2k-1)) for the Stirling series of log Gamma.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

# B_{2k} / (2k) for the digamma asymptotic series, through 1/z^14.
_DIGAMMA_ASYMP = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def nearest_nonpositive_integer(z: complex) -> tuple[int, float]:
    """Return ``(n, |z - n|)`` for the nonpositive integer ``n`` closest to z."""
    z = complex(z)
    n = min(0, round(z.real))
    return n, abs(z - n)


def _check_pole(z: complex) -> None:
    n, dist = nearest_nonpositive_integer(z)
    if dist < POLE_TOL:
        raise PoleError(f"argument {z!r} is within {POLE_TOL:g} of the pole at {n}")


def _reduce_unit(z: complex) -> tuple[complex, int]:
    # z - n is exact in binary floating point, so the reduction loses nothing
    n = round(z.real)
    return complex(z.real - n, z.imag), n


def sin_pi(z: complex) -> complex:
    """sin(pi z) with exact argument reduction."""
    w, n = _reduce_unit(complex(z))
    s = cmath.sin(math.pi * w)
    return -s if n % 2 else s


def tan_pi(z: complex) -> complex:
    """tan(pi z); raises ``PoleError`` at half-odd integers."""
    w, _ = _reduce_unit(complex(z))
    if abs(abs(w) - 0.5) < POLE_TOL and abs(w.imag) < POLE_TOL:
        raise PoleError(f"tan(pi z) has a pole at z = {z!r}")
    if abs(w.real) > 0.25:
        # near the pole use -cot of the (exact) offset from +-1/2
        t = complex(w.real - math.copysign(0.5, w.real), w.imag)
        return -1.0 / cmath.tan(math.pi * t)
    return cmath.tan(math.pi * w)


def cot_pi(z: complex) -> complex:
    """cot(pi z); raises ``PoleError`` at integers."""
    w, _ = _reduce_unit(complex(z))
    if abs(w) < POLE_TOL:
        raise PoleError(f"cot(pi z) has a pole at z = {z!r}")
    return 1.0 / cmath.tan(math.pi * w)


def gamma(z) -> complex:
    """Gamma function of a complex argument.

    Lanczos approximation for Re z >= 1/2, reflection below.  Raises
    ``PoleError`` near nonpositive integers and ``OverflowError`` when the
    result is not representable.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        s = sin_pi(z)
        try:
            g = gamma(1.0 - z)
        except OverflowError:
            # 1/Gamma(1-z) underflows; the product is negligible
            return 0j
        return math.pi / (s * g)
    if z.imag == 0.0:
        x = z.real
        if x == math.floor(x) and x <= 30.0:
            return complex(math.factorial(int(x) - 1))
        return complex(_real_gamma(x))
    zm = z - 1.0
    series = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        series += _LANCZOS[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    half = 0.5 * (zm + 0.5)
    try:
        p = t**half
        value = (p * cmath.exp(-t)) * p * series
    except OverflowError:
        raise OverflowError(f"|Gamma({z!r})| exceeds the floating range; use log_gamma") from None
    value *= math.sqrt(2.0 * math.pi)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError(f"|Gamma({z!r})| exceeds the floating range; use log_gamma")
    return value


def _real_gamma(x: float) -> float:
    # x >= 1/2; real pow keeps full precision in the large power
    xm = x - 1.0
    series = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        series += _LANCZOS[i] / (xm + i)
    t = xm + _LANCZOS_G + 0.5
    p = math.pow(t, 0.5 * (xm + 0.5))
    try:
        value = (p * math.exp(-t)) * p * series * math.sqrt(2.0 * math.pi)
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise OverflowError(f"Gamma({x!r}) exceeds the floating range; use log_gamma")
    return value


def rgamma(z) -> complex:
    """Reciprocal gamma, entire: returns 0 at the poles of Gamma."""
    z = complex(z)
    _, dist = nearest_nonpositive_integer(z)
    if dist < POLE_TOL:
        return 0j
    if z.real < 0.5:
        return sin_pi(z) * gamma(1.0 - z) / math.pi
    return cmath.exp(-log_gamma(z))


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z).

    Analytic on the plane cut along the negative real axis; the imaginary
    part is the accumulated argument, not reduced modulo 2 pi.  Uses the
    Stirling series after an upward shift to |z| >= 15.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.0 and z.imag == 0.0:
        # on the cut: log|Gamma| plus i*pi*(number of negative factors)
        x = z.real
        mag = math.lgamma(x)
        k = math.floor(-x) + 1
        return complex(mag, -math.pi * k)
    if z.real < 0.0:
        # reflection, with branches matched to the sum-of-logs continuation
        n = math.ceil(-z.real) + 1
        shifted = log_gamma(z + n)
        acc = 0j
        for j in range(n):
            acc += cmath.log(z + j)
        return shifted - acc
    shift = 0j
    while abs(z) < 15.0:
        shift += cmath.log(z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    acc = 0j
    for c in reversed(_STIRLING):
        acc = acc * inv2 + c
    acc *= inv
    return (z - 0.5) * cmath.log(z) - z + LOG_SQRT_2PI + acc - shift


def digamma(z) -> complex:
    """Digamma function psi(z) = Gamma'(z)/Gamma(z).

    Reflection for Re z < 0, upward recurrence to Re z >= 12, then the
    asymptotic expansion through 1/z^14.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.0:
        return digamma(1.0 - z) - math.pi * cot_pi(z)
    acc = 0j
    while z.real < 12.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0j
    for c in reversed(_DIGAMMA_ASYMP):
        series = series * inv2 + c
    return acc + cmath.log(z) - 0.5 / z - series * inv2


def harmonic_like_sum(x) -> complex:
    """psi(x + 1) + Euler's gamma; the harmonic number H_n at integer n >= 0."""
    if isinstance(x, int) or (isinstance(x, float) and x.is_integer()):
        n = int(x)
        if 0 <= n <= 100_000:
            return complex(math.fsum(1.0 / k for k in range(1, n + 1)))
    z = complex(x)
    if z.imag == 0.0 and z.real.is_integer() and 0 <= z.real <= 100_000:
        return harmonic_like_sum(int(z.real))
    return digamma(z + 1.0) + EULER_GAMMA


def is_rational(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def pochhammer(alpha, k: int):
    """Rising factorial (alpha)_k = alpha (alpha+1) ... (alpha+k-1).

    Exact (``int`` or ``Fraction``) when alpha is rational, ``complex``
    otherwise.
    """
    if k < 0 or int(k) != k:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    if is_rational(alpha):
        alpha = Fraction(alpha)
        out = Fraction(1)
        for j in range(k):
            out *= alpha + j
        return out.numerator if out.denominator == 1 else out
    alpha = complex(alpha)
    out = 1 + 0j
    for j in range(k):
        out *= alpha + j
    return out


def gamma_ratio(numer, denom) -> complex:
    """Product of Gamma(numer[i]) over product of Gamma(denom[j]).

    Accumulated as a sum of log-gamma values so that intermediate factors
    may overflow; exp() absorbs any 2 pi i winding of the principal logs.
    With all-real arguments the result is real, its sign tracked exactly.
    Any argument at a pole raises PoleError, denominator ones included.
    """
    args = [complex(v) for v in numer] + [complex(v) for v in denom]
    n_num = len(numer)
    if all(v.imag == 0.0 for v in args):
        log_mag = 0.0
        negative = False
        for i, v in enumerate(args):
            lg = log_gamma(v.real).real
            log_mag += lg if i < n_num else -lg
            if v.real < 0.0 and (math.floor(-v.real) + 1) % 2:
                negative = not negative
        mag = math.exp(log_mag)
        return complex(-mag if negative else mag, 0.0)
    acc = 0j
    for i, v in enumerate(args):
        acc += log_gamma(v) if i < n_num else -log_gamma(v)
    return cmath.exp(acc)
