"""Closed forms for 3F2(a, a, x; 1+a, 1+a+N; 1) and the identities behind them.

The main evaluator is :func:`theorem_3f2`.  The remaining functions
check the supporting identities (the two 3F2 transformations, Gauss's
sum, the digamma rewriting of Ramanujan's bracket, the corrected gamma
factor) and replay the epsilon -> 0 limit numerically.
"""

from __future__ import annotations

import math
import statistics
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .hyper_series import (
    ConvergenceViolation,
    InvalidSpec,
    Termination,
    Verdict,
    classify,
    evaluate,
    hyp,
    sum_from,
)
from .limits import DEFAULT_STEPS, ExtrapolationUnstable, symmetric_limit
from .special_core import (
    POLE_TOL,
    SQRT_PI,
    PoleError,
    digamma,
    gamma,
    gamma_ratio,
    harmonic_like_sum,
    nearest_nonpositive_integer,
    pochhammer,
    rgamma,
    tan_pi,
)

__all__ = [
    "ChainCheck",
    "DegenerateParameters",
    "ExtrapolationUnstable",
    "FactorCheck",
    "InvalidInput",
    "NegativeIntegerValue",
    "NotASingularity",
    "ProofReplayTrace",
    "TheoremInput",
    "TheoremValue",
    "TransformParams",
    "TransformResult",
    "UnstableCancellation",
    "digamma_chain_check",
    "entry_factor_check",
    "negative_integer_20",
    "proof_replay",
    "ramanujan_entry_16",
    "theorem_3f2",
    "theorem_3f2_limit",
    "theorem_3f2_report",
    "transform_one_term",
    "transform_two_term",
]

# |x - removable point| below LIMIT_BAND goes through the limit path;
# below WARN_BAND the closed form is flagged for cancellation.
LIMIT_BAND = 1e-4
WARN_BAND = 1e-2
DEGENERACY_TOL = 1e-8
HALF_POLE_BAND = 1e-2


class InvalidInput(ValueError):
    pass


class NotASingularity(ValueError):
    pass


class DegenerateParameters(ValueError):
    pass


class UnstableCancellation(RuntimeWarning):
    pass


@dataclass(frozen=True)
class TheoremInput:
    """Parameters of 3F2(a, a, x; 1+a, 1+a+N; 1)."""

    a: complex
    x: complex
    N: int

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 0:
            raise InvalidInput(f"N must be a nonnegative integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "x", complex(self.x))
        n, dist = nearest_nonpositive_integer(self.a)
        if n < 0 and dist < POLE_TOL:
            raise InvalidInput(f"a = {self.a!r} is a negative integer")
        if not self.x.real < self.N + 2:
            raise InvalidInput(f"Re x = {self.x.real!r} must be below N + 2 = {self.N + 2}")

    @property
    def continuation_band(self) -> bool:
        """True when N+1 <= Re x < N+2."""
        return self.x.real >= self.N + 1

    def removable_points(self) -> list[complex]:
        """Values of x in the convergence region where the closed form is 0*inf."""
        bound = self.N + 2
        pts = [complex(m) for m in range(1, bound)]
        j = 0
        while (self.a + 1 + j).real < bound:
            pts.append(self.a + 1 + j)
            j += 1
        return pts

    def nearest_removable(self) -> tuple[complex | None, float]:
        best, dist = None, math.inf
        for p in self.removable_points():
            d = abs(self.x - p)
            if d < dist:
                best, dist = p, d
        return best, dist

    def series(self):
        a, x, N = self.a, self.x, self.N
        return hyp([a, a, x], [1 + a, 1 + a + N])


@dataclass(frozen=True)
class TheoremValue:
    value: complex
    route: str
    warnings: tuple = ()


def _closed_form(a: complex, x: complex, N: int) -> complex:
    prefactor = a * gamma_ratio([a + N + 1, 1 - x], [a - x + 1]) / math.factorial(N)
    bracket = digamma(a - x + 1) - digamma(a) - harmonic_like_sum(N)
    c = 1 + 0j
    correction = 0j
    for k in range(1, N + 1):
        c *= (a + k - 1) * (k - 1 - N) / (k * (a - x + k))
        correction += c / k
    return prefactor * (bracket - correction)


def theorem_3f2_report(inp: TheoremInput) -> TheoremValue:
    """Closed form with routing and cancellation flags."""
    if inp.a == 0:
        return TheoremValue(1 + 0j, "special")
    flags = []
    if inp.continuation_band:
        flags.append("continuation-band")
    point, dist = inp.nearest_removable()
    if dist < LIMIT_BAND:
        return TheoremValue(theorem_3f2_limit(inp), "limit", tuple(flags))
    if dist < WARN_BAND:
        flags.append(f"cancellation: {dist:.2g} from removable point x = {point}")
    return TheoremValue(_closed_form(inp.a, inp.x, inp.N), "closed", tuple(flags))


def theorem_3f2(inp: TheoremInput) -> complex:
    """Closed-form value of 3F2(a, a, x; 1+a, 1+a+N; 1).

    prefactor * (psi(a-x+1) - psi(a) - psi(N+1) - gamma - S) with
    prefactor = a G(a+N+1) G(1-x) / (N! G(a-x+1)) and
    S = sum_{k=1..N} (a)_k (-N)_k / (k k! (a-x+1)_k).

    a = 0 gives 1.  Points within 1e-4 of a removable singularity are
    evaluated by :func:`theorem_3f2_limit`.
    """
    return theorem_3f2_report(inp).value


def theorem_3f2_limit(inp: TheoremInput, steps=DEFAULT_STEPS) -> complex:
    """Closed form at a removable singularity, by symmetric Richardson
    extrapolation in x.

    Raises ``NotASingularity`` unless x lies within 1e-4 of a positive
    integer or of a + 1 + j (j = 0, 1, ...) inside the convergence region.
    """
    _, dist = inp.nearest_removable()
    if dist >= LIMIT_BAND:
        raise NotASingularity(f"x = {inp.x!r} is not near a removable singularity")
    a, N = inp.a, inp.N
    value, _ = symmetric_limit(lambda t: _closed_form(a, t, N), inp.x, steps)
    return value


def ramanujan_entry_16(x) -> complex:
    """3F2(x, 1/2, 1/2; 3/2, 3/2; 1) as (sqrt(pi)/4) G(1-x)/G(3/2-x) (psi(3/2-x) - psi(1/2)).

    Valid for Re x < 2; x = 1 and x = 3/2 are taken as limits.
    """
    x = complex(x)
    if not x.real < 2:
        raise InvalidInput(f"Re x = {x.real!r} must be below 2")
    if min(abs(x - 1), abs(x - 1.5)) < LIMIT_BAND:
        return theorem_3f2_limit(TheoremInput(0.5, x, 0))
    ratio = gamma_ratio([1 - x], [1.5 - x])
    return 0.25 * SQRT_PI * ratio * (digamma(1.5 - x) - digamma(0.5))


@dataclass(frozen=True)
class NegativeIntegerValue:
    """3F2(1/2, 1/2, -k; 3/2, 3/2; 1) = multiplier * sqrt(pi) G(k+1) / G(k+3/2)."""

    k: int
    multiplier: Fraction
    exact: Fraction
    value: float


def negative_integer_20(k: int) -> NegativeIntegerValue:
    if k < 0 or int(k) != k:
        raise InvalidInput(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    odd_harmonic = sum(Fraction(1, 2 * j - 1) for j in range(1, k + 2))
    multiplier = odd_harmonic / 2
    # sqrt(pi) G(k+1) / G(k+3/2) = k! 2^(k+1) / (2k+1)!!
    double_fact = math.prod(range(1, 2 * k + 2, 2))
    exact = multiplier * Fraction(math.factorial(k) * 2 ** (k + 1), double_fact)
    value = float(multiplier) * SQRT_PI * gamma_ratio([k + 1], [k + 1.5]).real
    return NegativeIntegerValue(k, multiplier, exact, value)


@dataclass(frozen=True)
class TransformParams:
    """Parameters of 3F2(a, b, c; d, e; 1), with convergence verdicts of
    every series the two transformations touch (None if ill-defined)."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    verdicts: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, complex(getattr(self, name)))
        out = {}
        for key, spec in self._series().items():
            try:
                out[key] = classify(spec()).verdict
            except InvalidSpec:
                out[key] = None
        object.__setattr__(self, "verdicts", out)

    @property
    def excess(self) -> complex:
        return self.d + self.e - self.a - self.b - self.c

    def _series(self):
        a, b, c, d, e = self.a, self.b, self.c, self.d, self.e
        return {
            "lhs": lambda: hyp([a, b, c], [d, e]),
            "two_term_1": lambda: hyp([b, d - a, e - a], [1 - a + b, d + e - a - c]),
            "two_term_2": lambda: hyp([a, d - b, e - b], [d + e - b - c, 1 + a - b]),
            "one_term": lambda: hyp([a, d - b, d - c], [d, d + e - b - c]),
        }

    def series(self, key):
        return self._series()[key]()


@dataclass(frozen=True)
class TransformResult:
    lhs: complex
    rhs: complex
    residual: float


_OK = (Verdict.TERMINATING, Verdict.CONVERGENT_AT_UNIT)


def _sum(p: TransformParams, key: str, tol: float) -> complex:
    if p.verdicts.get(key) not in _OK:
        raise ConvergenceViolation(f"series '{key}' does not converge for {p}")
    res = evaluate(p.series(key), tol=tol)
    if res.termination is Termination.DIVERGENCE_DETECTED:
        raise ConvergenceViolation(f"series '{key}' diverged")
    return res.value


def _coefficient(numer, denom) -> complex:
    # a pole in the denominator makes the coefficient vanish
    for v in denom:
        if nearest_nonpositive_integer(v)[1] < POLE_TOL:
            return 0j
    return gamma_ratio(numer, denom)


def _residual(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def transform_two_term(p: TransformParams, tol: float = 1e-14) -> TransformResult:
    """Both sides of the nonterminating two-term 3F2(1) transformation."""
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    delta = a - b
    if abs(delta.imag) < DEGENERACY_TOL and abs(delta.real - round(delta.real)) < DEGENERACY_TOL:
        raise DegenerateParameters(f"a - b = {delta!r} is (nearly) an integer")
    s = p.excess
    lhs = _sum(p, "lhs", tol)
    rhs = 0j
    coef1 = _coefficient([a - b, d, e, s], [a, d - b, e - b, d + e - a - c])
    if coef1 != 0:
        rhs += coef1 * _sum(p, "two_term_1", tol)
    coef2 = _coefficient([b - a, d, e, s], [b, d - a, e - a, d + e - b - c])
    if coef2 != 0:
        rhs += coef2 * _sum(p, "two_term_2", tol)
    return TransformResult(lhs, rhs, _residual(lhs, rhs))


def transform_one_term(p: TransformParams, tol: float = 1e-14) -> TransformResult:
    """Both sides of the one-term 3F2(1) transformation."""
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    s = p.excess
    lhs = _sum(p, "lhs", tol)
    coef = _coefficient([e, s], [e - a, d + e - b - c])
    rhs = coef * _sum(p, "one_term", tol) if coef != 0 else 0j
    return TransformResult(lhs, rhs, _residual(lhs, rhs))


@dataclass
class ProofReplayTrace:
    epsilon_values: list
    residuals: list
    fitted_order: float
    target: complex = 0j
    values: list = field(default_factory=list)
    tail_magnitudes: list = field(default_factory=list)
    cancellation_digits: list = field(default_factory=list)
    extended_precision: list = field(default_factory=list)


def _bracket_terms(a, x, N, eps):
    numer_common = [1 + a - eps, 1 + a - eps + N, 1 - x]
    r = gamma_ratio(numer_common, [a - eps, 1 - eps + N, 1 + a - x])
    t1 = gamma_ratio(numer_common + [1 + eps], [a, 1 + N, 1 + a - eps - x])
    return t1, r


def _bracket_extended(a, x, N, eps, dps=40):
    import mpmath

    with mpmath.workdps(dps):
        a, x, e = mpmath.mpmathify(a), mpmath.mpmathify(x), mpmath.mpf(eps)
        g = mpmath.gamma
        common = g(1 + a - e) * g(1 + a - e + N) * g(1 - x)
        t1 = common * g(1 + e) / (g(a) * g(1 + N) * g(1 + a - e - x))
        r = common / (g(a - e) * g(1 - e + N) * g(1 + a - x))
        return complex((t1 - r) / e)


def _replay_point(inp: TheoremInput, eps: float):
    a, x, N = inp.a, inp.x, inp.N
    t1, r = _bracket_terms(a, x, N, eps)
    diff = t1 - r
    scale = max(abs(t1), abs(r))
    lost = math.log10(scale / abs(diff)) if diff != 0 else math.inf
    extended = lost > 8
    if extended:
        warnings.warn(
            f"1/eps bracket loses {lost:.1f} digits at eps = {eps:g}; using extended precision",
            UnstableCancellation,
            stacklevel=3,
        )
        bracket = _bracket_extended(a, x, N, eps)
    else:
        bracket = diff / eps
    finite = 0j
    c = 1 + 0j
    for k in range(1, N + 1):
        c *= (a + k - 1) * (eps - N + k - 1) / (k * (a - x + k))
        finite += c / (k + eps)
    k0 = N + 1
    start = pochhammer(a, k0) * pochhammer(eps - N, k0) / (
        math.factorial(k0) * (k0 + eps) * pochhammer(1 + a - x, k0)
    )
    tail = sum_from(
        (a, eps - N, eps), (1 + eps, 1 + a - x), 1 + 0j, k0, start,
        1e-15, 10**6, True, 2 + N - x - eps,
    ).value
    value = bracket - r * finite - r * tail
    return value, abs(tail), lost, extended


def proof_replay(inp: TheoremInput, eps_list) -> ProofReplayTrace:
    """Evaluate the epsilon-deformed expression that the closed form is the
    limit of, and record its distance to :func:`theorem_3f2`.

    Each value equals 3F2(a, a-eps, x; 1+a-eps, 1+a-eps+N; 1), so the
    residual should shrink linearly in eps; ``fitted_order`` is the
    least-squares slope of log residual against log eps.
    """
    if not inp.x.real < 1:
        raise InvalidInput("the replay requires Re x < 1")
    eps_values = sorted({float(e) for e in eps_list}, reverse=True)
    if not eps_values or eps_values[-1] <= 0:
        raise InvalidInput("epsilon values must be positive")
    target = theorem_3f2(inp)
    trace = ProofReplayTrace(eps_values, [], math.nan, target)
    for eps in eps_values:
        value, tail, lost, extended = _replay_point(inp, eps)
        trace.values.append(value)
        trace.residuals.append(abs(value - target))
        trace.tail_magnitudes.append(tail)
        trace.cancellation_digits.append(lost)
        trace.extended_precision.append(extended)
    pts = [(math.log(e), math.log(r)) for e, r in zip(eps_values, trace.residuals) if r > 0]
    if len(pts) >= 2:
        xs, ys = zip(*pts)
        trace.fitted_order = statistics.linear_regression(xs, ys).slope
    return trace


@dataclass(frozen=True)
class FactorCheck:
    factor2: complex
    faktor: complex
    corrected: complex
    ratio: complex
    faktor_residual: float
    route: str = "direct"


def _factor2(x: complex) -> complex:
    lead = math.pi / tan_pi(x)
    return lead * gamma(2 * x + 1) / ((2**x * gamma(x + 1)) ** 2 * (1 - 2 * x))


def _factor2_removable(x: complex) -> complex | None:
    """Nearest removable point of the displayed factor, if within LIMIT_BAND."""
    if abs(x.imag) >= LIMIT_BAND:
        return None
    # negative integers and half-integers, and x = 1/2
    twice = round(2 * x.real)
    if abs(2 * x.real - twice) >= 2 * LIMIT_BAND:
        return None
    if twice < 0 or twice == 1:
        return complex(twice / 2)
    return None


def entry_factor_check(x) -> FactorCheck:
    """Compare Ramanujan's gamma factor with the value Gauss's sum requires.

    factor2 = (pi / tan(pi x)) G(2x+1) / ((2^x G(x+1))^2 (1 - 2x)) equals
    sqrt(pi) G(1-x) / (2 x G(3/2-x)), so corrected / factor2 = x.
    """
    x = complex(x)
    if abs(x) < POLE_TOL:
        raise PoleError("factor has a pole at x = 0")
    m = round(x.real)
    if m >= 1 and abs(x - m) < POLE_TOL:
        raise PoleError(f"G(1-x) has a pole at x = {m}")
    faktor = SQRT_PI * gamma(1 - x) * rgamma(1.5 - x) / (2 * x)
    corrected = SQRT_PI * gamma(1 - x) * rgamma(1.5 - x) / 2
    route = "direct"
    if _factor2_removable(x) is not None:
        factor2, _ = symmetric_limit(_factor2, x)
        route = "limit"
    else:
        try:
            factor2 = _factor2(x)
        except PoleError:
            factor2, _ = symmetric_limit(_factor2, x)
            route = "limit"
    if factor2 == 0:
        raise PoleError(f"factor vanishes at x = {x!r}; ratio undefined")
    scale = abs(faktor) if faktor != 0 else 1.0
    return FactorCheck(factor2, faktor, corrected, corrected / factor2, abs(factor2 - faktor) / scale, route)


@dataclass(frozen=True)
class ChainCheck:
    expr6: complex
    expr15: complex
    residual: float
    route: str = "direct"


def _tan_pair_near_half(t: complex) -> complex:
    # 1/(1-2x) - (pi/2) tan(pi x) at x = 1/2 + t, both O(1/t); odd series in u = pi t
    u = math.pi * t
    u2 = u * u
    series = u * (1 / 3 + u2 * (1 / 45 + u2 * (2 / 945 + u2 * (1 / 4725 + u2 * (2 / 93555)))))
    return -0.5 * math.pi * series


def _expr6(x: complex) -> complex:
    t = x - 0.5
    if abs(t) < HALF_POLE_BAND:
        pair = _tan_pair_near_half(t)
    else:
        pair = 1 / (1 - 2 * x) - 0.5 * math.pi * tan_pi(x)
    return harmonic_like_sum(2 * x) - 0.5 * harmonic_like_sum(x) + pair


def _chain_removable(x: complex) -> bool:
    if abs(x.imag) >= LIMIT_BAND:
        return False
    twice = round(2 * x.real)
    return twice < 0 and abs(2 * x.real - twice) < 2 * LIMIT_BAND


def digamma_chain_check(x) -> ChainCheck:
    """Ramanujan's bracket, via psi, against (psi(3/2 - x) - psi(1/2)) / 2."""
    x = complex(x)
    expr15 = 0.5 * (digamma(1.5 - x) - digamma(0.5))
    route = "direct"
    if abs(x - 0.5) < HALF_POLE_BAND:
        route = "series"
    if _chain_removable(x):
        expr6, _ = symmetric_limit(_expr6, x)
        route = "limit"
    else:
        expr6 = _expr6(x)
    return ChainCheck(expr6, expr15, abs(expr6 - expr15), route)
