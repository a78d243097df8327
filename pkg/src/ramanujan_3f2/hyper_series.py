"""Direct summation of generalized hypergeometric series.

This is the brute-force oracle: every closed form in the package is
checked against :func:`evaluate`.  Terms are generated by the term-ratio
recurrence and accumulated in increasing ``k`` with Kahan compensation.
For a convergent ``r = s + 1`` series at unit argument, whose terms decay
only like ``k**(-1 - excess)``, the partial sums at ``n = 32, 64, 128, ...``
are additionally passed through a Richardson table that removes the
``n**-(excess + q)`` tail components one at a time.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from . import kernel
from .special_core import POLE_TOL, PoleError, gamma_ratio, nearest_nonpositive_integer

__all__ = [
    "ConvergenceClass",
    "ConvergenceViolation",
    "EvalResult",
    "InvalidSpec",
    "NotRational",
    "NotTerminating",
    "SeriesSpec",
    "Termination",
    "Verdict",
    "classify",
    "evaluate",
    "evaluate_exact",
    "gauss_2f1_unit",
    "hyp",
]

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 10**6

FIRST_CHECKPOINT = 32
MAX_RICHARDSON_LEVELS = 8
# below this the Richardson differences are rounding noise
EXTRAPOLATION_FLOOR = 4e-14


class InvalidSpec(ValueError):
    pass


class ConvergenceViolation(ArithmeticError):
    pass


class NotTerminating(ValueError):
    pass


class NotRational(ValueError):
    pass


def _as_number(v):
    if isinstance(v, (Rational, float, complex)) and not isinstance(v, bool):
        return v
    raise InvalidSpec(f"not a number: {v!r}")


def _nonpositive_int(v) -> int | None:
    """Return n >= 0 if ``v == -n`` exactly, else None."""
    c = complex(v)
    if c.imag != 0.0 or c.real > 0.0 or not c.real.is_integer():
        return None
    if isinstance(v, Rational) and Fraction(v).denominator != 1:
        return None
    return int(-c.real)


@dataclass(frozen=True)
class SeriesSpec:
    """pFq parameters and argument.

    Parameters may be ``int``, ``Fraction``, ``float`` or ``complex``;
    rational parameters enable :func:`evaluate_exact`.
    """

    numerator_params: tuple = ()
    denominator_params: tuple = ()
    argument: object = 1

    def __post_init__(self):
        num = tuple(_as_number(v) for v in self.numerator_params)
        den = tuple(_as_number(v) for v in self.denominator_params)
        object.__setattr__(self, "numerator_params", num)
        object.__setattr__(self, "denominator_params", den)
        object.__setattr__(self, "argument", _as_number(self.argument))
        stop = self.terminates_at
        for b in den:
            n, dist = nearest_nonpositive_integer(b)
            if dist >= POLE_TOL:
                continue
            m = -n
            if stop is None or stop > m:
                raise InvalidSpec(
                    f"denominator parameter {b!r} reaches a zero before the series terminates"
                )

    @property
    def terminates_at(self) -> int | None:
        """k such that the series is a polynomial of degree k, else None."""
        ks = [n for n in map(_nonpositive_int, self.numerator_params) if n is not None]
        return min(ks) if ks else None

    @property
    def r(self) -> int:
        return len(self.numerator_params)

    @property
    def s(self) -> int:
        return len(self.denominator_params)


def hyp(num, den, z=1) -> SeriesSpec:
    return SeriesSpec(tuple(num), tuple(den), z)


class Verdict(enum.Enum):
    TERMINATING = "Terminating"
    CONVERGENT_AT_UNIT = "ConvergentAtUnit"
    DIVERGENT_AT_UNIT = "DivergentAtUnit"
    NOT_UNIT_ARGUMENT = "NotUnitArgument"


@dataclass(frozen=True)
class ConvergenceClass:
    parameter_excess: complex
    verdict: Verdict
    terminates_at: int | None = None

    def __str__(self):
        if self.verdict is Verdict.TERMINATING:
            return f"Terminating({self.terminates_at})"
        return self.verdict.value


def classify(spec: SeriesSpec) -> ConvergenceClass:
    """Convergence verdict from the parameter excess (sum of b minus sum of a)."""
    excess = sum(complex(b) for b in spec.denominator_params) - sum(
        complex(a) for a in spec.numerator_params
    )
    stop = spec.terminates_at
    if stop is not None:
        return ConvergenceClass(excess, Verdict.TERMINATING, stop)
    if complex(spec.argument) != 1:
        return ConvergenceClass(excess, Verdict.NOT_UNIT_ARGUMENT)
    if spec.r < spec.s + 1 or (spec.r == spec.s + 1 and excess.real > 0.0):
        return ConvergenceClass(excess, Verdict.CONVERGENT_AT_UNIT)
    return ConvergenceClass(excess, Verdict.DIVERGENT_AT_UNIT)


def _converges(spec: SeriesSpec, cls: ConvergenceClass) -> bool:
    if cls.verdict in (Verdict.TERMINATING, Verdict.CONVERGENT_AT_UNIT):
        return True
    if cls.verdict is Verdict.DIVERGENT_AT_UNIT:
        return False
    z = complex(spec.argument)
    if spec.r <= spec.s or z == 0:
        return True
    return spec.r == spec.s + 1 and abs(z) < 1.0


class Termination(enum.Enum):
    TERMINATED_EXACTLY = "TerminatedExactly"
    TOLERANCE_REACHED = "ToleranceReached"
    EXTRAPOLATED = "Extrapolated"
    MAX_TERMS_REACHED = "MaxTermsReached"
    DIVERGENCE_DETECTED = "DivergenceDetected"


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_error_estimate: float
    terms_used: int
    termination: Termination
    terminated_at: int | None = None
    backend: str = field(default=kernel.BACKEND, compare=False)

    @property
    def reason(self) -> str:
        if self.termination is Termination.TERMINATED_EXACTLY:
            return f"TerminatedExactly({self.terminated_at})"
        return self.termination.value

    @property
    def trusted(self) -> bool:
        return self.termination is not Termination.DIVERGENCE_DETECTED


def _tail_bound(next_term: complex, ratio: float, k: int, excess_re: float) -> float:
    t = abs(next_term)
    if t == 0.0:
        return 0.0
    if ratio < 0.9:
        return t * ratio / (1.0 - ratio)
    if excess_re > 0.0:
        return t * k / excess_re
    return math.inf


class _Richardson:
    """Eliminates n**-(p0 + q), q = 0, 1, ..., from partial sums at n, 2n, 4n, ..."""

    def __init__(self, p0: complex, levels: int = MAX_RICHARDSON_LEVELS):
        self.factors = [2.0 ** (p0 + q) for q in range(levels)]
        self.rows: list[list[complex]] = []
        self.diagonal: list[complex] = []

    def push(self, partial_sum: complex) -> complex:
        row = [partial_sum]
        if self.rows:
            prev = self.rows[-1]
            for q, f in enumerate(self.factors):
                if q >= len(prev):
                    break
                row.append((f * row[q] - prev[q]) / (f - 1.0))
        self.rows.append(row)
        self.diagonal.append(row[-1])
        return row[-1]


def evaluate(
    spec: SeriesSpec,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    accelerate: bool = True,
) -> EvalResult:
    """Sum the series term by term.

    Stops when the series terminates, when ``|term| <= tol * |sum|`` for three
    consecutive terms, or at ``max_terms``.  Convergent r = s+1 series at
    z = 1 have power-law tails that the small-term test misjudges; for
    those the stop comes instead when the Richardson-extrapolated sum
    settles to ``max(tol, 4e-14)``.  Divergent specs are not summed; they come back with
    ``Termination.DIVERGENCE_DETECTED`` and a NaN value.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    cls = classify(spec)
    if not _converges(spec, cls):
        return EvalResult(complex(math.nan, math.nan), math.inf, 0, Termination.DIVERGENCE_DETECTED)
    num = tuple(complex(a) for a in spec.numerator_params)
    den = tuple(complex(b) for b in spec.denominator_params)
    z = complex(spec.argument)
    return sum_from(num, den, z, 0, 1 + 0j, tol, max_terms, accelerate and _power_law(spec, cls), cls.parameter_excess)


def _power_law(spec: SeriesSpec, cls: ConvergenceClass) -> bool:
    return cls.verdict is Verdict.CONVERGENT_AT_UNIT and spec.r == spec.s + 1


def sum_from(num, den, z, k0, t0, tol, max_terms, accelerate, excess) -> EvalResult:
    """Sum ``t0 + t1 + ...`` where ``t_{k+1}/t_k = z prod(num + k) / ((k + 1) prod(den + k))``.

    ``k0`` is the index of ``t0``.  Shared by :func:`evaluate` and by callers
    that need the tail of a series from some index on.
    """
    state = (k0, complex(t0), 0j, 0j, 0, 0.0)
    if t0 == 0:
        return EvalResult(0j, 0.0, 0, Termination.TERMINATED_EXACTLY, k0)
    advance = kernel.advance
    excess = complex(excess)
    rich = _Richardson(excess) if accelerate else None
    floor = max(tol, EXTRAPOLATION_FLOOR)
    done = 0
    checkpoint = FIRST_CHECKPOINT
    last_diff = math.inf
    while done < max_terms:
        stop = min(checkpoint, max_terms) if rich is not None else max_terms
        # power-law tails outlive the small-term test; let the table decide
        state, status, added = advance(num, den, z, state, 0.0 if rich is not None else tol, stop - done)
        done += added
        k, t, s, _, _, ratio = state
        if status == kernel.TERMINATED:
            return EvalResult(s, 0.0, done, Termination.TERMINATED_EXACTLY, k - k0)
        if status == kernel.TOLERANCE:
            return EvalResult(s, _tail_bound(t, ratio, k, excess.real), done, Termination.TOLERANCE_REACHED)
        if rich is not None and done == checkpoint:
            est = rich.push(s)
            if len(rich.diagonal) >= 3:
                diff = abs(est - rich.diagonal[-2])
                scale = max(abs(est), 1e-300)
                if diff <= floor * scale:
                    return EvalResult(est, max(diff, 2.2e-16 * scale), done, Termination.EXTRAPOLATED)
                # noise floor reached: differences stopped shrinking at a tiny level
                if diff >= last_diff and last_diff <= 1e-12 * scale:
                    return EvalResult(rich.diagonal[-2], diff, done, Termination.EXTRAPOLATED)
                last_diff = diff
            checkpoint *= 2
    k, t, s, _, _, ratio = state
    return EvalResult(s, _tail_bound(t, ratio, k, excess.real), done, Termination.MAX_TERMS_REACHED)


def _exact(v) -> Fraction:
    if isinstance(v, Rational):
        return Fraction(v)
    if isinstance(v, float) and math.isfinite(v):
        return Fraction(v)
    if isinstance(v, complex) and v.imag == 0.0 and math.isfinite(v.real):
        return Fraction(v.real)
    raise NotRational(f"parameter {v!r} is not rational")


def evaluate_exact(spec: SeriesSpec) -> Fraction:
    """Exact value of a terminating series with rational parameters.

    Floats are taken at their exact binary value, so pass ``Fraction(1, 3)``
    rather than ``1/3`` when the intended rational is not dyadic.
    """
    n = spec.terminates_at
    if n is None:
        raise NotTerminating("series does not terminate")
    num = [_exact(a) for a in spec.numerator_params]
    den = [_exact(b) for b in spec.denominator_params]
    z = _exact(spec.argument)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        for a in num:
            term *= a + k
        for b in den:
            term /= b + k
        term *= z
        term /= k + 1
        total += term
    return total


def gauss_2f1_unit(a, b, c) -> complex:
    """Gauss's sum 2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b)).

    Requires Re(c - a - b) > 0, except that a zero a or b gives 1.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0 or b == 0:
        return 1 + 0j
    if not (c - a - b).real > 0.0:
        raise ConvergenceViolation(f"Re(c - a - b) = {(c - a - b).real!r} is not positive")
    for label, v in (("c", c), ("c - a", c - a), ("c - b", c - b)):
        _, dist = nearest_nonpositive_integer(v)
        if dist < POLE_TOL:
            raise PoleError(f"{label} = {v!r} is a pole of the gamma function")
    return gamma_ratio((c, c - a - b), (c - a, c - b))

