"""Two-sided Richardson extrapolation for removable singularities."""

from __future__ import annotations

DEFAULT_STEPS = (1e-3, 5e-4, 2.5e-4)
DEFAULT_AGREEMENT = 1e-6


class ExtrapolationUnstable(ArithmeticError):
    pass


def symmetric_limit(f, x, steps=DEFAULT_STEPS, agreement=DEFAULT_AGREEMENT):
    """Value at ``x`` of a function that is analytic there but cannot be
    evaluated at ``x`` itself.

    The symmetric means ``(f(x+h) + f(x-h)) / 2`` carry only even powers of
    ``h``; with steps halving each time, the h**2 and h**4 terms are
    eliminated by Richardson's rule.  Returns ``(value, spread)`` where
    spread is the difference between the last two extrapolants.
    """
    if len(steps) < 2:
        raise ValueError("need at least two step sizes")
    for h0, h1 in zip(steps, steps[1:]):
        if abs(h0 / h1 - 2.0) > 1e-12:
            raise ValueError("steps must halve successively")
    level = [0.5 * (f(x + h) + f(x - h)) for h in steps]
    factor = 4.0
    spread = 0.0
    while len(level) > 1:
        nxt = [(factor * level[i + 1] - level[i]) / (factor - 1.0) for i in range(len(level) - 1)]
        spread = abs(nxt[-1] - level[-1])
        level = nxt
        factor *= 4.0
    value = level[0]
    if spread > agreement * (1.0 + abs(value)):
        raise ExtrapolationUnstable(
            f"successive extrapolants differ by {spread:.3g} at x = {x!r}"
        )
    return value, spread
