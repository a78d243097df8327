"""Parameter grids for ``check`` sweeps.

Syntax: ``var=start:stop:step`` (inclusive stop), ``var=start:stop``
(unit step), ``var=v1,v2,...`` or ``var=v``, with variables separated by
``;``.  Grid points are produced in lexicographic order of the variables
as written.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction

INTEGER_VARS = frozenset({"N", "k", "n"})
DEFAULT_EXCLUSION_RADIUS = 1e-3


class GridError(ValueError):
    pass


def parse_number(text: str, exact: bool = False):
    """int, Fraction ("1/3"), float or complex ("0.5+1j") from a string.

    With ``exact`` decimal literals become Fractions ("0.1" -> 1/10).
    """
    s = text.strip()
    if not s:
        raise GridError("empty number")
    try:
        return int(s)
    except ValueError:
        pass
    if "/" in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise GridError(f"bad fraction {text!r}") from exc
    if exact and "j" not in s.lower():
        try:
            return Fraction(Decimal(s))
        except (InvalidOperation, ValueError) as exc:
            raise GridError(f"bad number {text!r}") from exc
    try:
        return float(s)
    except ValueError:
        pass
    try:
        return complex(s.replace(" ", ""))
    except ValueError as exc:
        raise GridError(f"bad number {text!r}") from exc


def _range(var: str, body: str) -> list:
    parts = body.split(":")
    if len(parts) not in (2, 3):
        raise GridError(f"{var}: expected start:stop[:step], got {body!r}")
    try:
        start, stop = Decimal(parts[0]), Decimal(parts[1])
        step = Decimal(parts[2]) if len(parts) == 3 else Decimal(1)
    except InvalidOperation as exc:
        raise GridError(f"{var}: bad range {body!r}") from exc
    if step <= 0:
        raise GridError(f"{var}: step must be positive")
    if stop < start:
        raise GridError(f"{var}: stop is below start")
    if var in INTEGER_VARS and any(v != v.to_integral_value() for v in (start, stop, step)):
        raise GridError(f"{var} range must have integer start, stop and step")
    count = int((stop - start) / step + Decimal("1e-9")) + 1
    vals = [start + i * step for i in range(count)]
    if var in INTEGER_VARS:
        return [int(v) for v in vals]
    return [float(v) for v in vals]


def _values(var: str, body: str) -> list:
    if ":" in body:
        return _range(var, body)
    vals = [parse_number(p) for p in body.split(",")]
    if var in INTEGER_VARS:
        if any(not isinstance(v, int) for v in vals):
            raise GridError(f"{var} must take integer values")
    else:
        vals = [float(v) if isinstance(v, (int, Fraction)) else v for v in vals]
    return vals


@dataclass
class GridSpec:
    variables: dict = field(default_factory=dict)
    exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS

    @classmethod
    def parse(cls, text: str | None, exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS) -> GridSpec:
        if exclusion_radius < 0:
            raise GridError("exclusion radius must be nonnegative")
        out: dict = {}
        for chunk in (text or "").split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" not in chunk:
                raise GridError(f"expected var=values, got {chunk!r}")
            var, body = (p.strip() for p in chunk.split("=", 1))
            if not var.isidentifier():
                raise GridError(f"bad variable name {var!r}")
            if var in out:
                raise GridError(f"variable {var!r} given twice")
            vals = _values(var, body)
            if not vals:
                raise GridError(f"{var}: no values")
            out[var] = vals
        return cls(out, exclusion_radius)

    def with_defaults(self, defaults: str) -> GridSpec:
        base = GridSpec.parse(defaults, self.exclusion_radius)
        merged = dict(base.variables)
        merged.update(self.variables)
        return GridSpec(merged, self.exclusion_radius)

    def get(self, var, default=None):
        return self.variables.get(var, default)

    def points(self, names) -> list[dict]:
        missing = [n for n in names if n not in self.variables]
        if missing:
            raise GridError(f"grid lacks variables: {', '.join(missing)}")
        ordered = [n for n in self.variables if n in names]
        combos = itertools.product(*(self.variables[n] for n in ordered))
        return [dict(zip(ordered, c)) for c in combos]
