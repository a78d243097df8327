"""Check reports and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
import math
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

from ._version import __version__


def tool_version() -> str:
    """``git describe``-style version, falling back to the package version."""
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        ).stdout.strip()
    except (OSError, subprocess.SubprocessError):
        out = ""
    return f"v{__version__}-g{out}" if out else f"v{__version__}"


def encode_complex(v):
    if v is None:
        return None
    v = complex(v)
    return {"re": _num(v.real), "im": _num(v.imag)}


def decode_complex(d):
    if d is None:
        return None
    return complex(_unnum(d["re"]), _unnum(d["im"]))


def _num(x: float):
    # JSON has no NaN or infinity
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _unnum(x):
    return float(x) if isinstance(x, str) else x


@dataclass
class PointRecord:
    inputs: dict
    lhs: complex | None
    rhs: complex | None
    residual: float | None
    flags: list = field(default_factory=list)

    @property
    def skipped(self) -> bool:
        return self.residual is None

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "lhs": encode_complex(self.lhs),
            "rhs": encode_complex(self.rhs),
            "residual": None if self.residual is None else _num(self.residual),
            "flags": list(self.flags),
        }

    @classmethod
    def from_dict(cls, d: dict) -> PointRecord:
        res = d["residual"]
        return cls(
            dict(d["inputs"]),
            decode_complex(d["lhs"]),
            decode_complex(d["rhs"]),
            None if res is None else _unnum(res),
            list(d["flags"]),
        )


@dataclass
class CheckReport:
    suite: str
    version: str
    tolerance: float
    min_points: int = 1
    points: list = field(default_factory=list)

    @property
    def run(self) -> int:
        return sum(1 for p in self.points if not p.skipped)

    @property
    def skipped(self) -> int:
        return sum(1 for p in self.points if p.skipped)

    @property
    def max_residual(self) -> float:
        vals = [p.residual for p in self.points if not p.skipped]
        if not vals:
            return math.nan
        # NaN residuals count as failures
        return max(vals, key=lambda r: math.inf if math.isnan(r) else r)

    @property
    def mean_residual(self) -> float:
        vals = [p.residual for p in self.points if not p.skipped]
        return math.fsum(vals) / len(vals) if vals else math.nan

    @property
    def passed(self) -> bool:
        worst = self.max_residual
        return self.run >= self.min_points and not math.isnan(worst) and worst <= self.tolerance

    def aggregate(self) -> dict:
        return {
            "max_residual": _num(self.max_residual),
            "mean_residual": _num(self.mean_residual),
            "run": self.run,
            "skipped": self.skipped,
            "pass": self.passed,
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "tolerance": self.tolerance,
            "min_points": self.min_points,
            "points": [p.to_dict() for p in self.points],
            "aggregate": self.aggregate(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> CheckReport:
        return cls(
            d["suite"],
            d["version"],
            d["tolerance"],
            d.get("min_points", 1),
            [PointRecord.from_dict(p) for p in d["points"]],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> CheckReport:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        names = []
        for p in self.points:
            for k in p.inputs:
                if k not in names:
                    names.append(k)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(names + ["lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "flags"])
        for p in self.points:
            row = [_cell(p.inputs.get(k, "")) for k in names]
            for v in (p.lhs, p.rhs):
                row += ["", ""] if v is None else [repr(v.real), repr(v.imag)]
            row.append("" if p.residual is None else repr(p.residual))
            row.append("|".join(p.flags))
            w.writerow(row)
        agg = self.aggregate()
        buf.write(f"# suite={self.suite} version={self.version} tolerance={self.tolerance!r}\n")
        buf.write(
            f"# max_residual={self.max_residual!r} mean_residual={self.mean_residual!r} "
            f"run={agg['run']} skipped={agg['skipped']} pass={agg['pass']}\n"
        )
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"suite {self.suite} ({self.version}), tolerance {self.tolerance:g}"]
        for p in self.points:
            ins = ", ".join(f"{k}={_cell(v)}" for k, v in p.inputs.items())
            if p.skipped:
                lines.append(f"  [{ins}] skipped ({'; '.join(p.flags)})")
                continue
            tag = "" if not p.flags else f"  [{'; '.join(p.flags)}]"
            lines.append(f"  [{ins}] residual {p.residual:.3e}{tag}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(
            f"{verdict}: max residual {self.max_residual:.3e}, mean {self.mean_residual:.3e}, "
            f"{self.run} run, {self.skipped} skipped"
        )
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)
