"""Identity sweeps behind ``ramanujan-3f2 check``.

Each suite turns a grid (or a seeded random draw) into a list of point
tasks.  A task is a module-level function plus keyword arguments, so the
list can be fanned out to worker processes; results come back in task
order either way.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .grid import GridError, GridSpec
from .hyper_series import (
    DEFAULT_MAX_TERMS,
    DEFAULT_TOL,
    evaluate,
    evaluate_exact,
    gauss_2f1_unit,
    hyp,
)
from .report import CheckReport, PointRecord, tool_version
from .special_core import nearest_nonpositive_integer
from .theorems import (
    TheoremInput,
    TransformParams,
    digamma_chain_check,
    entry_factor_check,
    negative_integer_20,
    proof_replay,
    ramanujan_entry_16,
    theorem_3f2_report,
    transform_one_term,
    transform_two_term,
)

# pole-free margin for randomly drawn parameters
RANDOM_MARGIN = 0.05


@dataclass(frozen=True)
class Options:
    series_tol: float = DEFAULT_TOL
    max_terms: int = DEFAULT_MAX_TERMS
    exact: bool = False


def relative(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs| / max(1, |rhs|)."""
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return v.real if v.imag == 0 else {"re": v.real, "im": v.imag}
    return float(v)


def _inputs(**kw) -> dict:
    return {k: jsonable(v) for k, v in kw.items()}


def _skip(inputs: dict, why: str) -> PointRecord:
    return PointRecord(inputs, None, None, None, [f"skipped: {why}"])


def _pole_dist(v) -> float:
    return nearest_nonpositive_integer(complex(v))[1]


def _series_flags(res) -> list:
    return [] if res.trusted else [f"series: {res.reason}"]


# ---- point functions -------------------------------------------------------


def point_gauss(a, b, c, opts: Options) -> PointRecord:
    ins = _inputs(a=a, b=b, c=c)
    res = evaluate(hyp([a, b], [c]), tol=opts.series_tol, max_terms=opts.max_terms)
    closed = gauss_2f1_unit(a, b, c)
    return PointRecord(ins, res.value, closed, relative(res.value, closed), _series_flags(res))


def point_theorem18(a, x, N, radius, opts: Options) -> PointRecord:
    ins = _inputs(a=a, x=x, N=N)
    if _pole_dist(a) < radius and round(complex(a).real) < 0:
        return _skip(ins, "a near a negative integer")
    if not complex(x).real < N + 2:
        return _skip(ins, "Re x >= N + 2")
    inp = TheoremInput(a, x, N)
    tv = theorem_3f2_report(inp)
    res = evaluate(inp.series(), tol=opts.series_tol, max_terms=opts.max_terms)
    flags = [f"route: {tv.route}"] if tv.route != "closed" else []
    flags += list(tv.warnings) + _series_flags(res)
    return PointRecord(ins, tv.value, res.value, relative(tv.value, res.value), flags)


def point_entry16(x, radius, opts: Options) -> PointRecord:
    ins = _inputs(x=x)
    if abs(complex(x) - 1) < radius:
        return _skip(ins, "removable point x = 1")
    lhs = ramanujan_entry_16(x)
    rhs = theorem_3f2_report(TheoremInput(0.5, x, 0)).value
    return PointRecord(ins, lhs, rhs, relative(lhs, rhs))


def point_eq20(k, opts: Options) -> PointRecord:
    ins = _inputs(k=k)
    nv = negative_integer_20(k)
    half = Fraction(1, 2)
    spec = hyp([half, half, -k], [3 * half, 3 * half])
    if opts.exact:
        oracle = evaluate_exact(spec)
        return PointRecord(ins, float(nv.exact), float(oracle), float(abs(nv.exact - oracle)), ["rational"])
    res = evaluate(spec, tol=opts.series_tol, max_terms=opts.max_terms)
    return PointRecord(ins, nv.value, res.value, relative(nv.value, res.value))


def point_transform(kind, a, b, c, d, e, opts: Options) -> PointRecord:
    ins = _inputs(transform=kind, a=a, b=b, c=c, d=d, e=e)
    fn = transform_two_term if kind == "two_term" else transform_one_term
    r = fn(TransformParams(a, b, c, d, e), tol=opts.series_tol)
    return PointRecord(ins, r.lhs, r.rhs, r.residual)


def point_digamma_chain(x, radius, opts: Options) -> PointRecord:
    ins = _inputs(x=x)
    xc = complex(x)
    m = round(xc.real - 1.5)
    if m >= 0 and abs(xc - (1.5 + m)) < radius:
        return _skip(ins, "pole of psi(3/2 - x)")
    cc = digamma_chain_check(x)
    flags = [] if cc.route == "direct" else [f"route: {cc.route}"]
    return PointRecord(ins, cc.expr6, cc.expr15, cc.residual, flags)


def point_factor_x(x, radius, opts: Options) -> PointRecord:
    ins = _inputs(x=x)
    xc = complex(x)
    m = round(xc.real)
    if m >= 0 and abs(xc - m) < radius:
        return _skip(ins, "pole at x = 0 or a positive integer")
    fc = entry_factor_check(x)
    lhs = xc * fc.factor2
    rhs = gauss_2f1_unit(0.5, xc, 1.5)
    ratio_dev = abs(fc.ratio - xc) / (1 + abs(xc))
    flags = [f"ratio-x: {ratio_dev:.3e}"]
    if fc.route != "direct":
        flags.append(f"route: {fc.route}")
    # both the identity and ratio == x have to hold
    return PointRecord(ins, lhs, rhs, max(relative(lhs, rhs), ratio_dev), flags)


def point_replay(a, x, N, eps_values, opts: Options) -> list:
    base = _inputs(a=a, x=x, N=N)
    if not complex(x).real < 1:
        return [_skip(dict(base, eps=e), "Re x >= 1") for e in eps_values]
    tr = proof_replay(TheoremInput(a, x, N), eps_values)
    by_eps = dict(zip(tr.epsilon_values, zip(tr.values, tr.residuals, tr.extended_precision)))
    out = []
    for e in eps_values:
        value, res, ext = by_eps[float(e)]
        flags = [f"fitted_order: {tr.fitted_order!r}"]
        if ext:
            flags.append("extended-precision")
        out.append(PointRecord(dict(base, eps=jsonable(e)), value, tr.target, res, flags))
    return out


# ---- task builders ---------------------------------------------------------


def _count(grid: GridSpec, default: int) -> int:
    n = grid.get("n", [default])
    if len(n) != 1 or n[0] < 1:
        raise GridError("n must be a single positive integer")
    return n[0]


def _rand_complex(rng: random.Random, lo, hi, im) -> complex:
    return complex(rng.uniform(lo, hi), rng.uniform(-im, im))


def random_gauss_params(rng: random.Random, count: int) -> list:
    out = []
    while len(out) < count:
        a = _rand_complex(rng, -2.0, 3.0, 1.0)
        b = _rand_complex(rng, -2.0, 3.0, 1.0)
        c = a + b + _rand_complex(rng, 0.3, 3.0, 1.0)
        if min(_pole_dist(c), _pole_dist(c - a), _pole_dist(c - b)) < RANDOM_MARGIN:
            continue
        out.append((a, b, c))
    return out


def random_transform_params(rng: random.Random, kind: str, count: int) -> list:
    """Complex parameter sets where every series the transformation uses
    converges with real excess at least 0.5 and no gamma meets a pole."""
    out = []
    while len(out) < count:
        a = _rand_complex(rng, -0.8, 1.8, 0.3)
        b = _rand_complex(rng, -0.8, 1.8, 0.3)
        d = _rand_complex(rng, 0.3, 3.0, 0.3)
        if kind == "two_term":
            c = _rand_complex(rng, -1.5, 0.5, 0.3)
        else:
            c = _rand_complex(rng, -0.8, 1.8, 0.3)
        s = _rand_complex(rng, 0.5, 3.0, 0.3)
        e = a + b + c + s - d
        if kind == "two_term":
            delta = a - b
            if abs(delta.real - round(delta.real)) < RANDOM_MARGIN and abs(delta.imag) < RANDOM_MARGIN:
                continue
            gammas = [a, b, d, e, d - a, d - b, e - a, e - b, d + e - a - c, d + e - b - c,
                      1 - a + b, 1 + a - b]
            excesses = [s, 1 - c]
        else:
            gammas = [d, e, e - a, d + e - b - c, d - b, d - c]
            excesses = [s, e - a]
        if min(_pole_dist(v) for v in gammas) < RANDOM_MARGIN:
            continue
        if min(v.real for v in excesses) < 0.5:
            continue
        out.append((a, b, c, d, e))
    return out


def _build(suite: str, grid: GridSpec, seed: int, opts: Options) -> list:
    radius = grid.exclusion_radius
    rng = random.Random(seed)
    if suite == "gauss":
        params = random_gauss_params(rng, _count(grid, 500))
        return [(point_gauss, dict(a=a, b=b, c=c, opts=opts)) for a, b, c in params]
    if suite == "theorem18":
        g = grid.with_defaults("a=0.2:3:0.2;x=-3:0.9:0.1;N=0:5")
        return [(point_theorem18, dict(p, radius=radius, opts=opts)) for p in g.points(["a", "x", "N"])]
    if suite == "entry16":
        if "x" in grid.variables:
            xs = grid.variables["x"]
        else:
            xs = [_rand_complex(rng, -5.0, 1.0, 1.0) for _ in range(_count(grid, 100))]
        return [(point_entry16, dict(x=x, radius=radius, opts=opts)) for x in xs]
    if suite == "eq20":
        g = grid.with_defaults("k=0:30")
        for k in g.variables["k"]:
            if k < 0:
                raise GridError("k must be nonnegative")
        return [(point_eq20, dict(k=k, opts=opts)) for k in g.variables["k"]]
    if suite == "transforms":
        n = _count(grid, 100)
        tasks = []
        for kind in ("two_term", "one_term"):
            for p in random_transform_params(rng, kind, n):
                tasks.append((point_transform, dict(kind=kind, a=p[0], b=p[1], c=p[2], d=p[3], e=p[4], opts=opts)))
        return tasks
    if suite in ("digamma_chain", "factor_x"):
        g = grid.with_defaults("x=-2:0.9:0.05")
        fn = point_digamma_chain if suite == "digamma_chain" else point_factor_x
        return [(fn, dict(x=x, radius=radius, opts=opts)) for x in g.variables["x"]]
    if suite == "replay":
        g = grid.with_defaults("a=0.5;x=0.3;N=2;eps=1e-2,1e-3,1e-4")
        eps = g.variables["eps"]
        if any(not isinstance(e, float) or e <= 0 for e in eps):
            raise GridError("eps values must be positive reals")
        return [(point_replay, dict(p, eps_values=eps, opts=opts)) for p in g.points(["a", "x", "N"])]
    raise GridError(f"unknown suite {suite!r}")


SUITES = ("gauss", "theorem18", "entry16", "eq20", "transforms", "digamma_chain", "factor_x", "replay")

DEFAULT_TOLERANCE = {
    "gauss": 1e-10,
    "theorem18": 1e-9,
    "entry16": 1e-12,
    # float mode: the alternating terminating series loses ~4 digits by k = 30
    "eq20": 1e-10,
    "transforms": 1e-9,
    "digamma_chain": 1e-11,
    "factor_x": 1e-10,
    "replay": 1e-2,
}


def _call(task):
    fn, kw = task
    return fn(**kw)


def run_suite(
    suite: str,
    grid: GridSpec | None = None,
    *,
    tolerance: float | None = None,
    seed: int = 0,
    opts: Options = Options(),
    min_points: int = 1,
    jobs: int = 1,
    version: str | None = None,
) -> CheckReport:
    """Run a suite and assemble its report in task order."""
    if suite not in SUITES:
        raise GridError(f"unknown suite {suite!r}")
    grid = grid if grid is not None else GridSpec()
    tasks = _build(suite, grid, seed, opts)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_call, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_call(t) for t in tasks]
    points = []
    for r in results:
        points.extend(r if isinstance(r, list) else [r])
    tol = DEFAULT_TOLERANCE[suite] if tolerance is None else tolerance
    if suite == "eq20" and opts.exact and tolerance is None:
        tol = 0.0
    return CheckReport(suite, version or tool_version(), tol, min_points, points)

