"""Acceptance criteria, one test each, with tolerances as specified.

Each test records a single PASS/FAIL line that is printed in the pytest
terminal summary.
"""

import cmath
import math
import random
import time
from fractions import Fraction

from ramanujan_3f2.grid import GridSpec
from ramanujan_3f2.hyper_series import evaluate, evaluate_exact, gauss_2f1_unit, hyp
from ramanujan_3f2.special_core import (
    cot_pi,
    digamma,
    gamma,
    nearest_nonpositive_integer,
    sin_pi,
)
from ramanujan_3f2.suites import random_gauss_params, random_transform_params, run_suite
from ramanujan_3f2.theorems import (
    TheoremInput,
    TransformParams,
    digamma_chain_check,
    entry_factor_check,
    negative_integer_20,
    proof_replay,
    ramanujan_entry_16,
    theorem_3f2,
    theorem_3f2_limit,
    transform_one_term,
    transform_two_term,
)

PI = math.pi
LN2 = math.log(2)

# The stated grid (a step 0.2, x step 0.1, N 0..5) has only 15 * 40 * 6 =
# 3600 points, short of the 10,000 the criterion also demands.  The grid
# run here halves both steps; it contains every stated point.
STATED_GRID = "a=0.2:3:0.2;x=-3:0.9:0.1;N=0:5"
DENSE_GRID = "a=0.1:3:0.1;x=-3:0.9:0.05;N=0:5"


def _strict_rel(p):
    return abs(p.lhs - p.rhs) / abs(p.rhs)


def test_criterion_01_main_theorem_sweep(criterion):
    stated = GridSpec.parse(STATED_GRID).points(["a", "x", "N"])
    dense = GridSpec.parse(DENSE_GRID)
    dense_set = {(p["a"], p["x"], p["N"]) for p in dense.points(["a", "x", "N"])}
    assert all((p["a"], p["x"], p["N"]) in dense_set for p in stated)
    start = time.perf_counter()
    report = run_suite("theorem18", dense, tolerance=1e-9, version="acceptance")
    elapsed = time.perf_counter() - start
    worst = max(_strict_rel(p) for p in report.points if not p.skipped)
    ok = worst <= 1e-9 and report.run >= 10_000 and elapsed < 60
    criterion(
        1,
        ok,
        f"{report.run} points ({report.skipped} skipped), max relative residual {worst:.2e} "
        f"<= 1e-9, {elapsed:.1f} s < 60 s",
    )


def test_criterion_02_golden_values(criterion):
    checks = [
        ("3F2(1/2,1/2,1;3/2,3/2;1) = pi^2/8", theorem_3f2_limit(TheoremInput(0.5, 1, 0)), PI**2 / 8),
        ("entry at x = 3/2 = pi/2", ramanujan_entry_16(1.5), PI / 2),
        ("3F2(1,1,1;2,2;1) = pi^2/6", theorem_3f2_limit(TheoremInput(1, 1, 0)), PI**2 / 6),
    ]
    errs = [abs(v - e) for _, v, e in checks]
    criterion(2, max(errs) <= 1e-8, "; ".join(f"{n}: err {e:.1e}" for (n, _, _), e in zip(checks, errs)))


def test_criterion_03_negative_integer_exact(criterion):
    half = Fraction(1, 2)
    residuals = []
    for k in range(31):
        oracle = evaluate_exact(hyp([half, half, -k], [3 * half, 3 * half]))
        residuals.append(abs(negative_integer_20(k).exact - oracle))
    spots = [negative_integer_20(k).exact for k in range(3)]
    ok = all(r == 0 for r in residuals) and spots == [1, Fraction(8, 9), Fraction(184, 225)]
    criterion(3, ok, f"k = 0..30 exact residual {max(residuals)}; spot values {', '.join(map(str, spots))}")


def test_criterion_04_reduction(criterion):
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(100):
        x = complex(rng.uniform(-5, 1), rng.uniform(-1, 1))
        worst = max(worst, abs(theorem_3f2(TheoremInput(0.5, x, 0)) - ramanujan_entry_16(x)))
    criterion(4, worst <= 1e-12, f"100 random x, max |difference| {worst:.2e} <= 1e-12")


def test_criterion_05_gauss(criterion):
    worst = 0.0
    for a, b, c in random_gauss_params(random.Random(2024), 500):
        g = gauss_2f1_unit(a, b, c)
        worst = max(worst, abs(evaluate(hyp([a, b], [c])).value - g) / (1 + abs(g)))
    criterion(5, worst <= 1e-10, f"500 random sets, max residual {worst:.2e} <= 1e-10")


def test_criterion_06_transformations(criterion):
    worst = {}
    for kind, fn in (("two_term", transform_two_term), ("one_term", transform_one_term)):
        params = random_transform_params(random.Random(2024), kind, 100)
        worst[kind] = max(fn(TransformParams(*p)).residual for p in params)
    criterion(
        6,
        max(worst.values()) <= 1e-9,
        f"100 random sets each, max residual two-term {worst['two_term']:.2e}, "
        f"one-term {worst['one_term']:.2e} <= 1e-9",
    )


def test_criterion_07_proof_replay(criterion):
    tr = proof_replay(TheoremInput(0.5, 0.3, 2), [1e-2, 1e-3, 1e-4])
    monotone = all(r1 > r2 for r1, r2 in zip(tr.residuals, tr.residuals[1:]))
    ok = monotone and 0.8 <= tr.fitted_order <= 1.2 and tr.residuals[-1] <= 1e-3
    criterion(
        7,
        ok,
        f"residuals {', '.join(f'{r:.2e}' for r in tr.residuals)}, slope {tr.fitted_order:.3f}",
    )


def test_criterion_08_missing_factor(criterion):
    xs = [-2 + 2.9 * (i + 0.5) / 50 for i in range(50)]
    factor_worst = 0.0
    chain_worst = 0.0
    for x in xs:
        fc = entry_factor_check(x)
        g = gauss_2f1_unit(0.5, x, 1.5)
        factor_worst = max(factor_worst, abs(x * fc.factor2 - g) / (1 + abs(g)))
        chain_worst = max(chain_worst, digamma_chain_check(x).residual)
    limit_err = max(abs(digamma_chain_check(0.5 + t).expr6 - LN2) for t in (0.0, 1e-10, -1e-10))
    ok = factor_worst <= 1e-10 and chain_worst <= 1e-11 and limit_err <= 1e-8
    criterion(
        8,
        ok,
        f"50 x: factor residual {factor_worst:.2e} <= 1e-10, chain residual {chain_worst:.2e} <= 1e-11, "
        f"ln 2 limit err {limit_err:.1e}",
    )


def _sample(seed, radius, n=10_000):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius and abs(z - round(z.real)) >= 0.1 and abs(z + 0.5 - round(z.real + 0.5)) >= 0.1:
            out.append(z)
    return out


def _off(z):
    return nearest_nonpositive_integer(z)[1] >= 0.1


def test_criterion_09_functional_equations(criterion):
    res = {}
    zs = _sample(1, 50)
    res["psi recurrence"] = (max(abs(digamma(z + 1) - digamma(z) - 1 / z) for z in zs if _off(z)), 1e-12)
    res["psi reflection"] = (
        max(abs(digamma(-z) - digamma(z + 1) - PI * cot_pi(z)) for z in zs if _off(-z)),
        1e-11,
    )
    res["psi duplication"] = (
        max(
            abs(2 * digamma(2 * z) - digamma(z) - digamma(z + 0.5) - 2 * LN2)
            for z in zs
            if _off(z) and _off(2 * z) and _off(z + 0.5)
        ),
        1e-12,
    )
    gs = _sample(2, 30)
    res["gamma reflection"] = (
        max(abs(gamma(z) * gamma(1 - z) - PI / sin_pi(z)) / abs(PI / sin_pi(z)) for z in gs),
        1e-12,
    )
    dup = []
    for z in gs:
        if _off(z) and _off(2 * z) and _off(z + 0.5):
            g2 = gamma(2 * z)
            rhs = cmath.exp((2 * z - 1) * LN2) / math.sqrt(PI) * gamma(z) * gamma(z + 0.5)
            dup.append(abs(g2 - rhs) / abs(g2))
    res["gamma duplication"] = (max(dup), 1e-12)
    ok = all(v <= tol for v, tol in res.values())
    criterion(9, ok, "10^4 points each; " + ", ".join(f"{k} {v:.1e}" for k, (v, _) in res.items()))


def test_criterion_10_continuation_band(criterion):
    worst = 0.0
    count = 0
    for N in range(1, 6):
        for a in (0.3, 0.75, 1.6, 2.4):
            for i in range(int(round((N + 0.9 - 1.05) / 0.05)) + 1):
                x = 1.05 + 0.05 * i
                inp = TheoremInput(a, x, N)
                if inp.nearest_removable()[1] < 1e-2:
                    continue
                s = evaluate(inp.series()).value
                worst = max(worst, abs(theorem_3f2(inp) - s) / (1 + abs(s)))
                count += 1
    criterion(10, worst <= 1e-8, f"{count} points with 1.05 <= Re x <= N+0.9, max residual {worst:.2e} <= 1e-8")
