import math
import random
import warnings
from fractions import Fraction

import mpmath
import pytest

from ramanujan_3f2.hyper_series import ConvergenceViolation, evaluate, evaluate_exact, gauss_2f1_unit, hyp
from ramanujan_3f2.special_core import PoleError
from ramanujan_3f2.suites import random_transform_params
from ramanujan_3f2.theorems import (
    DegenerateParameters,
    InvalidInput,
    NotASingularity,
    TheoremInput,
    TransformParams,
    UnstableCancellation,
    digamma_chain_check,
    entry_factor_check,
    negative_integer_20,
    proof_replay,
    ramanujan_entry_16,
    theorem_3f2,
    theorem_3f2_limit,
    theorem_3f2_report,
    transform_one_term,
    transform_two_term,
)

PI = math.pi
LN2 = math.log(2)


def series(a, x, N):
    return evaluate(hyp([a, a, x], [1 + a, 1 + a + N])).value


# ---- TheoremInput ----------------------------------------------------------


def test_input_validation():
    with pytest.raises(InvalidInput):
        TheoremInput(-2, 0.3, 1)
    with pytest.raises(InvalidInput):
        TheoremInput(0.5, 0.3, -1)
    with pytest.raises(InvalidInput):
        TheoremInput(0.5, 0.3, 1.5)
    with pytest.raises(InvalidInput):
        TheoremInput(0.5, 3.0, 1)
    inp = TheoremInput(0.5, 2.5, 1)
    assert inp.continuation_band
    assert not TheoremInput(0.5, 0.5, 1).continuation_band


def test_removable_points():
    pts = TheoremInput(0.5, 0.0, 2).removable_points()
    assert pts == [1, 2, 3, 1.5, 2.5, 3.5]


# ---- main theorem ----------------------------------------------------------


@pytest.mark.parametrize(
    "a, x, N, expected",
    [(1, 0, 1, 1.0), (0.5, -1, 0, 8 / 9), (0, 0.7, 3, 1.0), (0, -2.2 + 1j, 0, 1.0)],
)
def test_theorem_examples(a, x, N, expected):
    assert abs(theorem_3f2(TheoremInput(a, x, N)) - expected) <= 1e-13


def test_theorem_against_series_complex():
    rng = random.Random(41)
    for _ in range(60):
        a = complex(rng.uniform(0.1, 3), rng.uniform(-1, 1))
        N = rng.randrange(0, 4)
        x = complex(rng.uniform(-3, 0.9), rng.uniform(-1, 1))
        inp = TheoremInput(a, x, N)
        lhs = theorem_3f2(inp)
        rhs = series(a, x, N)
        assert abs(lhs - rhs) / (1 + abs(lhs)) <= 1e-9


def test_theorem_against_mpmath():
    for a, x, N in [(0.7, -0.4, 1), (2.2, 0.6, 0), (1.3, -2.5, 3)]:
        ref = float(mpmath.hyp3f2(a, a, x, 1 + a, 1 + a + N, 1))
        assert abs(theorem_3f2(TheoremInput(a, x, N)) - ref) <= 1e-12 * max(1, abs(ref))


@pytest.mark.parametrize(
    "a, x, N, expected",
    [(0.5, 1, 0, PI**2 / 8), (0.5, 1.5, 0, PI / 2), (1, 1, 0, PI**2 / 6)],
)
def test_limit_golden(a, x, N, expected):
    assert abs(theorem_3f2_limit(TheoremInput(a, x, N)) - expected) <= 1e-8
    assert abs(theorem_3f2(TheoremInput(a, x, N)) - expected) <= 1e-8


def test_limit_matches_series():
    for a, x, N in [(0.3, 2, 2), (1.7, 1, 1), (0.25, 1.25, 0), (0.8, 3, 3)]:
        inp = TheoremInput(a, x, N)
        assert abs(theorem_3f2_limit(inp) - series(a, x, N)) <= 1e-7


def test_limit_rejects_regular_points():
    with pytest.raises(NotASingularity):
        theorem_3f2_limit(TheoremInput(0.5, 0.3, 1))


def test_routing_and_flags():
    assert theorem_3f2_report(TheoremInput(0.5, 1.0, 0)).route == "limit"
    near = theorem_3f2_report(TheoremInput(0.5, 1.003, 0))
    assert near.route == "closed"
    assert any("cancellation" in w for w in near.warnings)
    assert theorem_3f2_report(TheoremInput(0, 0.2, 1)).route == "special"


def test_continuation_band():
    worst = 0.0
    for N in range(1, 6):
        x = 1.05
        while x <= N + 0.9 + 1e-12:
            inp = TheoremInput(1.3, x, N)
            if inp.nearest_removable()[1] > 1e-3:
                worst = max(worst, abs(theorem_3f2(inp) - series(1.3, x, N)) / (1 + abs(series(1.3, x, N))))
            x += 0.1
    assert worst <= 1e-8


# ---- Ramanujan's entry and its negative-integer form ---------------------


@pytest.mark.parametrize(
    "x, expected",
    [(0, 1.0), (-1, 8 / 9), (0.5, PI * LN2 / 2), (1.5, PI / 2), (1, PI**2 / 8)],
)
def test_entry16_examples(x, expected):
    assert abs(ramanujan_entry_16(x) - expected) <= 1e-10


def test_entry16_domain():
    with pytest.raises(InvalidInput):
        ramanujan_entry_16(2.0)


def test_reduction_to_entry16():
    rng = random.Random(42)
    for _ in range(100):
        x = complex(rng.uniform(-5, 1), rng.uniform(-1, 1))
        lhs = ramanujan_entry_16(x)
        rhs = theorem_3f2(TheoremInput(0.5, x, 0))
        assert abs(lhs - rhs) <= 1e-12 * max(1, abs(rhs))


@pytest.mark.parametrize("k, expected", [(0, Fraction(1)), (1, Fraction(8, 9)), (2, Fraction(184, 225))])
def test_negative_integer_examples(k, expected):
    v = negative_integer_20(k)
    assert v.exact == expected
    assert abs(v.value - float(expected)) <= 1e-14


def test_negative_integer_exact_and_float():
    half = Fraction(1, 2)
    for k in range(31):
        v = negative_integer_20(k)
        oracle = evaluate_exact(hyp([half, half, -k], [3 * half, 3 * half]))
        assert v.exact == oracle
        assert abs(v.value - float(oracle)) <= 1e-13 * float(oracle)
    with pytest.raises(InvalidInput):
        negative_integer_20(-1)


# ---- transformations -------------------------------------------------------


@pytest.mark.parametrize(
    "params, bound",
    [((0.3, 0.7, -0.2, 1.4, 1.9), 1e-10), ((0.3, 0.7, 0, 1.4, 1.9), 1e-12), ((0.5, 1.1, -3, 2.2, 2.6), 1e-11)],
)
def test_two_term_examples(params, bound):
    r = transform_two_term(TransformParams(*params))
    assert r.residual <= bound
    if params[2] == 0:
        assert abs(r.lhs - 1) <= 1e-15


@pytest.mark.parametrize(
    "params, bound",
    [((0.4, 0.6, -0.3, 1.5, 1.8), 1e-10), ((0, 0.6, -0.3, 1.5, 1.8), 1e-12), ((0.5, 0.5, 1.0, 1.5, 2.5), 1e-10)],
)
def test_one_term_examples(params, bound):
    r = transform_one_term(TransformParams(*params))
    assert r.residual <= bound
    if params[0] == 0:
        assert abs(r.lhs - 1) <= 1e-15 and abs(r.rhs - 1) <= 1e-12


def test_two_term_degenerate():
    with pytest.raises(DegenerateParameters):
        transform_two_term(TransformParams(0.5, 1.5, -0.2, 1.4, 1.9))


def test_transform_convergence_checked():
    p = TransformParams(0.3, 0.7, 1.2, 1.4, 1.9)
    with pytest.raises(ConvergenceViolation):
        transform_two_term(p)


@pytest.mark.parametrize("kind", ["two_term", "one_term"])
def test_transforms_random(kind):
    fn = transform_two_term if kind == "two_term" else transform_one_term
    worst = 0.0
    for params in random_transform_params(random.Random(43), kind, 100):
        worst = max(worst, fn(TransformParams(*params)).residual)
    assert worst <= 1e-9


# ---- proof replay ----------------------------------------------------------


def test_replay_order_one():
    tr = proof_replay(TheoremInput(0.5, 0.3, 2), [1e-2, 1e-3, 1e-4])
    assert tr.epsilon_values == [1e-2, 1e-3, 1e-4]
    assert all(r1 > r2 for r1, r2 in zip(tr.residuals, tr.residuals[1:]))
    assert 0.8 <= tr.fitted_order <= 1.2
    assert tr.residuals[-1] <= 1e-3


def test_replay_examples():
    tr = proof_replay(TheoremInput(0.5, 0, 0), [1e-3])
    assert abs(tr.values[0] - 1) <= 1e-2
    tr = proof_replay(TheoremInput(1.2, -0.5, 1), [1e-4])
    assert tr.residuals[0] <= 1e-3


def test_replay_values_are_deformed_series():
    # each value is 3F2(a, a - eps, x; 1 + a - eps, 1 + a - eps + N; 1)
    a, x, N, eps = 0.5, 0.3, 2, 1e-2
    tr = proof_replay(TheoremInput(a, x, N), [eps])
    direct = evaluate(hyp([a, a - eps, x], [1 + a - eps, 1 + a - eps + N])).value
    assert abs(tr.values[0] - direct) <= 1e-9


def test_replay_domain():
    with pytest.raises(InvalidInput):
        proof_replay(TheoremInput(0.5, 1.2, 1), [1e-3])
    with pytest.raises(InvalidInput):
        proof_replay(TheoremInput(0.5, 0.2, 1), [0.0])


def test_replay_extended_precision_fallback():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        tr = proof_replay(TheoremInput(0.5, 0.3, 2), [1e-9])
    assert tr.extended_precision == [True]
    assert any(issubclass(w.category, UnstableCancellation) for w in caught)
    assert tr.residuals[0] <= 1e-6


# ---- missing factor x and the digamma chain -------------------------------


@pytest.mark.parametrize("x", [0.25, -0.5])
def test_factor_ratio_examples(x):
    fc = entry_factor_check(x)
    assert abs(fc.ratio - x) <= 1e-12
    assert fc.faktor_residual <= 1e-11


def test_factor_near_zero():
    x = 1e-6
    fc = entry_factor_check(x)
    assert abs(fc.factor2 * x - 1) <= 1e-5
    assert abs(fc.corrected - 1) <= 1e-5
    assert abs(fc.ratio - x) <= 1e-15


def test_factor_poles():
    for x in (0, 1, 2):
        with pytest.raises(PoleError):
            entry_factor_check(x)


def test_factor_identity_sample():
    for i in range(50):
        x = -2 + 2.9 * (i + 0.5) / 50
        if abs(x) < 1e-3:
            continue
        fc = entry_factor_check(x)
        g = gauss_2f1_unit(0.5, x, 1.5)
        assert abs(x * fc.factor2 - g) <= 1e-10 * (1 + abs(g))
        assert abs(fc.ratio - x) <= 1e-10 * (1 + abs(x))


def test_factor_removable_points():
    for x in (-1.5, -1, -0.5, 0.5):
        fc = entry_factor_check(x)
        assert fc.route == "limit"
        assert abs(fc.ratio - x) <= 1e-8


@pytest.mark.parametrize("x, bound", [(0, 1e-14), (0.25, 1e-12)])
def test_chain_examples(x, bound):
    cc = digamma_chain_check(x)
    assert cc.residual <= bound
    if x == 0:
        assert abs(cc.expr6 - 1) <= 1e-14 and abs(cc.expr15 - 1) <= 1e-14


def test_chain_limit_ln2():
    for t in (0.0, 1e-3, -1e-6, 1e-12):
        cc = digamma_chain_check(0.5 + t)
        assert abs(cc.expr6 - cc.expr15) <= 1e-11
    assert abs(digamma_chain_check(0.5).expr6 - LN2) <= 1e-8


def test_chain_sample():
    worst = 0.0
    for i in range(50):
        x = -2 + 2.9 * (i + 0.5) / 50
        worst = max(worst, digamma_chain_check(x).residual)
    for x in (-1.5, -1.0, -0.5, -2.0):
        worst = max(worst, digamma_chain_check(x).residual)
    assert worst <= 1e-11


def test_chain_complex():
    rng = random.Random(44)
    for _ in range(50):
        x = complex(rng.uniform(-2, 0.9), rng.uniform(-1, 1))
        assert digamma_chain_check(x).residual <= 1e-11
