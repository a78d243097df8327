"""Closed forms for 3F2(a, a, x; 1+a, 1+a+N; 1), certified against direct
summation of the series."""

from ._version import __version__
from .hyper_series import (
    ConvergenceClass,
    ConvergenceViolation,
    EvalResult,
    InvalidSpec,
    SeriesSpec,
    Termination,
    Verdict,
    classify,
    evaluate,
    evaluate_exact,
    gauss_2f1_unit,
    hyp,
)
from .kernel import BACKEND
from .special_core import (
    CONSTANTS,
    EULER_GAMMA,
    PoleError,
    digamma,
    gamma,
    gamma_ratio,
    harmonic_like_sum,
    log_gamma,
    pochhammer,
    rgamma,
)
from .theorems import (
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

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
