"""``ramanujan-3f2``: evaluate series and closed forms, run identity sweeps,
replay the epsilon limit.

Exit codes: 0 success or pass, 1 suite failure, 2 usage or parse error,
3 domain or invariant error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .grid import DEFAULT_EXCLUSION_RADIUS, GridError, GridSpec, parse_number
from .hyper_series import (
    DEFAULT_MAX_TERMS,
    DEFAULT_TOL,
    ConvergenceViolation,
    InvalidSpec,
    NotRational,
    NotTerminating,
    Verdict,
    classify,
    evaluate,
    evaluate_exact,
    hyp,
)
from .limits import ExtrapolationUnstable
from .report import encode_complex, tool_version
from .special_core import PoleError
from .suites import SUITES, Options, relative, run_suite
from .theorems import (
    InvalidInput,
    NotASingularity,
    TheoremInput,
    proof_replay,
    theorem_3f2_limit,
    theorem_3f2_report,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

DOMAIN_ERRORS = (
    InvalidInput,
    InvalidSpec,
    PoleError,
    ConvergenceViolation,
    NotASingularity,
    NotTerminating,
    NotRational,
    ExtrapolationUnstable,
)


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _number(text: str, exact: bool = False):
    try:
        return parse_number(text, exact)
    except GridError as exc:
        raise UsageError(str(exc)) from exc


def _number_list(text: str, exact: bool = False) -> list:
    if text is None or not text.strip():
        return []
    return [_number(p, exact) for p in text.split(",")]


def _fmt_num(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return encode_complex(v)
    return v


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in record.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "_"))
        elif isinstance(v, list):
            out[key] = "|".join(str(i) for i in v)
        else:
            out[key] = v
    return out


def render_record(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    flat = _flatten(record)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(repr(v) if isinstance(v, float) else v for v in flat.values())
        return buf.getvalue()
    width = max(len(k) for k in flat)
    return "".join(f"{k.ljust(width)}  {v!r}\n" if isinstance(v, float) else f"{k.ljust(width)}  {v}\n"
                   for k, v in flat.items())


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- subcommands -----------------------------------------------------------


def cmd_eval(args) -> int:
    num = _number_list(args.num, args.exact)
    den = _number_list(args.den, args.exact)
    z = _number(args.z, args.exact)
    spec = hyp(num, den, z)
    cls = classify(spec)
    if cls.verdict is Verdict.DIVERGENT_AT_UNIT:
        raise DomainError(f"series diverges: {cls}")
    tol = DEFAULT_TOL if args.tol is None else args.tol
    res = evaluate(spec, tol=tol, max_terms=args.max_terms)
    record = {
        "numerator": [_fmt_num(v) for v in num],
        "denominator": [_fmt_num(v) for v in den],
        "argument": _fmt_num(z),
        "classification": str(cls),
        "value": encode_complex(res.value),
        "abs_error_estimate": res.abs_error_estimate,
        "terms_used": res.terms_used,
        "termination": res.reason,
        "backend": res.backend,
    }
    if args.exact:
        record["exact"] = str(evaluate_exact(spec))
    _emit(render_record(record, args.format), args.out)
    return EXIT_OK


def cmd_theorem(args) -> int:
    a, x = _number(args.a), _number(args.x)
    inp = TheoremInput(a, x, args.N)
    record = {"inputs": {"a": _fmt_num(a), "x": _fmt_num(x), "N": args.N}}
    flags = []
    closed = series = None
    if args.mode in ("closed", "both"):
        if args.force_limit:
            tv_value, route = theorem_3f2_limit(inp), "limit"
        else:
            tv = theorem_3f2_report(inp)
            tv_value, route = tv.value, tv.route
            flags += list(tv.warnings)
        closed = tv_value
        record["route"] = route
        record["closed"] = encode_complex(closed)
    if args.mode in ("series", "both"):
        tol = DEFAULT_TOL if args.tol is None else args.tol
        res = evaluate(inp.series(), tol=tol, max_terms=args.max_terms)
        series = res.value
        record["series"] = encode_complex(series)
        record["series_termination"] = res.reason
        record["series_error_estimate"] = res.abs_error_estimate
    if closed is not None and series is not None:
        record["residual"] = relative(closed, series)
    record["flags"] = flags
    _emit(render_record(record, args.format), args.out)
    return EXIT_OK


def _eps_decades(text: str) -> list:
    try:
        d1, d2 = (int(p) for p in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"--eps-decades expects d1:d2, got {text!r}") from exc
    if d1 < 0 or d2 < d1:
        raise UsageError("--eps-decades needs 0 <= d1 <= d2")
    return [10.0**-d for d in range(d1, d2 + 1)]


def cmd_replay(args) -> int:
    eps = _eps_decades(args.eps_decades)
    a, x = _number(args.a), _number(args.x)
    tr = proof_replay(TheoremInput(a, x, args.N), eps)
    record = {
        "inputs": {"a": _fmt_num(a), "x": _fmt_num(x), "N": args.N},
        "target": encode_complex(tr.target),
        "epsilon_values": tr.epsilon_values,
        "values": [encode_complex(v) for v in tr.values],
        "residuals": tr.residuals,
        "fitted_order": tr.fitted_order if len(tr.residuals) > 1 else None,
        "tail_magnitudes": tr.tail_magnitudes,
        "cancellation_digits": tr.cancellation_digits,
        "extended_precision": tr.extended_precision,
    }
    if args.format == "json":
        text = render_record(record, "json")
    else:
        # one row per epsilon
        rows = [
            {
                "eps": e,
                "value_re": v.real,
                "value_im": v.imag,
                "residual": r,
                "tail": t,
                "cancellation_digits": c,
                "extended_precision": p,
            }
            for e, v, r, t, c, p in zip(tr.epsilon_values, tr.values, tr.residuals, tr.tail_magnitudes,
                                        tr.cancellation_digits, tr.extended_precision)
        ]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
        text = buf.getvalue()
        if args.format == "text":
            text = text.replace(",", "  ") + f"fitted_order  {record['fitted_order']!r}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        grid = GridSpec.parse(args.grid, args.exclude_radius)
    except GridError as exc:
        raise UsageError(str(exc)) from exc
    if args.jobs < 1 or args.min_points < 0:
        raise UsageError("--jobs must be positive and --min-points nonnegative")
    opts = Options(max_terms=args.max_terms, exact=args.exact)
    try:
        report = run_suite(
            args.suite,
            grid,
            tolerance=args.tol,
            seed=args.seed,
            opts=opts,
            min_points=args.min_points,
            jobs=args.jobs,
        )
    except GridError as exc:
        raise UsageError(str(exc)) from exc
    _emit(report.render(args.format), args.out)
    if not report.passed:
        print(
            f"{args.suite}: FAIL (max residual {report.max_residual:.3e} vs {report.tolerance:g}, "
            f"{report.run} run)",
            file=sys.stderr,
        )
    return EXIT_OK if report.passed else EXIT_FAIL


# ---- parser ----------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="series tolerance (eval, theorem) or pass tolerance (check)")
    common.add_argument("--max-terms", type=_positive_int, default=DEFAULT_MAX_TERMS)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for random suites")
    common.add_argument("--exact", action="store_true", help="rational arithmetic where applicable")

    p = _Parser(prog="ramanujan-3f2", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="sum a pFq series")
    e.add_argument("--num", required=True, help="comma-separated numerator parameters")
    e.add_argument("--den", default="", help="comma-separated denominator parameters")
    e.add_argument("--z", default="1", help="argument (default 1)")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("theorem", parents=[common], help="closed form vs series for 3F2(a,a,x;1+a,1+a+N;1)")
    t.add_argument("--a", required=True)
    t.add_argument("--x", required=True)
    t.add_argument("--N", type=_nonneg_int, required=True)
    t.add_argument("--mode", choices=("closed", "series", "both"), default="both")
    t.add_argument("--force-limit", action="store_true", help="evaluate the closed form as a limit")
    t.set_defaults(func=cmd_theorem)

    c = sub.add_parser("check", parents=[common], help="run an identity sweep")
    c.add_argument("--suite", choices=SUITES, required=True)
    c.add_argument("--grid", default="", help='e.g. "a=0.2:3:0.2;x=-3:0.9:0.1;N=0:5"')
    c.add_argument("--exclude-radius", type=float, default=DEFAULT_EXCLUSION_RADIUS,
                   help="skip points this close to a pole")
    c.add_argument("--min-points", type=int, default=1, help="points that must run for a pass")
    c.add_argument("--jobs", type=int, default=1, help="worker processes")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("replay", parents=[common], help="replay the epsilon -> 0 limit")
    r.add_argument("--a", required=True)
    r.add_argument("--x", required=True)
    r.add_argument("--N", type=_nonneg_int, required=True)
    r.add_argument("--eps-decades", default="2:4", help="d1:d2 for eps = 1e-d1 .. 1e-d2")
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"ramanujan-3f2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, *DOMAIN_ERRORS) as exc:
        print(f"ramanujan-3f2: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
