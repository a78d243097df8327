"""Compare the compiled and pure-Python summation kernels.

    python3 benchmarks/bench_series.py --terms 200000 --repeat 3
"""

import argparse
import statistics
import time

from ramanujan_3f2 import kernel
from ramanujan_3f2.hyper_series import evaluate, hyp

CASES = {
    "3F2 z=1 (theorem family)": ((0.7 + 0j, 0.7 + 0j, -0.4 + 0j), (1.7 + 0j, 3.7 + 0j), 1 + 0j),
    "2F1 complex z": ((0.5 + 0.3j, 1.25 + 0j), (2.5 - 0.1j,), 0.999 + 0j),
}


def time_kernel(advance, num, den, z, terms, repeat):
    state = (0, 1 + 0j, 0j, 0j, 0, 0.0)
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        advance(num, den, z, state, 0.0, terms)
        runs.append(time.perf_counter() - t0)
    return min(runs)


def time_evaluate(repeat):
    specs = [hyp([a, a, x], [1 + a, 1 + a + n]) for a in (0.3, 1.1, 2.5) for x in (-2.5, 0.4) for n in (0, 3)]
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        for s in specs:
            evaluate(s)
        runs.append(time.perf_counter() - t0)
    return min(runs) / len(specs)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--terms", type=int, default=200_000)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    backends = [("python", kernel.python_advance)]
    if kernel.compiled_advance is not None:
        backends.insert(0, ("cython", kernel.compiled_advance))
    else:
        print("compiled kernel not built; timing the Python fallback only")

    print(f"{'case':28s} {'backend':8s} {'ns/term':>10s} {'speedup':>8s}")
    for name, (num, den, z) in CASES.items():
        rows = []
        for label, fn in backends:
            secs = time_kernel(fn, num, den, z, args.terms, args.repeat)
            rows.append((label, secs))
        slowest = max(s for _, s in rows)
        for label, secs in rows:
            print(f"{name:28s} {label:8s} {1e9 * secs / args.terms:10.1f} {slowest / secs:7.1f}x")

    per_eval = {}
    original = kernel.advance
    for label, fn in backends:
        kernel.advance = fn
        try:
            per_eval[label] = time_evaluate(args.repeat)
        finally:
            kernel.advance = original
    for label, secs in per_eval.items():
        print(f"{'evaluate() theorem family':28s} {label:8s} {1e6 * secs:9.1f}us/call")
    print("ns/term: min of repeats; evaluate(): mean per call incl. extrapolation")


if __name__ == "__main__":
    main()
