"""Time the transport kernel on window paths, compiled against pure Python.

    python3 benchmarks/bench_transport.py [--weights quintic] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

from lgcy import kernels
from lgcy.continuation import gw_jet_seeds, pf_coefficients, window_path
from lgcy.geometry import parse_weights


def _best(fn, repeat: int) -> tuple[float, dict]:
    best, stats = float("inf"), {}
    for _ in range(repeat):
        t0 = time.perf_counter()
        _, stats = fn()
        best = min(best, time.perf_counter() - t0)
    return best, stats


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--weights", default="quintic;1,1,1,1,2")
    ap.add_argument("--windows", default="0,1")
    ap.add_argument("--tol", type=float, default=1e-12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    lam = Fraction(1, 10)
    print(f"{'weights':<14}{'l':>3}{'steps':>8}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name in args.weights.split(";"):
        ws = parse_weights(name)
        A, B = pf_coefficients(ws, complex(lam))
        for l in map(int, args.windows.split(",")):
            path = window_path(ws, l)
            seeds = gw_jet_seeds(ws, path.start, 1, lam, K=120, prec=96)

            def run(fn):
                return lambda: fn(A, B, path.waypoints, seeds, tol=args.tol)

            tp, st = _best(run(kernels.py_integrate_path), args.repeat)
            if kernels.c_integrate_path is None:
                tc, ratio = float("nan"), "n/a"
            else:
                tc, _ = _best(run(kernels.c_integrate_path), args.repeat)
                ratio = f"{tp / tc:.1f}x"
            print(f"{','.join(map(str, ws.weights)):<14}{l:>3}{st['steps']:>8}{tp:>11.4f}{tc:>11.4f}{ratio:>9}")


if __name__ == "__main__":
    main()
