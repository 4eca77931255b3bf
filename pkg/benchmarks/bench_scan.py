"""Benchmark the box-scan backends against each other.

The compiled odometer loop (numba) and the chunked numpy fallback must
return identical point sets; this script times both on the same
workloads and prints a comparison table.  Run as:

    python3 benchmarks/bench_scan.py [--repeats N] [--ranks 2,4,6]

The first numba call pays the JIT compile; it is timed separately so the
steady-state numbers stay honest.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fourfold_lab._scan import scan_box
from fourfold_lab.intlinalg import hyperbolic_form


def workload(rank: int, cap: int):
    """A hyperbolic form with unit-vector pairing bounds: the shape the
    enumerator's oracle actually runs."""
    q = [list(r) for r in hyperbolic_form(rank // 2).entries]
    rows = [[q[i][j] for j in range(rank)] for i in range(rank)]
    bounds = [4] * rank  # genus-3 surfaces on a square-zero basis
    zrows = [[1 if i == rank - 1 else 0 for i in range(rank)]] if rank > 2 else []
    square = 8
    caps = [cap] * rank
    return q, rows, bounds, zrows, square, caps


def time_backend(backend: str, args, repeats: int):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = scan_box(*args, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--ranks", default="2,4,6",
                        help="comma-separated even ranks to benchmark")
    opts = parser.parse_args()
    ranks = [int(r) for r in opts.ranks.split(",")]

    # pay the JIT compile on a tiny case before timing anything
    tiny = workload(2, 1)
    t0 = time.perf_counter()
    scan_box(*tiny, backend="numba")
    compile_s = time.perf_counter() - t0
    print(f"numba compile + first call: {compile_s * 1000:.0f} ms")
    print()
    print(f"{'rank':>4} {'cap':>4} {'points':>12} {'numba':>10} "
          f"{'numpy':>10} {'speedup':>8}  agree")

    ok = True
    for rank in ranks:
        cap = {2: 40, 4: 8, 6: 3}.get(rank, 3)
        args = workload(rank, cap)
        points = (2 * cap + 1) ** rank
        t_nb, r_nb = time_backend("numba", args, opts.repeats)
        t_np, r_np = time_backend("numpy", args, opts.repeats)
        same = np.array_equal(r_nb, r_np)
        ok = ok and same
        speed = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{rank:>4} {cap:>4} {points:>12,} {t_nb * 1000:>8.1f}ms "
              f"{t_np * 1000:>8.1f}ms {speed:>7.1f}x  "
              f"{'yes' if same else 'NO'} ({len(r_nb)} pts)")

    if not ok:
        print("BACKEND MISMATCH")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
