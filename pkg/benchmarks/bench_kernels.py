"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--window 10] [--repeat 5]

Kernel timings call both modules in-process.  The window build runs in a
subprocess per backend, because the backend is chosen once at import.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from lgcy import _kernels
from lgcy.mf.factorization import build_koszul_minus
from lgcy.mf.potential import fermat_split


def _mb_points(n: int = 200) -> list[complex]:
    rng = random.Random(0)
    return [complex(-1 / 6, rng.uniform(-30, 30)) for _ in range(n)]


def bench_mb(mod, repeat: int) -> float:
    pts = _mb_points()
    log_v = complex(-3.0, -3.14159)

    def run() -> None:
        for s in pts:
            mod.mb_integrand(s, log_v, 0, 1.0)

    return min(timeit.repeat(run, number=1, repeat=repeat)) / len(pts)


def bench_matmul(mod, repeat: int) -> float:
    K = build_koszul_minus(fermat_split(), validate=False)
    return min(timeit.repeat(lambda: mod.sparse_matmul(K.rows, K.rows), number=1, repeat=repeat))


_WINDOW_SNIPPET = """
import time
from lgcy.mf.window import window_ledger
t = time.perf_counter()
window_ledger({w})
print(time.perf_counter() - t)
"""


def bench_window(w: int, pure: bool) -> float:
    env = dict(os.environ)
    env.pop("LGCY_PURE_PYTHON", None)
    if pure:
        env["LGCY_PURE_PYTHON"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", _WINDOW_SNIPPET.format(w=w)], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--window", type=int, default=10, help="window index for the end-to-end build")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    if _kernels.compiled is None:
        print("compiled kernels are not built; only the pure backend is available")
        return 1
    rows = [
        ("mb_integrand (per point)", bench_mb(_kernels.pure, args.repeat), bench_mb(_kernels.compiled, args.repeat)),
        ("sparse_matmul K_- d^2", bench_matmul(_kernels.pure, args.repeat), bench_matmul(_kernels.compiled, args.repeat)),
        (f"window_ledger({args.window})", bench_window(args.window, True), bench_window(args.window, False)),
    ]
    print(f"{'benchmark':<28}{'pure [s]':>14}{'cython [s]':>14}{'speedup':>10}")
    for name, py, cy in rows:
        print(f"{name:<28}{py:>14.3e}{cy:>14.3e}{py / cy:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
