"""Compares the compiled and pure-Python kernels.

Times rank, row reduction and matrix products on random prime-field
matrices, then a full reduction of random modules, under each backend.
The ``matmul`` row times numpy's integer product and ``matmul_c`` the
compiled loop; the dispatcher uses the compiled loop only where the integer
product could overflow.

Usage:
    python3 benchmarks/bench_kernels.py --sizes 16 32 64 --repeat 5
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from barcodebases import PrimeField, available_backends, comp_pers, use_backend
from barcodebases._kernels import _fastfp, _reference, rank, rref
from barcodebases.oracle import random_module


def _median_time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def run(sizes, repeat: int, prime: int, seed: int) -> list[tuple[str, int, dict]]:
    fld = PrimeField(prime)
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        a = rng.integers(0, prime, size=(n, n), dtype=np.int64)
        b = rng.integers(0, prime, size=(n, n), dtype=np.int64)
        module = random_module(seed, max_dim=n, field=fld, length=4, dims=[n] * 5)
        cases = {
            "rank": lambda: rank(a.copy(), fld),
            "rref": lambda: rref(a.copy(), fld),
            "matmul": lambda: _reference.matmul(a, b, fld),
            "matmul_c": lambda: _fastfp.matmul(a, b, prime) if _fastfp else None,
            "comp_pers": lambda: comp_pers(module),
        }
        for name, fn in cases.items():
            timings = {}
            for backend in available_backends():
                with use_backend(backend):
                    timings[backend] = _median_time(fn, repeat)
            rows.append((name, n, timings))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--prime", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    backends = available_backends()
    print(f"{'kernel':<10} {'n':>4} " + " ".join(f"{b + ' (ms)':>15}" for b in backends) + "   speedup")
    for name, n, timings in run(args.sizes, args.repeat, args.prime, args.seed):
        cells = " ".join(f"{timings[b] * 1e3:>15.3f}" for b in backends)
        speedup = timings["python"] / timings["compiled"] if "compiled" in timings else 1.0
        print(f"{name:<10} {n:>4} {cells} {speedup:>8.1f}x")


if __name__ == "__main__":
    main()
