"""Benchmark the pure-Python kernel against the compiled extension.

Runs the suction experiment for a fixed number of steps with each available
backend and reports steps per second.  Usage:

    python benchmarks/bench_kernels.py [--N 400] [--steps 500]
"""

import argparse
import time
from dataclasses import replace

from aspir8 import build_experiment, default_config, step
from aspir8.kernels import available_backends


def bench(kernel, N, n_steps):
    cfg = replace(default_config("suction"), N=N)
    state, bc, params, cath = build_experiment(cfg)
    start = time.perf_counter()
    for _ in range(n_steps):
        state, _ = step(state, bc, params, cath, kernel=kernel)
    elapsed = time.perf_counter() - start
    return elapsed, state


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--N", type=int, default=400, help="cells per segment")
    parser.add_argument("--steps", type=int, default=500, help="steps to run")
    args = parser.parse_args()

    backends = available_backends()
    results = {}
    for name, kernel in backends.items():
        elapsed, state = bench(kernel, args.N, args.steps)
        results[name] = elapsed
        print(f"{name:>10}: {args.steps} steps, N={args.N} in {elapsed:.3f} s "
              f"({args.steps / elapsed:.0f} steps/s), reached t={state.t:.6f} s")
    if "python" in results and "compiled" in results:
        print(f"   speedup: {results['python'] / results['compiled']:.1f}x "
              f"(compiled over python)")


if __name__ == "__main__":
    main()
