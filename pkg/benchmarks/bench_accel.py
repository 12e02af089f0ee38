"""Compare the compiled kernels against the pure-numpy fallback.

The kernel backend is chosen once, at import time, from the
GUP_TUNNEL_DISABLE_NUMBA environment variable.  Run without arguments
this script therefore launches itself twice as a subprocess, once per
backend, times the same workload in each, and prints a comparison:

    python3 benchmarks/bench_accel.py

The workload is the full adaptive engine (classic and deformed barrier
integrals) on the three built-in models, so the numbers reflect end-to-end
gains rather than microkernel throughput.  First-call JIT compilation is
excluded by a warmup pass.
"""

import argparse
import os
import subprocess
import sys
import time


def build_problems():
    from gup_tunnel.constants import JOULES_PER_MEV
    from gup_tunnel.models import alpha, cosmo, gravrad

    uranium = alpha.AlphaDecayParams(z=90, r1=9.3e-15, energy=4.2 * JOULES_PER_MEV)
    nucleation = cosmo.CosmogenesisParams.with_a0_sq_equal_g()
    binary = gravrad.GravRadParams(
        mass=1.0, m2=0.5, r_h=1.0, turn_radius=2.0, r2=3.0, g_newton=1.0, hbar=1.0
    )
    return [
        (alpha.as_barrier_problem(uranium), 1e36),
        (cosmo.as_barrier_problem(nucleation), 1e-2),
        (gravrad.as_barrier_problem(binary), 1e-2),
    ]


def run_workload(repeats, inner):
    from gup_tunnel import BACKEND, wkb

    problems = build_problems()

    def one_pass():
        for problem, beta in problems:
            wkb.gamma_classic(problem)
            wkb.gamma_gup_exact(problem, beta)
            wkb.delta_gamma_first_order(problem, beta)

    one_pass()  # warmup: JIT compilation, caches

    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        for _ in range(inner):
            one_pass()
        best = min(best, (time.perf_counter() - started) / inner)
    return BACKEND, best


def run_child(disable_numba, repeats, inner):
    env = dict(os.environ)
    env["GUP_TUNNEL_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child",
         "--repeats", str(repeats), "--inner", str(inner)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    backend, seconds = proc.stdout.split()
    return backend, float(seconds)


def main():
    parser = argparse.ArgumentParser(
        description="benchmark the kernel backends on the built-in models"
    )
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions, best is kept (default 5)")
    parser.add_argument("--inner", type=int, default=20,
                        help="engine passes per repetition (default 20)")
    parser.add_argument("--child", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child:
        backend, best = run_workload(args.repeats, args.inner)
        print(f"{backend} {best:.6f}")
        return

    results = {}
    for disable in (False, True):
        backend, seconds = run_child(disable, args.repeats, args.inner)
        results[backend] = seconds
        print(f"{backend:>6}: {seconds * 1e3:8.2f} ms per engine pass")
    if "numba" in results and "numpy" in results:
        print(f"speedup: {results['numpy'] / results['numba']:.2f}x")
    else:
        print("note: numba unavailable, both runs used the numpy fallback")


if __name__ == "__main__":
    main()
