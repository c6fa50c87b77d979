"""Compare the numba kernels against the pure-numpy fallback.

Runs the two hot paths — the classical-value enumeration kernel and the
Hermitian Jacobi eigensolver — under both backends and prints a timing
table. The fallback is selected by re-executing this script with
ZNLCS_PURE_NUMPY=1, so each process imports exactly one backend.

Usage: python benchmarks/bench_backends.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _run_workload(repeat: int) -> dict:
    import numpy as np

    from znlcs._backend import backend_name
    from znlcs.bcskit import magic_square
    from znlcs.gamekit import ModNGameParams, classical_value, make_mod_n_game
    from znlcs.numerics import hermitian_eig, rng

    results = {"backend": backend_name()}

    game = make_mod_n_game(ModNGameParams(7, 0, 1))
    lcs_game = magic_square()[0].to_game()
    classical_value(game)  # warm-up (numba compilation)
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        v1, _ = classical_value(game)
        v2, _ = classical_value(lcs_game)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    results["classical_value_seconds"] = best
    results["classical_values"] = [v1, v2]

    gen = rng(7)
    M = gen.normal(size=(60, 60)) + 1j * gen.normal(size=(60, 60))
    H = M + M.conj().T
    hermitian_eig(H)  # warm-up
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        eig = hermitian_eig(H)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    results["jacobi_eig_seconds"] = best
    results["eig_check"] = float(np.linalg.norm(
        H @ eig.eigenvectors - eig.eigenvectors @ np.diag(eig.eigenvalues)))
    return results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--worker", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(_run_workload(args.repeat)))
        return 0

    rows = []
    for pure in ("0", "1"):
        env = dict(os.environ, ZNLCS_PURE_NUMPY=pure)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__),
             "--worker", "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True)
        rows.append(json.loads(out.stdout.strip().splitlines()[-1]))

    print(f"{'kernel':<24}{'numba':>12}{'pure numpy':>14}{'speedup':>10}")
    for key, label in (("classical_value_seconds", "classical value"),
                       ("jacobi_eig_seconds", "jacobi eigensolver")):
        a, b = rows[0][key], rows[1][key]
        print(f"{label:<24}{a:>11.4f}s{b:>13.4f}s{b / a:>9.1f}x")
    if rows[0]["classical_values"] != rows[1]["classical_values"]:
        print("WARNING: backends disagree on classical values")
        return 1
    print(f"classical values agree: {rows[0]['classical_values']}")
    print(f"eigendecomposition residuals: "
          f"{rows[0]['eig_check']:.2e} / {rows[1]['eig_check']:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
