"""Time the numba kernels against their fallbacks.

    python3 benchmarks/bench_kernels.py [--n 24] [--matrices 2000]

Jacobi: the compiled solver against the same code run as plain Python.
Grid scan: the compiled loops against the chunked numpy path that is used
when QPD_DISABLE_NUMBA=1. Compilation happens before any timing.
"""
import argparse
import time

import numpy as np

from quantum_pd import PayoffTable, build_tensor_full
from quantum_pd import kernels
from quantum_pd._accel import HAS_NUMBA
from quantum_pd.oracle import scan_eps, sphere_grid
from quantum_pd.tensor import response_matrices


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def bench_jacobi(count, repeat):
    rng = np.random.default_rng(0)
    mats = rng.normal(size=(count, 4, 4))
    mats = mats + mats.transpose(0, 2, 1)
    tol = kernels.OFF_TOL

    def run(fn):
        return lambda: [fn(m, tol * max(1.0, np.linalg.norm(m)), kernels.MAX_SWEEPS)[0] for m in mats]

    kernels.jacobi_eigh(mats[0], tol, kernels.MAX_SWEEPS)
    t_py, w_py = best_of(run(kernels.jacobi_eigh_py), repeat)
    t_jit, w_jit = best_of(run(kernels.jacobi_eigh), repeat)
    diff = max(np.abs(np.sort(a) - np.sort(b)).max() for a, b in zip(w_py, w_jit))
    return t_py, t_jit, diff


def bench_scan(n, repeat):
    tensor = build_tensor_full(PayoffTable(3, 1, 5, 0), 0.3)
    pts = sphere_grid(4, n).points
    feat = kernels.packed_outer(pts)
    pmat = kernels.packed_upper(response_matrices(tensor, pts))
    eps = scan_eps(n)

    def numpy_path():
        best = kernels.best_payoffs_numpy(feat, pmat)
        return kernels.scan_pairs_numpy(feat, pmat, best, eps)

    def loop_path():
        best = kernels.best_payoffs_loop(feat, pmat)
        return kernels.scan_pairs_loop(feat, pmat, best, eps)

    t_np, pairs_np = best_of(numpy_path, repeat)
    loop_path()
    t_jit, pairs_jit = best_of(loop_path, repeat)
    same = {tuple(p) for p in pairs_np} == {tuple(p) for p in pairs_jit}
    return len(pts), t_np, t_jit, len(pairs_np), same


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=24, help="grid resolution for the scan")
    parser.add_argument("--matrices", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if not HAS_NUMBA:
        print("numba unavailable or disabled; nothing to compare")
        return
    t_py, t_jit, diff = bench_jacobi(args.matrices, args.repeat)
    print(f"jacobi x{args.matrices} (4x4): python {t_py:.3f}s  numba {t_jit:.4f}s  "
          f"speedup {t_py / t_jit:.0f}x  max eigenvalue diff {diff:.1e}")
    size, t_np, t_jit, count, same = bench_scan(args.n, args.repeat)
    print(f"scan n={args.n} ({size} points): numpy {t_np:.2f}s  numba {t_jit:.2f}s  "
          f"ratio {t_np / t_jit:.2f}  pairs {count}  identical {same}")


if __name__ == "__main__":
    main()
