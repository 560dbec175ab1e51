"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot operations behind every sweep point: applying a
single-qubit Kraus set to all qubits of a density matrix, and evaluating the
nine spin-moment expectation values. Run after building the extension:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --qubits 3 8 --repeats 2000
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ghzw_squeezing import _kernels_py
from ghzw_squeezing.channels import depolarizing_kraus
from ghzw_squeezing.collective import SpinEnsemble, _moment_operator_stack

try:
    from ghzw_squeezing import _kernels
except ImportError:
    _kernels = None


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return np.ascontiguousarray(rho / np.trace(rho).real)


def time_op(fn, repeats: int) -> float:
    fn()  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - start) / repeats


def bench_backend(impl, rho, kraus, ops, n_qubits, repeats):
    def channel():
        out = rho
        for qubit in range(n_qubits):
            out = impl.apply_single_qubit_kraus(out, kraus, qubit, n_qubits)
        return out

    def moments():
        return impl.expectations_real(rho, ops)

    return time_op(channel, repeats), time_op(moments, repeats)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--qubits", type=int, nargs="+", default=[3, 6, 10])
    parser.add_argument("--repeats", type=int, default=500)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not built; timing the numpy fallback only")
    rng = np.random.default_rng(0)
    kraus = np.ascontiguousarray(np.stack(depolarizing_kraus(0.7).operators))

    header = f"{'op':<10} {'N':>3} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in args.qubits:
        repeats = max(10, args.repeats >> max(0, 2 * (n - 3)))
        rho = random_density(rng, 1 << n)
        ops = _moment_operator_stack(SpinEnsemble(n).n_qubits)  # cached, read-only
        py_channel, py_moments = bench_backend(_kernels_py, rho, kraus, ops, n, repeats)
        if _kernels is not None:
            cy_channel, cy_moments = bench_backend(_kernels, rho, kraus, ops, n, repeats)
            print(
                f"{'channel':<10} {n:>3} {py_channel * 1e6:>10.1f}us {cy_channel * 1e6:>10.1f}us"
                f" {py_channel / cy_channel:>8.1f}x"
            )
            print(
                f"{'moments':<10} {n:>3} {py_moments * 1e6:>10.1f}us {cy_moments * 1e6:>10.1f}us"
                f" {py_moments / cy_moments:>8.1f}x"
            )
        else:
            print(f"{'channel':<10} {n:>3} {py_channel * 1e6:>10.1f}us {'-':>12} {'-':>9}")
            print(f"{'moments':<10} {n:>3} {py_moments * 1e6:>10.1f}us {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
