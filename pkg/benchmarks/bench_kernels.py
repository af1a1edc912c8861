"""Time the hot kernels under every available backend.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per (kernel, backend) with the best wall time and the
speedup of the compiled backend over the pure-Python one.
"""

import argparse
import sys
import timeit

import numpy as np

from hankelnorm import _kernels
from hankelnorm.domains import ConformalDomain
from hankelnorm.spaces import monomial_norms


def workloads():
    rng = np.random.default_rng(0)
    c = rng.normal(size=9) + 1j * rng.normal(size=9)
    c[0] = 0
    D = monomial_norms(0.5, 256).values
    a = rng.normal(size=200) + 1j * rng.normal(size=200)
    Dq = monomial_norms(0.5, 200 + 2 * 8 + 1).values
    p = np.array([2.0, 2.0], dtype=complex)
    boundary = ConformalDomain.builtin("example1").boundary
    xs = np.linspace(-1.2, 3.2, 400)
    ys = np.linspace(-2.7, 2.7, 400)
    inside = np.zeros((60, 60), dtype=bool)
    inside[1:-1, 1:-1] = True

    def sor(k):
        v = np.zeros((60, 60))
        k.sor_solve(v, inside, 1 / 60, 2.0, 1.9, 1e-8, 10**6)

    return {
        "power_recurrence (order 65536)": lambda k: k.power_recurrence(p, 0.5, 65536),
        "hankel_matrix (dim 128, K 8)": lambda k: k.hankel_matrix(c, D, 128),
        "hankel_quadratic (N 200, K 8)": lambda k: k.hankel_quadratic(a, c, Dq),
        "grid_winding (400x400, 4096 edges)": lambda k: k.grid_winding(xs, ys, boundary.real, boundary.imag),
        "sor_solve (60x60)": sor,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = _kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; timing the Python fallback only", file=sys.stderr)
    print(f"{'kernel':40s} {'backend':8s} {'best [s]':>10s} {'speedup':>8s}")
    for name, work in workloads().items():
        times = {}
        for bname, mod in backends.items():
            work(mod)  # warm-up
            times[bname] = min(timeit.repeat(lambda: work(mod), number=1, repeat=args.repeat))
        for bname, t in times.items():
            speed = times["python"] / t if bname != "python" else 1.0
            print(f"{name:40s} {bname:8s} {t:10.4f} {speed:7.1f}x")


if __name__ == "__main__":
    main()
