"""Compare the compiled and pure-numpy fidelity kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from qstnet import _kernels_py
from qstnet.graph import complete, path, theta
from qstnet.hamiltonian import build
from qstnet.spectral import eigendecompose

try:
    from qstnet import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    yield "path(5) dE=50", path(5), {0: 50, 4: 50}, 0, 4
    yield "K12 dE=24", complete(12), {0: 24, 11: 24}, 0, 11
    yield "theta(4,5) dE=10", theta(4, 5), {0: 10, 13: 10}, 0, 13
    yield "path(64)", path(64), None, 0, 63


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=1_000_000)
    args = ap.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    else:
        print("compiled extension not built; timing the numpy kernels only")

    times = np.linspace(0.0, 500.0, args.points)
    print(f"{'case':<20}{'kernel':<14}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, g, shifts, i, j in cases():
        es = eigendecompose(build(g, shifts))
        w = es.weights(i, j)
        lam = np.ascontiguousarray(es.centered_eigenvalues)
        vals = _kernels_py.fidelity_grid(w, lam, times)
        jobs = {
            "grid": lambda k: k.fidelity_grid(w, lam, times),
            "local_max": lambda k: k.local_maxima(vals),
            "golden x200": lambda k: [k.golden_max(w, lam, 1.0 + s, 1.1 + s, 1e-12) for s in range(200)],
        }
        for kname, job in jobs.items():
            res = [best_of(lambda: job(mod), args.repeat) for _, mod in backends]
            speed = f"{res[0] / res[-1]:9.1f}x" if len(res) > 1 else ""
            print(f"{label:<20}{kname:<14}" + "".join(f"{r * 1e3:10.2f}ms" for r in res) + speed)


if __name__ == "__main__":
    main()
