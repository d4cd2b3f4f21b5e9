"""Compare the numba kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel rows time each backend in-process on the same input. The end-to-end
rows run the intersection-lattice oracle for L(Triv) in a fresh interpreter,
once per backend, so JIT compilation is included there.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from cherednik import _kernels as K

E2E = """
import time
from cherednik.combinatorics import Params, RPartition
from cherednik.graph import build_gamma
from cherednik.oracle import intersection_lattice
p = Params.equal({r}, {n})
g = build_gamma(p)
t = time.perf_counter()
intersection_lattice(g, RPartition.trivial({r}, {n}))
print(time.perf_counter() - t)
"""


def best(fn, repeat):
    fn()  # warm-up, also triggers JIT compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_rows(n, degree, repeat):
    rng = np.random.default_rng(0)
    A = K.np_compositions(n, degree)
    am, winv, w = K.np_sort_rows(A)
    m = 12
    kind, t1, t2 = rng.integers(1, 3, m), rng.integers(1, n + 1, m), rng.integers(1, n + 1, m)
    k = rng.integers(0, 4, m)
    r = 3
    beta, ct = rng.integers(0, r, n), rng.integers(-3, 4, n)
    dtable = rng.integers(-5, 6, (r, r))
    cases = {
        "compositions": lambda b: K.compositions(n, degree, b),
        "sort_rows": lambda b: K.sort_rows(A, b),
        "masks": lambda b: K.masks(am, winv, kind, t1, t2, k, b),
        "spectra": lambda b: K.spectra(A, w, beta, ct, dtable, 2, 6, r, b),
    }
    for name, fn in cases.items():
        row = {b: best(lambda: fn(b), repeat) for b in K.available_backends()}
        yield name, len(A), row


def e2e(r, n, backend):
    env = dict(os.environ, CHEREDNIK_NO_NUMBA="1" if backend == "numpy" else "0")
    out = subprocess.run([sys.executable, "-c", E2E.format(r=r, n=n)], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = K.available_backends()
    print(f"backends: {', '.join(backends)}; CHEREDNIK_THREADS={os.environ.get('CHEREDNIK_THREADS', 'unset')}")
    print(f"{'kernel':<14}{'n':>3}{'deg':>5}{'rows':>10}" + "".join(f"{b + ' (ms)':>14}" for b in backends) + f"{'speedup':>10}")
    for n, degree in [(6, 8), (8, 8), (10, 7)]:
        for name, rows, row in kernel_rows(n, degree, args.repeat):
            speed = row["numpy"] / row["numba"] if "numba" in row else 1.0
            cols = "".join(f"{row[b] * 1e3:>14.2f}" for b in backends)
            print(f"{name:<14}{n:>3}{degree:>5}{rows:>10}{cols}{speed:>9.1f}x")
    print()
    print("intersection lattice of L(Triv), fresh process (s):")
    for r, n in [(2, 6), (3, 6), (4, 4)]:
        times = {b: e2e(r, n, b) for b in backends}
        print(f"  G({r},1,{n}): " + ", ".join(f"{b} {t:.2f}" for b, t in times.items()))


if __name__ == "__main__":
    main()
