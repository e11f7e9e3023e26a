"""Compare the numba and numpy kernel backends on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat R] [--seed S]

numba timings exclude the first (compiling) call.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cyclepack import kernels
from cyclepack.harness import gnp_graphs


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(seed: int):
    sigma_graphs = list(gnp_graphs(24, 0.3, 40, seed))
    pack_graphs = list(gnp_graphs(10, 0.3, 20, seed))
    masks6 = np.arange(1 << 15, dtype=np.int64)
    rng = np.random.default_rng(seed)
    masks9 = rng.integers(0, 1 << 36, size=20000, dtype=np.int64)
    return {
        "sigma_5, 40 graphs on 24 vertices": lambda: [kernels.sigma(g, 5) for g in sigma_graphs],
        "packing number (cap 3), 20 graphs on 10 vertices": lambda: [kernels.packing_number(g, 3) for g in pack_graphs],
        "batch stats, all 32768 graphs on 6 vertices": lambda: kernels.batch_stats(6, masks6, 5, 2),
        "batch stats, 20000 random graphs on 9 vertices": lambda: kernels.batch_stats(9, masks9, 5, 2),
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    jobs = workloads(args.seed)
    results: dict[str, dict[str, float]] = {name: {} for name in jobs}
    for b in backends:
        kernels.set_backend(b)
        for name, fn in jobs.items():
            if b == "numba":
                fn()  # compile
            results[name][b] = _best(fn, args.repeat)

    print(f"{'workload':52s} " + " ".join(f"{b:>10s}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    for name, row in results.items():
        cells = " ".join(f"{row[b]:9.4f}s" for b in backends)
        extra = f"  {row['numpy'] / row['numba']:8.1f}x" if len(backends) == 2 else ""
        print(f"{name:52s} {cells}{extra}")


if __name__ == "__main__":
    main()
