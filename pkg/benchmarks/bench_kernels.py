"""Compare the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from zsumsep import kernels
from zsumsep.group import parse_group, tables

CASES = [
    ("longest_zsf", "C2xC2xC2xC2"),
    ("longest_zsf", "C4xC4"),
    ("longest_zsf", "C5xC5"),
    ("zsf_atoms", "C8xC8"),
    ("zsf_atoms", "C12xC12"),
    ("bfs_distances", "C64xC64"),
]


def run_case(kind, G, backend):
    tab = tables(G)
    nonzero = list(range(1, tab.order))
    if kind == "longest_zsf":
        return kernels.longest_zsf(tab, nonzero, 64, backend)
    if kind == "zsf_atoms":
        # rank + 1 generic elements, as in the separating search
        sup = [tab.order // 2 + 1, 1, G.factors[-1]]
        return kernels.zsf_atoms(tab, sorted(sup), 64, backend)
    return kernels.bfs_distances(tab, [1, G.factors[-1], G.factors[-1] + 1], backend)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = sorted(kernels.BACKENDS)
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':<14} {'group':<12} " + " ".join(f"{b + ' ms':>12}" for b in backends) + "  speedup")
    for kind, spec in CASES:
        G = parse_group(spec)
        times, outs = {}, {}
        for b in backends:
            times[b], outs[b] = best_of(lambda: run_case(kind, G, b), args.repeat)
        if len({repr(o) for o in outs.values()}) != 1:
            raise SystemExit(f"backends disagree on {kind} {spec}")
        speed = times["python"] / times["cython"] if "cython" in times and times["cython"] else float("nan")
        cols = " ".join(f"{times[b] * 1000:12.2f}" for b in backends)
        print(f"{kind:<14} {spec:<12} {cols}  {speed:6.1f}x")


if __name__ == "__main__":
    main()
