"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import importlib
import time

from latin_chroma.graph import build_graph
from latin_chroma.squares import circulant, random_square


def _init(n):
    init = [-1] * (n * n)
    init[:n] = range(n)
    return init


def workloads():
    c6 = build_graph(circulant(6)).adjacency_lists()
    r7 = random_square(7, 3)
    r7n = build_graph(r7).adjacency_lists()
    return [
        ("kcolor Z6 k=7 (exhaust)", lambda k: k.kcolor(c6, 7, _init(6))),
        ("kcolor random 7 k=8", lambda k: k.kcolor(r7n, 8, _init(7))),
        ("transversals Z9", lambda k: k.transversals(circulant(9).rows(), 0, False)),
        ("max partial Z10", lambda k: k.max_partial_transversal(circulant(10).rows())),
        ("tabucol Z6 k=7, 3000 it", lambda k: k.tabucol(c6, 7, [v % 7 for v in range(36)], 3000)),
    ]


def bench(fn, mod, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(mod)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = importlib.import_module("latin_chroma._pykernels")
    try:
        cy = importlib.import_module("latin_chroma._ckernels")
    except ImportError:
        cy = None
        print("compiled extension not built; timing the fallback only")
    print(f"{'workload':<28} {'python s':>10} {'cython s':>10} {'speedup':>8}  same")
    for name, fn in workloads():
        tp, op = bench(fn, py, args.repeat)
        if cy is None:
            print(f"{name:<28} {tp:>10.4f}")
            continue
        tc, oc = bench(fn, cy, args.repeat)
        print(f"{name:<28} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x  {op == oc}")


if __name__ == "__main__":
    main()
