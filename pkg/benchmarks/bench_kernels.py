"""Time the pure-Python and compiled kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Every case checks that all backends return the same answer before timing.
"""
import argparse
import random
import time
from itertools import combinations

import numpy as np

from qplab import kernels
from qplab.dsseq import up_template
from qplab.lab import complete_crossing_matrix, convex_points, random_points


def random_graph(n, p, seed):
    rng = random.Random(seed)
    adj = np.zeros((n, n), dtype=np.uint8)
    edges = []
    for i, j in combinations(range(n), 2):
        if rng.random() < p:
            adj[i, j] = adj[j, i] = 1
            edges.append((i, j))
    return adj, edges


def cases():
    adj, _ = random_graph(120, 0.5, 1)
    yield "max_clique n=120 p=0.5", lambda m: m.max_clique(adj)
    _, cross = complete_crossing_matrix(convex_points(12))
    yield "max_clique convex K12 crossing graph", lambda m: m.max_clique(cross)
    _, edges = random_graph(18, 0.4, 2)
    yield "min_bisection n=18", lambda m: m.min_bisection(18, edges, 6, 12)
    rng = random.Random(3)
    seq = [rng.randint(1, 7) for _ in range(40)]
    tpl = up_template(4, 3)
    yield "first_template_match up(4,3) len 40", lambda m: m.first_template_match(seq, tpl, 4, sorted(set(seq)))
    _, free = complete_crossing_matrix(convex_points(8))
    yield "max_k_free_subset convex 8 k=3", lambda m: m.max_k_free_subset(free, 3)
    _, free = complete_crossing_matrix(random_points(8, 0))
    yield "max_k_free_subset random 8 k=4", lambda m: m.max_k_free_subset(free, 4)


def best_time(fn, repeat):
    out = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = kernels.backends()
    names = [m.BACKEND for m in mods]
    print(f"{'case':<40}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(mods) > 1 else ""))
    for label, fn in cases():
        answers = [fn(m) for m in mods]
        if any(a != answers[0] for a in answers):
            raise SystemExit(f"backends disagree on {label}")
        times = [best_time(lambda m=m: fn(m), args.repeat) for m in mods]
        row = f"{label:<40}" + "".join(f"{t * 1000:>10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[-1]:>11.1f}x"
        print(row)
    if len(mods) == 1:
        print("compiled backend not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
