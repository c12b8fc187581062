"""Regenerate tests/data/extremal_golden.json.

Values come from ``qplab.lab.extremal_max_edges``.  Each record is checked
against an integer program over the crossing graph (maximize the number of
kept segments subject to at most k-1 kept in every k-clique), with the
lexicographically smallest witness recovered by fixing segments one at a
time.  Any disagreement aborts without writing.
"""
import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from qplab.lab import complete_crossing_matrix, convex_points, extremal_max_edges, random_points

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "extremal_golden.json"
RANDOM_SEEDS = (0, 1)


def k_cliques(adj, k):
    m = len(adj)
    out = []

    def grow(cur, start):
        if len(cur) == k:
            out.append(tuple(cur))
            return
        for v in range(start, m):
            if all(adj[u][v] for u in cur):
                grow(cur + [v], v + 1)

    grow([], 0)
    return out


def _solve(m, cliques, k, fixed_one):
    c = -np.ones(m)
    lb = np.zeros(m)
    lb[list(fixed_one)] = 1
    cons = []
    if cliques:
        A = np.zeros((len(cliques), m))
        for r, cl in enumerate(cliques):
            A[r, list(cl)] = 1
        cons.append(LinearConstraint(A, -np.inf, k - 1))
    res = milp(c, constraints=cons, integrality=np.ones(m), bounds=Bounds(lb, np.ones(m)))
    if not res.success:
        return None
    return int(round(-res.fun))


def ilp_oracle(points, k):
    segs, adj = complete_crossing_matrix(points)
    m = len(segs)
    cliques = k_cliques(adj.tolist(), k)
    best = _solve(m, cliques, k, ())
    chosen = []
    for e in range(m):
        val = _solve(m, cliques, k, chosen + [e])
        if val is not None and val == best:
            chosen.append(e)
        if len(chosen) == best:
            break
    return best, [list(segs[e]) for e in chosen]


def point_sets():
    for n in range(4, 10):
        yield f"convex{n}", convex_points(n)
    for n in range(5, 10):
        for seed in RANDOM_SEEDS:
            yield f"random{n}s{seed}", random_points(n, seed)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(OUT))
    args = ap.parse_args(argv)
    records = []
    for name, pts in point_sets():
        for k in (2, 3, 4):
            rec = {"name": name, **extremal_max_edges(pts, k).to_json()}
            best, witness = ilp_oracle(pts, k)
            if best != rec["max_edges"] or witness != rec["witness"]:
                print(f"oracle disagreement on {name} k={k}: search {rec['max_edges']} "
                      f"{rec['witness']} vs ilp {best} {witness}", file=sys.stderr)
                return 1
            records.append(rec)
            print(f"{name} k={k}: {rec['max_edges']}", file=sys.stderr)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps({"records": records}, sort_keys=True, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
