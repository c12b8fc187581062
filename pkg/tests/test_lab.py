import json
import math
from itertools import combinations
from math import comb
from pathlib import Path

import pytest

from qplab.bounds import evaluate_bound
from qplab.docio import to_document
from qplab.drawing import crossing_count, is_k_quasiplanar
from qplab.errors import SizeLimit
from qplab.geometry import Point
from qplab.lab import (GeneratorSpec, complete_crossing_matrix, convex_points, extremal_max_edges,
                       generate, make_k_quasiplanar, parse_points, random_points)

from oracles import extremal_brute

GOLDEN = Path(__file__).parent / "data" / "extremal_golden.json"


def test_convex_counts():
    assert crossing_count(generate(GeneratorSpec("convex-complete", n=4))) == 1
    assert crossing_count(generate(GeneratorSpec("convex-complete", n=5))) == 5
    for n in range(6, 11):
        assert crossing_count(generate(GeneratorSpec("convex-complete", n=n))) == comb(n, 4)


def test_convex_points_prefix_property():
    assert convex_points(7) == convex_points(10)[:7]


@pytest.mark.parametrize("kind", ["random-geometric", "random-x-monotone", "convex-complete"])
def test_generation_is_deterministic(kind):
    spec = GeneratorSpec(kind, n=7, seed=11)
    assert to_document(generate(spec)) == to_document(generate(spec))
    assert generate(spec).report.valid


def test_x_monotone_generator():
    for seed in range(5):
        d = generate(GeneratorSpec("random-x-monotone", n=7, seed=seed))
        assert d.report.x_monotone
        assert len({v.point.x for v in d.vertices}) == d.n


def test_unknown_kind():
    with pytest.raises(ValueError):
        generate(GeneratorSpec("spiral"))
    with pytest.raises(ValueError):
        generate(GeneratorSpec("figure-fixture", name="figure9"))


def test_make_k_quasiplanar():
    d = make_k_quasiplanar(generate(GeneratorSpec("convex-complete", n=8)), 3)
    assert is_k_quasiplanar(d, 3)[0]


def test_extremal_examples():
    r = extremal_max_edges(convex_points(5), 3)
    assert r.max_edges == 10 and len(r.witness) == 10
    assert extremal_max_edges(convex_points(4), 2).max_edges == 5
    r6 = extremal_max_edges(convex_points(6), 3)
    assert r6.max_edges < 15
    with pytest.raises(SizeLimit):
        extremal_max_edges(convex_points(10), 3)
    with pytest.raises(ValueError):
        extremal_max_edges(convex_points(4), 1)
    with pytest.raises(ValueError):
        extremal_max_edges([Point(0, 0), Point(1, 1), Point(2, 2)], 2)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_convex_k2_is_triangulation(n):
    assert extremal_max_edges(convex_points(n), 2).max_edges == 2 * n - 3


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_convex_matches_closed_form(n):
    # 2(k-1)n - C(2k-1, 2) on convex position
    for k in (3, 4):
        if n >= 2 * k - 1:
            assert extremal_max_edges(convex_points(n), k).max_edges == 2 * (k - 1) * n - comb(2 * k - 1, 2)


@pytest.mark.parametrize("seed", range(6))
def test_extremal_matches_subset_oracle(seed):
    pts = random_points(5, seed, coord_range=30)
    segs, adj = complete_crossing_matrix(pts)
    pairs = [(i, j) for i, j in combinations(range(len(segs)), 2) if adj[i, j]]
    for k in (2, 3):
        r = extremal_max_edges(pts, k)
        size, sub = extremal_brute(len(segs), pairs, k)
        assert r.max_edges == size
        assert r.witness == tuple(segs[i] for i in sub)


@pytest.mark.parametrize("seed", range(4))
def test_extremal_properties(seed):
    pts = random_points(7, seed)
    vals = []
    for k in (2, 3, 4, 5):
        r = extremal_max_edges(pts, k)
        assert is_k_quasiplanar(r.drawing(), k)[0]
        vals.append(r.max_edges)
    assert vals == sorted(vals) and vals[-1] <= comb(7, 2)


def test_fixture_edges_below_alpha_tower():
    for seed in range(5):
        d = make_k_quasiplanar(generate(GeneratorSpec("random-geometric", n=10, seed=seed, edge_prob=0.8)), 5)
        assert math.log2(d.m) <= evaluate_bound("alpha_tower", d.n, 5).log2


def test_golden_records_well_formed():
    recs = json.loads(GOLDEN.read_text())["records"]
    keys = {(r["name"], r["k"]) for r in recs}
    assert len(keys) == len(recs)
    assert {("convex5", 3), ("convex4", 2)} <= keys
    for r in recs:
        pts = parse_points(r["points"])
        assert len(pts) <= 9 and r["k"] in (2, 3, 4)
        assert len(r["witness"]) == r["max_edges"]
