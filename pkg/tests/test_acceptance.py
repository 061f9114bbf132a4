"""Acceptance suite.  Every criterion is an exact equality except the two
runtime bounds (60 s for criterion 1, 300 s for criterion 9).

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import io
import json
import random
import time

import pytest

from interhom.chain import build_chain_complex
from interhom.cli import run
from interhom.complex import InteractionSpace, make_complex
from interhom.homology import (
    betti,
    cohomology_betti,
    integer_homology,
    interaction_euler,
    les_check,
    wu_characteristic,
)
from interhom.linalg import GF, QQ, SparseMatrix
from interhom.maps import InteractionMap, induced_homology_map, validate_map
from interhom.pointcloud import LabeledPointCloud, ScaleSweep, betti_curve, vietoris_rips

from oracles import (
    brute_wu,
    dense_rank,
    hollow_triangle,
    interval,
    ordinary_homology,
    random_bijection,
    random_complex,
    random_map_pair,
    random_space,
    random_sub,
    rp2,
)

D2_SECONDS = 60.0
PIPELINE_SECONDS = 300.0
POINT = make_complex([[0]])


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def spaces(seed, count, max_simplices):
    rng = random.Random(seed)
    return [random_space(rng, rng.choice([1, 2, 3]), max_simplices) for _ in range(count)]


@criterion(1, "d^2 = 0 on 200 random spaces in under 60 s")
def test_d_squared_suite():
    start = time.perf_counter()
    for S in spaces(101, 200, 30):
        cc = build_chain_complex(S)
        for p in range(2, len(cc.bases)):
            assert (cc.boundary(p - 1) @ cc.boundary(p)).is_zero()
    assert time.perf_counter() - start < D2_SECONDS


@criterion(2, "n=1 matches ordinary simplicial homology")
def test_trivial_covering_oracle():
    rng = random.Random(202)
    complexes = [random_complex(rng) for _ in range(50)]
    for K in complexes:
        b, tors = ordinary_homology(K)
        S = InteractionSpace.self_covering(K, 1)
        z = integer_homology(S)
        assert betti(S).betti == b == z.betti
        assert z.torsion == tors
    hollow = InteractionSpace.self_covering(hollow_triangle(), 1)
    assert betti(hollow).betti == [1, 1]
    proj = integer_homology(InteractionSpace.self_covering(rp2(), 1))
    assert proj.betti[0] == 1 and proj.torsion[1] == [2]
    assert (proj.betti, proj.torsion) == ordinary_homology(rp2())


@criterion(3, "Wu identity on 50 random complexes and fixtures")
def test_wu_identity():
    rng = random.Random(303)
    for K in [random_complex(rng, max_simplices=25) for _ in range(50)]:
        S = InteractionSpace.self_covering(K, 2)
        b = betti(S, None, QQ).betti
        alternating = sum((-1) ** p * x for p, x in enumerate(b))
        assert wu_characteristic(K) == alternating == interaction_euler(S) == brute_wu(K)
    for K, expected in ((POINT, 1), (interval(), -1), (hollow_triangle(), 0)):
        assert wu_characteristic(K) == expected
        assert interaction_euler(InteractionSpace.self_covering(K, 2)) == expected


@criterion(4, "cohomology dimensions equal Betti numbers over Q and GF(2)")
def test_duality():
    for S in spaces(404, 50, 30):
        for field in (QQ, GF(2)):
            assert cohomology_betti(S, None, field).betti == betti(S, None, field).betti


@criterion(5, "long exact sequence exact up to p_max = 4 on 30 pairs")
def test_les_exactness():
    rng = random.Random(505)
    for k in range(30):
        S = random_space(rng, rng.choice([1, 2, 3]), 30)
        sub = random_sub(rng, S)
        report = les_check(S, sub, 4, QQ if k % 2 == 0 else GF(2))
        assert report.exact
        for node in report.nodes:
            assert node["image_rank"] == node["kernel_dim"]


@criterion(6, "identity induces identity and homology is functorial")
def test_functoriality():
    rng = random.Random(606)
    for _ in range(20):
        f, g = random_map_pair(rng)
        gf = g.compose(f)
        assert validate_map(f).valid and validate_map(g).valid and validate_map(gf).valid
        for p in range(max(f.source.top_degree, 0) + 1):
            lhs = induced_homology_map(gf, p)
            rhs = induced_homology_map(g, p) @ induced_homology_map(f, p)
            assert lhs == rhs
        for S in (f.source, f.target, g.target):
            ident = InteractionMap.identity(S)
            for p in range(max(S.top_degree, 0) + 1):
                h = induced_homology_map(ident, p)
                assert h == SparseMatrix.identity(h.nrows)


def _invariants(S):
    z = integer_homology(S)
    return betti(S).betti, z.torsion, interaction_euler(S), wu_characteristic(S.total)


@criterion(7, "invariants unchanged under 20 vertex relabelings per fixture")
def test_relabeling_invariance():
    rng = random.Random(707)
    fixtures = [
        InteractionSpace.self_covering(POINT, 2),
        InteractionSpace.self_covering(interval(), 2),
        InteractionSpace.self_covering(hollow_triangle(), 1),
        InteractionSpace.self_covering(hollow_triangle(), 2),
        InteractionSpace.self_covering(rp2(), 1),
        InteractionSpace.from_parts([make_complex([[0, 1, 2]]), make_complex([[1, 2], [2, 3]])]),
    ]
    for S in fixtures:
        expected = _invariants(S)
        for _ in range(20):
            T = S.relabel(random_bijection(rng, S.total.vertices, pool=100))
            assert _invariants(T) == expected


@criterion(8, "CLI betti on the interval self covering gives [0, 1, 0]")
def test_interval_end_to_end(tmp_path):
    # dense oracle: ranks of the hand-written boundary matrices
    d1 = [[-1, 0, -1, 0], [0, 1, 0, 1]]
    d2 = [[-1], [1], [1], [-1]]
    r1, r2 = dense_rank(d1), dense_rank(d2)
    oracle = [2 - r1, 4 - r1 - r2, 1 - r2]
    assert oracle == [0, 1, 0]

    path = tmp_path / "interval_self.json"
    path.write_text(json.dumps({"complex": [[0, 1]], "parts": [[[0, 1]], [[0, 1]]]}))
    for field in ("q", "z"):
        out = io.StringIO()
        assert run(["betti", "--space", str(path), "--pmax", "2", "--field", field], out) == 0
        doc = json.loads(out.getvalue())
        assert doc["betti"] == oracle
        assert doc["torsion"] == [[], [], []]


def _curve(rows):
    table = {}
    for r in rows:
        table.setdefault(r.scale, []).append(r.betti)
    return table


@criterion(9, "point-cloud pipeline fixtures, Wu identity and 100-point runtime")
def test_pipeline():
    pair = LabeledPointCloud.unlabeled([(0,), (1,)])
    table = _curve(betti_curve(pair, ScaleSweep([0.5, 1.5], 2, "self:2")))
    assert list(table.values()) == [[2, 0, 0], [0, 1, 0]]

    rng = random.Random(909)
    for k in range(5):
        pts = [(rng.random(), rng.random()) for _ in range(15)]
        cloud = LabeledPointCloud(pts, [{j % (k + 2)} for j in range(15)])
        rows = betti_curve(cloud, ScaleSweep([0.1, 0.25, 0.5, 1.5], 2, "by_label"))
        assert all(r.betti == 0 for r in rows)

    pts = [(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(12)]
    cloud = LabeledPointCloud.unlabeled(pts)
    scales = [1, 2, 3]
    for r, bs in _curve(betti_curve(cloud, ScaleSweep(scales, None, "self:2", 2))).items():
        assert sum((-1) ** p * b for p, b in enumerate(bs)) == wu_characteristic(
            vietoris_rips(pts, r, 2))

    big = LabeledPointCloud.unlabeled([(rng.random(), rng.random()) for _ in range(100)])
    sweep = ScaleSweep([f"0.{k:02d}" for k in range(2, 22, 2)], 2, "self:2", 2)
    start = time.perf_counter()
    rows = betti_curve(big, sweep)
    assert len(rows) == 10 * 3
    assert time.perf_counter() - start < PIPELINE_SECONDS
