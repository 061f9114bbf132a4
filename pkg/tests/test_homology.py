import random

import pytest

from interhom.chain import ContainmentError
from interhom.complex import InteractionSpace, make_complex
from interhom.homology import (
    betti,
    cohomology_betti,
    integer_homology,
    interaction_euler,
    les_check,
    relative_betti,
    wu_characteristic,
)
from interhom.linalg import GF, QQ, UnsupportedRingError

from oracles import (
    brute_wu,
    dense_rank,
    hollow_triangle,
    interval,
    ordinary_homology,
    random_bijection,
    random_space,
    random_sub,
    rp2,
)

POINT = make_complex([[0]])
DISJOINT = InteractionSpace.from_parts([make_complex([[0, 1]]), make_complex([[2, 3]])])

# Interval with the two-fold self covering, written out by hand in the tuple
# order (0|0), (1|1) / (0|01), (1|01), (01|0), (01|1) / (01|01).
INTERVAL_D1 = [[-1, 0, -1, 0], [0, 1, 0, 1]]
INTERVAL_D2 = [[-1], [1], [1], [-1]]


def self2(K):
    return InteractionSpace.self_covering(K, 2)


def test_interval_dense_oracle():
    r1, r2 = dense_rank(INTERVAL_D1), dense_rank(INTERVAL_D2)
    assert (r1, r2) == (2, 1)
    assert [2 - r1, 4 - r1 - r2, 1 - r2] == [0, 1, 0]


def test_betti_examples():
    assert betti(self2(POINT), 2).betti == [1, 0, 0]
    assert betti(self2(interval()), 2).betti == [0, 1, 0]
    assert betti(InteractionSpace.self_covering(hollow_triangle(), 1)).betti == [1, 1]


def test_betti_rejects_integers():
    from interhom.linalg import ZZ
    with pytest.raises(UnsupportedRingError):
        betti(self2(POINT), 1, ZZ)


def test_integer_homology_examples():
    s = integer_homology(self2(interval()), 2)
    assert s.betti == [0, 1, 0] and s.torsion == [[], [], []]
    s = integer_homology(InteractionSpace.self_covering(rp2(), 1))
    assert s.betti == [1, 0, 0]
    assert s.torsion == [[], [2], []]
    assert integer_homology(DISJOINT, 2).betti == [0, 0, 0]


@pytest.mark.parametrize("K, expected", [(POINT, 1), (interval(), -1), (hollow_triangle(), 0)])
def test_euler_and_wu(K, expected):
    assert interaction_euler(self2(K)) == expected
    assert wu_characteristic(K) == expected
    assert brute_wu(K) == expected


def test_hollow_triangle_counts():
    from interhom.complex import enumerate_interacting_tuples
    counts = [len(enumerate_interacting_tuples(self2(hollow_triangle()), p)) for p in range(3)]
    assert counts == [3, 12, 9]


def test_cohomology_examples():
    assert cohomology_betti(self2(interval()), 2).betti == [0, 1, 0]
    assert cohomology_betti(self2(POINT), 2).betti == [1, 0, 0]
    assert cohomology_betti(DISJOINT, 2).betti == [0, 0, 0]


def test_relative_examples():
    S = self2(interval())
    assert relative_betti(S, S, 2).betti == [0, 0, 0]
    sub = self2(POINT)
    # LES: 0 -> H1(X)=1 -> H1(X,A) -> H0(A)=1 -> H0(X)=0 forces [0, 2, 0]
    assert relative_betti(S, sub, 2).betti == [0, 2, 0]
    dsub = InteractionSpace.from_parts([make_complex([[0]]), make_complex([[2]])])
    assert relative_betti(DISJOINT, dsub, 2).betti == [0, 0, 0]


def test_relative_dense_oracle():
    # drop the (0|0) row from the absolute matrices
    d1 = [INTERVAL_D1[1]]
    r1, r2 = dense_rank(d1), dense_rank(INTERVAL_D2)
    assert [1 - r1, 4 - r1 - r2, 1 - r2] == relative_betti(self2(interval()), self2(POINT), 2).betti


def test_relative_containment_error():
    with pytest.raises(ContainmentError):
        relative_betti(self2(POINT), self2(interval()), 1)


def test_les_examples():
    S = self2(interval())
    report = les_check(S, S, 2)
    assert report.exact
    assert all(n["dim"] == 0 for n in report.nodes if n["node"] == "relative")
    report = les_check(S, self2(POINT), 2)
    assert report.exact
    by_key = {(n["degree"], n["node"]): n for n in report.nodes}
    assert by_key[(1, "relative")]["dim"] == 2
    assert by_key[(0, "sub")]["image_rank"] == 1


@pytest.mark.parametrize("seed", range(15))
def test_les_random_pairs(seed):
    rng = random.Random(1000 + seed)
    S = random_space(rng, rng.choice([1, 2, 3]), max_simplices=20)
    field = QQ if seed % 2 else GF(2)
    assert les_check(S, random_sub(rng, S), 3, field).exact


@pytest.mark.parametrize("seed", range(20))
def test_euler_poincare_and_duality(seed):
    rng = random.Random(seed)
    S = random_space(rng, rng.choice([1, 2, 3]), max_simplices=20)
    for field in (QQ, GF(2), GF(3)):
        b = betti(S, None, field)
        assert sum((-1) ** p * x for p, x in enumerate(b.betti)) == interaction_euler(S) == b.euler
        assert cohomology_betti(S, None, field).betti == b.betti


@pytest.mark.parametrize("seed", range(20))
def test_universal_coefficients(seed):
    rng = random.Random(seed)
    S = random_space(rng, rng.choice([1, 2]), max_simplices=20)
    q = betti(S).betti
    z = integer_homology(S)
    assert z.betti == q
    for p in (2, 3):
        mod = betti(S, None, GF(p)).betti
        # dim H_k(F_p) = rank H_k + #p-torsion in H_k + #p-torsion in H_{k-1}
        tors = [sum(1 for d in t if d % p == 0) for t in z.torsion]
        for k in range(len(q)):
            assert mod[k] >= q[k]
            assert mod[k] == q[k] + tors[k] + (tors[k - 1] if k else 0)


def test_rp2_mod2():
    S = InteractionSpace.self_covering(rp2(), 1)
    assert betti(S, None, GF(2)).betti == [1, 1, 1]
    assert betti(S).betti == [1, 0, 0]


@pytest.mark.parametrize("seed", range(15))
def test_n1_matches_ordinary_homology(seed):
    K = random_space(random.Random(seed), 1).total
    b, tors = ordinary_homology(K)
    S = InteractionSpace.self_covering(K, 1)
    assert betti(S).betti == b
    assert integer_homology(S).torsion == tors


@pytest.mark.parametrize("seed", range(10))
def test_relabeling_invariance(seed):
    rng = random.Random(seed)
    S = random_space(rng, rng.choice([1, 2, 3]), max_simplices=20)
    perm = random_bijection(rng, S.total.vertices)
    T = S.relabel(perm)
    assert betti(T).betti == betti(S).betti
    assert integer_homology(T).torsion == integer_homology(S).torsion
    assert interaction_euler(T) == interaction_euler(S)
    assert wu_characteristic(T.total) == wu_characteristic(S.total)


@pytest.mark.parametrize("seed", range(25))
def test_wu_matches_brute_force(seed):
    K = random_space(random.Random(seed), 1, max_simplices=30).total
    assert wu_characteristic(K) == brute_wu(K) == interaction_euler(self2(K))


def test_summary_to_dict():
    d = betti(self2(interval()), 2).to_dict()
    assert d == {"ring": "Q", "degrees": [0, 1, 2], "betti": [0, 1, 0],
                 "torsion": [[], [], []], "euler": -1}
