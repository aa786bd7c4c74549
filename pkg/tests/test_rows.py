import random

import pytest
from hypothesis import given, settings, strategies as st

from wittkit.field import GF, QQ
from wittkit.matrix import Mat, congruence, det_division_free, perp, pfaffian, psi
from wittkit.ring import NotUnit, ring
from wittkit.rows import (
    GENERIC_RELATION,
    NotASyzygy,
    NotUnimodular,
    Relation,
    UmRow,
    act_row,
    apply_word,
    certify_row,
    elementary_completion,
    field_relation,
    generic_ring,
    generic_row,
    koszul_homotopy,
    koszul_syzygies,
    lemma_chain,
    sqrt_minus_one,
    swan_towber_complete,
    vaserstein,
    verify_relation,
)
from wittkit.witt import ElementaryWord, EquivCert, Transvection, verify_equiv

from _fuzz import leibniz_det, pf4

Q = ring("")
QXY = ring("x y")
F5 = ring("", field=GF(5))
F13 = ring("", field=GF(13))


def test_certify_examples():
    assert certify_row([1, 0, 0], Q).w == (Q.one, Q.zero, Q.zero)
    x, y = QXY.gens
    assert certify_row([x, y, 1 - x - y]).w == (QXY.one,) * 3
    with pytest.raises(NotUnimodular):
        certify_row([x, y])


def test_umrow_checks_its_witness():
    x, y = QXY.gens
    with pytest.raises(NotUnimodular):
        UmRow([x, y, 1 - x - y], [1, 1, 0])


def test_act_row_transports_the_witness():
    x, y = QXY.gens
    row = certify_row([x, y, 1 - x - y])
    assert act_row(row, Mat.identity(QXY, 3)) == row
    M = ElementaryWord.from_triples(QXY, 3, [(1, 2, x * y), (3, 1, y)]).evaluate()
    moved = act_row(row, M)
    assert list(moved.a) == [sum((row.a[i] * M[i, j] for i in range(3)), QXY.zero) for j in range(3)]


def test_elementary_completion_reaches_a_unit_vector():
    Rx = ring("x")
    (x,) = Rx.gens
    row = certify_row([x, 1 - x, 0])
    E = elementary_completion(row, target=0)
    assert list(apply_word(row, E).a) == [Rx.one, Rx.zero, Rx.zero]
    # the row is the first row of E^-1, so it is completable in an elementary matrix
    assert E.inverse().evaluate().row(0) == list(row.a)


def test_vaserstein_examples():
    V = vaserstein(certify_row([1, 0, 0], Q))
    assert V.G == Mat.from_rows(Q, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    Vg = vaserstein(generic_row())
    assert Vg.G.is_alternating()
    assert pf4(Vg.G) == Vg.pf == generic_ring().one


def test_koszul_generic():
    row = generic_row()
    R = row.ring
    a = Mat.from_rows(R, [[x] for x in row.a])
    for s in koszul_syzygies(row):
        M = koszul_homotopy(row, s)
        assert M.T == -M
        assert M @ a == Mat.from_rows(R, [[x] for x in s])
    assert koszul_homotopy(row, [0, 0, 0]) == Mat.zeros(R, 3)


def test_koszul_instance_over_f5():
    R = ring("t", field=GF(5))
    (t,) = R.gens
    row = certify_row([2, 3, 0], R)
    M = koszul_homotopy(row, [3 * t, -2 * t, 0])
    assert M @ Mat.from_rows(R, [[2], [3], [0]]) == Mat.from_rows(R, [[3 * t], [-2 * t], [0]])
    with pytest.raises(NotASyzygy):
        koszul_homotopy(row, [1, 0, 0])


def test_swan_towber_examples():
    assert swan_towber_complete(certify_row([1, 0, 0], Q)).row(0) == [Q.one, Q.zero, Q.zero]
    x, y = QXY.gens
    M = swan_towber_complete(certify_row([x, y, 1 - x - y]))
    assert M.row(0) == [x * x, y, 1 - x - y]
    assert det_division_free(M) == leibniz_det(M) == QXY.one


def test_swan_towber_generic_against_leibniz():
    M = swan_towber_complete(generic_row())
    a, b, c = generic_row().a
    assert M.row(0) == [a * a, b, c]
    assert leibniz_det(M) == generic_ring().one


def test_relation_examples():
    V = lambda *a: vaserstein(certify_row(list(a), F5))
    rel = field_relation([V(2, 0, 0), V(2, 0, 0)], [V(4, 0, 0), psi(F5, 2)])
    assert verify_relation(rel)
    letters = list(rel.cert.word)
    assert letters
    T = letters[-1]
    letters[-1] = Transvection(T.n, T.i, T.j, T.r + 1)
    bad = Relation(rel.lhs, rel.rhs, EquivCert(rel.cert.t, ElementaryWord(F5, T.n, letters), rel.cert.left,
                                              rel.cert.right))
    assert not verify_relation(bad)
    G = vaserstein(certify_row([2, 1, 3], F5))
    assert verify_relation(Relation((G,), (G,), EquivCert.identity(F5, 4, 4)))


def test_sqrt_minus_one():
    i = sqrt_minus_one(F13)
    assert i * i == F13(-1)
    with pytest.raises(NotUnit):
        sqrt_minus_one(ring("", field=GF(7)))
    with pytest.raises(NotUnit):
        sqrt_minus_one(Q)


def _random_row(R, p, rng):
    while True:
        a = [R(rng.randrange(p)) for _ in range(3)]
        if any(a) and a[0]:
            return certify_row(a, R)


@pytest.mark.parametrize("seed", range(8))
def test_lemma_chain_over_f13(seed):
    rng = random.Random(seed)
    row = _random_row(F13, 13, rng)
    chain = lemma_chain(row, t=F13(rng.randrange(13)))
    assert chain[-1].name == "V(a^2,b,c) = 2V(a,b,c)"
    for rel in chain:
        assert verify_relation(rel), rel.name


def test_witness_independence_over_a_field():
    a = [F13(2), F13(3), F13(5)]
    w1 = certify_row(a, F13)
    w2 = UmRow(a, [F13(0), F13(0), F13(8)])  # 5 * 8 = 1 mod 13
    assert w1 != w2
    assert verify_relation(field_relation([vaserstein(w1)], [vaserstein(w2)]))


@pytest.mark.parametrize("triples", [
    [(1, 2, "x*y")],
    [(3, 1, "y"), (1, 2, "-x"), (2, 3, "x^2 + 1")],
])
def test_sl3_equivariance_is_a_congruence(triples):
    x, y = QXY.gens
    row = UmRow([x, y, 1 - x - y], [1, 1, 1])
    E = ElementaryWord.from_triples(QXY, 3, [(i, j, QXY(r)) for i, j, r in triples])
    moved = apply_word(row, E)
    one_E = perp(Mat.identity(QXY, 1), E.evaluate())
    assert congruence(one_E, vaserstein(row).G) == vaserstein(moved).G
    cert = EquivCert(0, E.embed(8, [2, 3, 4]), 4, 4)
    assert verify_equiv(vaserstein(moved), vaserstein(row), cert)


@settings(max_examples=50)
@given(st.lists(st.integers(0, 4), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_koszul_fuzzed(entries, svec):
    R = ring("t", field=GF(5))
    (t,) = R.gens
    a = [R(entries[0]) + t, R(entries[1]), R(1) - t * R(entries[2])]
    try:
        row = certify_row(a, R)
    except NotUnimodular:
        return
    for s0 in koszul_syzygies(row):
        s = [x * R(svec[0]) for x in s0]
        M = koszul_homotopy(row, s)
        assert M.T == -M
        assert M @ Mat.from_rows(R, [[x] for x in row.a]) == Mat.from_rows(R, [[x] for x in s])
