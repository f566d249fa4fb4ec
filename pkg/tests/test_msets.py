import pytest
from hypothesis import given
from hypothesis import strategies as st

from multichain.msets import (Diagonal, ExternalProduct, IndexOutOfRange, MSet, NotEnumerable,
                              StandardMultisimplex, StandardSimplex, compositions, diagonal, product_set)
from multichain.surjection import BarrattEccles, Surjection

S2, S3 = Surjection(2), Surjection(3)
STD = StandardMultisimplex((2, 1, 1))
INSTANCES = [S2, S3, STD, Diagonal(S2), BarrattEccles(3)]


def test_face_and_degeneracy_examples():
    assert S3.face((1, 2, 3, 2, 1), 2, 0) == (1, 3, 2, 1)
    assert S3.face((1, 2, 3, 2, 1), 2, 1) == (1, 2, 3, 1)
    assert S2.degeneracy((1, 2, 1), 1, 0) == (1, 1, 2, 1)
    assert S2.degeneracy((1, 2, 1), 2, 0) == (1, 2, 2, 1)
    assert S2.face((1, 2, 1), 1, 1) == (1, 2)
    D1 = StandardSimplex(1)
    assert D1.face(D1.identity(), 1, 0) == (1,)


def test_index_errors():
    with pytest.raises(IndexOutOfRange):
        S3.face((1, 2, 3), 1, 0)  # direction of degree 0
    with pytest.raises(IndexOutOfRange):
        S3.face((1, 2, 3, 2, 1), 4, 0)
    with pytest.raises(IndexOutOfRange):
        S3.degeneracy((1, 2, 3), 1, 1)
    with pytest.raises(IndexOutOfRange):
        S3.front_face((1, 2, 3, 2, 1), (2, 0, 0))


def test_is_degenerate_examples():
    assert S2.is_degenerate((1, 1, 2, 1))
    assert not S3.is_degenerate((1, 2, 3, 2, 1))
    assert not S2.is_degenerate((2, 1))


def test_front_back_examples():
    x = (1, 2, 3, 2, 1)
    assert S3.front_face(x, (1, 0, 0)) == (1, 2, 3, 1)
    assert S3.back_face(x, (0, 1, 0)) == (2, 3, 2, 1)
    assert S3.front_face(x, S3.degree(x)) == x
    assert S3.front_face(x, (1, 1, 0)) == x
    assert S2.back_face((1, 2, 1, 2, 1), (0, 0)) == (2, 1)


def test_enumerate_examples():
    assert S2.enumerate((1, 0)) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert S2.enumerate((0, 0)) == [(1, 2), (2, 1)]
    assert StandardMultisimplex((1, 1)).enumerate((1, 1), nondegenerate=True) == [((0, 1), (0, 1))]
    assert len(S3.enumerate((1, 1, 0))) == 30  # 5! / (2! 2! 1!)


def test_not_enumerable():
    class Abstract(MSet):
        def degree(self, x):
            return (0,)

        def _face(self, x, l, i):
            return x

        def _degeneracy(self, x, l, i):
            return x

    with pytest.raises(NotEnumerable):
        Abstract().enumerate((0,))


def test_diagonal():
    X = StandardSimplex(2)
    assert diagonal(X) is X
    D = Diagonal(S2)
    assert (1, 2, 1, 2) in D.enumerate((1,))
    # first occurrence of each value removed: 1212 -> 12
    assert D.face((1, 2, 1, 2), 1, 0) == (1, 2)
    assert D.face((1, 2, 1, 2), 1, 1) == (1, 2)
    assert D.face((2, 1, 1, 2), 1, 0) == (1, 2)


def test_product_set_is_diagonal_of_external_product():
    P = product_set(StandardSimplex(1), StandardSimplex(1))
    # the product of two 1-simplices has 2 non-degenerate 2-simplices
    assert len(P.enumerate((2,), nondegenerate=True)) == 2
    assert len(P.enumerate((1,), nondegenerate=True)) == 5


def test_compositions():
    assert compositions(2, 2) == [(0, 2), (1, 1), (2, 0)]


def test_default_degeneracy_test_matches_overrides():
    for X in (S2, S3, STD, BarrattEccles(3)):
        for n in range(3):
            for x in X.basis(n):
                assert MSet.is_degenerate(X, x) == X.is_degenerate(x)


# --- simplicial identities on random samples --------------------------------

def _pool(X, cap=3):
    return [x for n in range(cap + 1) for x in X.basis(n)]


POOLS = {id(X): _pool(X) for X in INSTANCES}


@st.composite
def element_and_indices(draw):
    X = draw(st.sampled_from(INSTANCES))
    x = draw(st.sampled_from(POOLS[id(X)]))
    l = draw(st.integers(1, X.k))
    m = draw(st.integers(1, X.k))
    return X, x, l, m, draw(st.integers(0, 10)), draw(st.integers(0, 10))


@given(element_and_indices())
def test_simplicial_identities(data):
    X, x, l, m, i, j = data
    deg = X.degree(x)
    a, b = deg[l - 1], deg[m - 1]
    if l == m:
        a = b = deg[l - 1]
        if a >= 2:
            i0, j0 = sorted((i % (a + 1), j % (a + 1)))
            if i0 < j0:
                assert X.face(X.face(x, l, j0), l, i0) == X.face(X.face(x, l, i0), l, j0 - 1)
        i0, j0 = sorted((i % (a + 1), j % (a + 1)))
        assert X.degeneracy(X.degeneracy(x, l, j0), l, i0) == X.degeneracy(X.degeneracy(x, l, i0), l, j0 + 1)
        jj = j % (a + 1)
        ii = i % (a + 2)
        y = X.degeneracy(x, l, jj)
        lhs = X.face(y, l, ii)
        if ii < jj:
            assert lhs == X.degeneracy(X.face(x, l, ii), l, jj - 1)
        elif ii in (jj, jj + 1):
            assert lhs == x
        else:
            assert lhs == X.degeneracy(X.face(x, l, ii - 1), l, jj)
    else:
        ii, jj = i % (a + 1), j % (b + 1)
        if a and b:
            assert X.face(X.face(x, l, ii), m, jj) == X.face(X.face(x, m, jj), l, ii)
        assert X.degeneracy(X.degeneracy(x, l, ii), m, jj) == X.degeneracy(X.degeneracy(x, m, jj), l, ii)
        if b:
            assert X.face(X.degeneracy(x, l, ii), m, jj) == X.degeneracy(X.face(x, m, jj), l, ii)


@given(st.sampled_from(INSTANCES).flatmap(lambda X: st.tuples(st.just(X), st.sampled_from(POOLS[id(X)]),
                                                              st.randoms(use_true_random=False))))
def test_front_back_agree_with_iterated_faces(data):
    X, x, rnd = data
    deg = X.degree(x)
    idx = tuple(rnd.randint(0, a) for a in deg)
    front = x
    for l, (a, i) in enumerate(zip(deg, idx), start=1):
        for t in range(a, i, -1):
            front = X.face(front, l, t)
    back = x
    for l, (a, i) in enumerate(zip(deg, idx), start=1):
        for _ in range(a - i):
            back = X.face(back, l, 0)
    assert MSet.front_face(X, x, idx) == front == X.front_face(x, idx)
    assert MSet.back_face(X, x, idx) == back == X.back_face(x, idx)


def test_external_product_encoding_round_trip():
    E = ExternalProduct(StandardSimplex(2), StandardSimplex(1))
    for x in E.basis(2):
        assert E.decode(E.encode(x)) == x
