import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multichain.complexes import boundary
from multichain.exactlin import GF, ZZ, vec_add, vec_clean
from multichain.msets import Diagonal, IndexOutOfRange
from multichain.surjection import (BarrattEccles, CountingPolynomial, MalformedDiagonal, Surjection, TC,
                                   be_complexity, complexity, counting_polynomial_be, counting_polynomial_sur,
                                   tc, tc_respects_filtration)


def seq(s):
    return tuple(int(ch) for ch in s)


def test_face_degeneracy_rules():
    S = Surjection(3)
    assert S.face(seq("12321"), 2, 0) == seq("1321")
    assert S.degeneracy(seq("121"), 1, 0) == seq("1121")
    assert Surjection(2).face(seq("121"), 1, 1) == seq("12")
    with pytest.raises(IndexOutOfRange):
        Surjection(2).face(seq("121"), 1, 2)


def test_front_back_faces():
    S3, S2 = Surjection(3), Surjection(2)
    assert S3.front_face(seq("12321"), (1, 1, 0)) == seq("12321")
    assert S3.front_face(seq("12321"), (1, 0, 0)) == seq("1231")
    assert S2.back_face(seq("12121"), (0, 0)) == seq("21")


@pytest.mark.parametrize("u,c", [("12", 1), ("121", 2), ("12121", 4), ("1", 1), ("12321", 2), ("1213", 2)])
def test_complexity_examples(u, c):
    assert complexity(seq(u)) == c


def test_be_complexity():
    assert be_complexity(((1, 2),)) == 1
    assert be_complexity(((1, 2), (2, 1))) == 2
    assert be_complexity(((1, 2), (2, 1), (1, 2))) == 3
    assert be_complexity(((1, 2, 3), (2, 3, 1), (3, 1, 2))) == 3


surjections = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.integers(1, k), min_size=k, max_size=k + 5).filter(lambda u: set(u) == set(range(1, k + 1))))


@given(surjections, st.randoms(use_true_random=False))
def test_complexity_invariant_under_degeneracies(u, rnd):
    u = tuple(u)
    S = Surjection(max(u))
    l = rnd.randint(1, S.k)
    j = rnd.randint(0, S.degree(u)[l - 1])
    assert complexity(S.degeneracy(u, l, j)) == complexity(u)


def test_enumeration_counts_and_degeneracy():
    S = Surjection(3)
    xs = S.enumerate((1, 0, 1))
    assert len(xs) == factorial(5) // 4 and xs == sorted(xs)
    nd = S.enumerate((1, 0, 1), nondegenerate=True)
    assert nd == [x for x in xs if all(a != b for a, b in zip(x, x[1:]))]
    assert all(complexity(x) <= 2 for x in Surjection(3, 2).enumerate((1, 1, 1)))


def test_counting_polynomials_small():
    assert counting_polynomial_sur(1, 5).factored() == "1"
    assert counting_polynomial_sur(2, 2).coeffs == (2, 2)
    assert counting_polynomial_sur(3, 2).factored() == "6*(1 + 3x + 2x^2)"
    assert counting_polynomial_be(2, 3).coeffs == (2, 2, 2)
    assert counting_polynomial_be(1, 4).coeffs == (1,)


@pytest.mark.parametrize("k,d", [(2, 2), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_counting_polynomial_invariants(k, d):
    P = counting_polynomial_sur(k, d)
    S = Surjection(k, d)
    assert P(1) == P.total == sum(len(S.nondegenerate_basis(n)) for n in range(len(P.coeffs)))
    assert all(c % factorial(k) == 0 for c in P.coeffs)


def test_counting_polynomial_matches_basis_sizes():
    S = Surjection(3, 2)
    P = counting_polynomial_sur(3, 2)
    assert list(P.coeffs) == [len(S.nondegenerate_basis(n)) for n in range(3)]
    B = BarrattEccles(3, 2)
    Q = counting_polynomial_be(3, 2)
    assert list(Q.coeffs) == [len(B.nondegenerate_basis(n)) for n in range(len(Q.coeffs))]


def test_factored_form():
    assert CountingPolynomial((6, 30, 6), 3).factored() == "6*(1 + 5x + x^2)"
    assert CountingPolynomial((3, 1), 2).factored() == "3 + x"


def test_tc_examples():
    assert tc(seq("122333112")) == ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    assert tc(seq("312")) == ((3, 1, 2),)
    assert tc(seq("1212")) == ((1, 2), (1, 2))
    assert tc(seq("1221")) == ((1, 2), (2, 1))
    with pytest.raises(MalformedDiagonal):
        tc(seq("1213"))


def test_tc_is_simplicial_on_random_diagonal_simplices():
    rng = random.Random(17)
    B = BarrattEccles(3)
    for k in (2, 3):
        S = Surjection(k)
        D = Diagonal(S)
        pools = {n: D.enumerate((n,)) for n in range(3)}
        for _ in range(500):
            n = rng.randint(0, 2)
            s = rng.choice(pools[n])
            i = rng.randint(0, n)
            assert tc(D.degeneracy(s, 1, i)) == B._degeneracy(tc(s), 1, i)
            if n:
                assert tc(D.face(s, 1, i)) == B._face(tc(s), 1, i)


def test_TC_examples():
    S = Surjection(3)
    x = seq("12321")
    assert TC(S, {x: 1}) == {((1, 2, 3), (2, 3, 1), (3, 2, 1)): 1, ((1, 2, 3), (1, 3, 2), (3, 2, 1)): -1}
    expected = {tc(seq("112333221")): 1, tc(seq("122333211")): 1}
    assert TC(S, {x: 1}, GF(2)) == expected
    assert TC(S, {seq("231"): 1}) == {((2, 3, 1),): 1}


def test_TC_is_a_chain_map():
    rng = random.Random(6)
    for k in (2, 3):
        S = Surjection(k)
        B = BarrattEccles(k)
        for _ in range(60):
            n = rng.randint(1, 3)
            pool = S.nondegenerate_basis(n)
            c = {}
            for _ in range(2):
                vec_add(c, rng.choice(pool), rng.choice((1, -1, 2)))
            c = vec_clean(c, ZZ)
            out = TC(S, c)
            assert all(not B.is_degenerate(t) for t in out)
            assert boundary(B, out, normalized=True) == TC(S, boundary(S, c, normalized=True))


def test_tc_filtration_examples():
    rep = tc_respects_filtration(2, 2, 2)
    assert rep.forward_ok and rep.checked == sum(len(Diagonal(Surjection(2, 2)).enumerate((n,))) for n in range(3))
    assert tc_respects_filtration(3, 1, 0).forward_ok
    rep = tc_respects_filtration(3, 2, 2, samples=50, seed=3)
    assert rep.ok


def test_tc_preimage_reading_fails_in_w2():
    # (123, 312) has complexity 2 but any surjection realizing it has complexity 3
    rep = tc_respects_filtration(3, 2, 1)
    assert rep.forward_ok and not rep.preimage_ok
    assert be_complexity(rep.preimage_counterexample) <= 2


def test_be_encoding_and_indexing():
    B = BarrattEccles(3)
    x = ((1, 2, 3), (2, 3, 1))
    assert B.degree(x) == (1,)
    assert B.encode(x) == "123|231"
    assert B.decode("(123|231)") == x
    assert B.face(x, 1, 0) == ((2, 3, 1),)
    assert B.is_degenerate(((1, 2, 3), (1, 2, 3)))
    assert len(B.enumerate((1,))) == 36
