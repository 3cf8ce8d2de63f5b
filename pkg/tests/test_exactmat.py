import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_ball, rand_fraction, rand_ratfunc, rand_sl, rand_unitriangular, sympy_matrix
from valtree.errors import (
    BallTooLarge,
    NotDiagonal,
    NotSpecialLinear,
    NotUnipotentForm,
    SingularMatrix,
)
from valtree.exactmat import (
    GeneratorSet,
    Mat,
    char_poly,
    check_inequality_lemma,
    det,
    det_leibniz,
    diagonal_coarse,
    inequality_chain,
    inverse,
    length,
    pseudometric,
    tilde_length,
    word_ball,
)
from valtree.valfield import OrderAtZero, PAdic, RatFunc

F = Fraction
t = RatFunc.t()
I2 = Mat.identity(2)


def E12(x, like=F(1)):
    return Mat.elementary(2, 1, 2, x, like)


# -- inverse / det / char_poly --------------------------------------------------------

def test_inverse_examples():
    assert inverse(I2) == I2
    z = F(3, 7)
    assert inverse(Mat([[1, z], [0, 1]])) == Mat([[1, -z], [0, 1]])
    assert inverse(Mat([[0, -1], [1, 0]])) == Mat([[0, 1], [-1, 0]])
    with pytest.raises(SingularMatrix):
        inverse(Mat([[1, 2], [2, 4]]))


def test_inverse_and_det_against_sympy():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.choice([2, 3, 4])
        g = Mat([[rand_fraction(rng, 9) for _ in range(n)] for _ in range(n)])
        d = sympy_matrix(g).det()
        assert det(g) == F(int(d.p), int(d.q))
        assert det(g) == det_leibniz(g.rows)
        if d != 0:
            assert g * inverse(g) == Mat.identity(n)


def test_char_poly_examples():
    assert char_poly(I2).coeffs == (1, -2, 1)
    assert char_poly(Mat([[0, -1], [1, 0]])).coeffs == (1, 0, 1)
    cp = char_poly(Mat([[t, 0], [0, 1 / t]]))
    assert cp.coeffs == (1, -(t + 1 / t), 1)


def test_char_poly_against_sympy():
    rng = random.Random(4)
    lam = sympy.Symbol("lam")
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        g = Mat([[rand_fraction(rng, 9) for _ in range(n)] for _ in range(n)])
        expected = sympy.Poly(sympy_matrix(g).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
        got = char_poly(g).coeffs
        assert [F(int(c.p), int(c.q)) for c in expected] == list(got)
        assert got[0] == (-1) ** n * det(g)


# -- length functions -------------------------------------------------------------------

def test_length_examples():
    v2 = PAdic(2)
    assert length(v2, I2) == 0
    assert length(v2, Mat([[1, F(1, 4)], [0, 1]])) == 2
    for p in (2, 3, 5):
        assert length(PAdic(p), Mat.diag(F(p), F(1, p))) == 1
    with pytest.raises(NotSpecialLinear):
        length(v2, Mat.diag(F(2), F(1)))
    assert length(v2, Mat([[1]])) == 0


def test_tilde_length_examples():
    assert tilde_length(PAdic(2), Mat.identity(3)) == 0
    corner = Mat([[1, 0, F(1, 4)], [0, 1, 0], [0, 0, 1]])
    assert tilde_length(PAdic(2), corner) == 1
    assert length(PAdic(2), corner) == 2
    for z in (F(1, 8), F(3), F(5, 6), F(0)):
        g = Mat([[1, z], [0, 1]])
        assert tilde_length(PAdic(2), g) == length(PAdic(2), g)
    with pytest.raises(NotUnipotentForm):
        tilde_length(PAdic(2), Mat([[1, 0], [1, 1]]))


def test_tilde_length_is_exact_rational():
    g = Mat([[1, 0, F(1, 2)], [0, 1, 0], [0, 0, 1]])
    assert tilde_length(PAdic(2), g) == F(1, 2)


def test_length_axioms_over_ratfuncs():
    rng = random.Random(8)
    for v in (OrderAtZero(),):
        for _ in range(60):
            g = rand_sl(rng, 2, rand_ratfunc, steps=3)
            h = rand_sl(rng, 2, rand_ratfunc, steps=3)
            assert length(v, g) == length(v, inverse(g)) >= 0
            assert length(v, g * h) <= length(v, g) + length(v, h)


def test_tilde_sandwich_four_by_four():
    # beyond 3x3 the upper factor grows to 2^(n-2): the corner weight is 1/4
    corner = Mat([[1, 0, 0, F(1, 3)], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert tilde_length(PAdic(3), corner) == F(1, 4)
    assert length(PAdic(3), corner) == 1
    rng = random.Random(12)
    v = PAdic(3)
    for _ in range(100):
        g = rand_unitriangular(rng, 4, rand_fraction)
        h = rand_unitriangular(rng, 4, rand_fraction)
        assert tilde_length(v, g * h) <= max(tilde_length(v, g), tilde_length(v, h))
        assert tilde_length(v, g) <= length(v, g) <= 4 * tilde_length(v, g)


# -- pseudometric and coarse diagonal ------------------------------------------------------

def test_pseudometric_examples():
    v = PAdic(3)
    g = Mat.diag(F(3), F(1, 3))
    assert pseudometric(v, g, g) == 0
    assert pseudometric(v, I2, g) == 1
    d = Mat.diag(F(3, 2), F(2, 3))
    assert pseudometric(PAdic(2), d, diagonal_coarse(PAdic(2), d)) == 0
    # zero distance without equality
    assert pseudometric(v, I2, Mat([[1, 1], [0, 1]])) == 0


def test_diagonal_coarse_examples():
    assert diagonal_coarse(PAdic(2), I2) == I2
    assert diagonal_coarse(PAdic(2), Mat.diag(F(3, 2), F(2, 3))) == Mat.diag(F(1, 2), F(2))
    g = Mat.diag(t**2, 1 / t**2)
    assert diagonal_coarse(OrderAtZero(), g) == g
    with pytest.raises(NotDiagonal):
        diagonal_coarse(PAdic(2), Mat([[1, 1], [0, 1]]))


def test_diagonal_coarse_random_sl3():
    rng = random.Random(21)
    for _ in range(200):
        a, b = rand_fraction(rng, zero_rate=0), rand_fraction(rng, zero_rate=0)
        g = Mat.diag(a, b, 1 / (a * b))
        for p in (2, 3):
            assert pseudometric(PAdic(p), g, diagonal_coarse(PAdic(p), g)) == 0


# -- inequality lemma ------------------------------------------------------------------

def test_inequality_examples():
    assert inequality_chain(0, 0) == (0, 0, 0)
    assert inequality_chain(-1, -4) == (2, 4, 4)
    assert inequality_chain(3, 5) == (0, 0, 0)
    for a, b in [(0, 0), (-1, -4), (3, 5)]:
        assert check_inequality_lemma(a, b)


@given(st.fractions(), st.fractions())
def test_inequality_lemma_property(a, b):
    assert check_inequality_lemma(a, b)


# -- generator sets and word balls -------------------------------------------------------

def test_generator_set_symmetrizes_and_drops_identity():
    S = GeneratorSet([E12(1), I2, E12(1)], ["u", "e", "u2"])
    assert len(S) == 2
    assert S.is_symmetric()
    assert S.labels == ["u", "u^-1"]


def test_word_ball_radius_zero():
    S = GeneratorSet([E12(1)])
    ball = word_ball(S, 0)
    assert ball.elements() == [I2]


def test_word_ball_cyclic():
    S = GeneratorSet([E12(1), E12(-1)])
    ball = word_ball(S, 5)
    assert len(ball) == 11
    assert set(ball.elements()) == {E12(k) for k in range(-5, 6)}
    assert all(ball.lengths[E12(k)] == abs(k) for k in range(-5, 6))


def test_word_ball_matches_brute_force_laurent():
    a = Mat([[t, 0], [0, 1 / t]])
    b = Mat([[1, 1], [0, 1]]).map(RatFunc)
    S = GeneratorSet([a, b])
    ident = Mat.identity(2, RatFunc(1))
    for R in (1, 2, 3):
        ball = word_ball(S, R)
        brute = brute_ball(S.gens, R, ident)
        assert {g.format(): ball.lengths[g] for g in ball.elements()} == brute


def test_word_ball_canonical_order_and_nesting():
    S = GeneratorSet([Mat([[1, F(1, 2)], [0, 1]]), Mat([[0, -1], [1, 0]])])
    small, big = word_ball(S, 3), word_ball(S, 4)
    assert [g.format() for g in small.elements()] == sorted(g.format() for g in small.elements())
    assert set(small.elements()) <= set(big.elements())
    for g in big.elements(3):
        for s in S.gens:
            if g * s in big:
                assert abs(big.lengths[g * s] - big.lengths[g]) <= 1


def test_word_ball_cap():
    S = GeneratorSet([Mat([[1, 2], [0, 1]]), Mat([[1, 0], [2, 1]])])
    with pytest.raises(BallTooLarge):
        word_ball(S, 10, cap=500)


def test_mat_literals_round_trip():
    g = Mat([[t + 1, 1 / t], [F(1, 2), t**3]])
    assert Mat.from_literals(g.to_literals(), "Q(t)") == g
    h = Mat([[F(3, 2), 0], [7, F(-1, 9)]])
    assert Mat.from_literals(h.to_literals(), "Q") == h
