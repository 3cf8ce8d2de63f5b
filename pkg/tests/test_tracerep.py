import random
from fractions import Fraction

import pytest

from oracles import rand_fraction, rand_sl
from valtree.errors import NotIrreducible
from valtree.exactmat import GeneratorSet, Mat, det, inverse, word_ball
from valtree.tracerep import (
    alpha,
    alpha_coefficients,
    burnside_basis,
    change_of_basis,
    integral_characteristic,
)
from valtree.valfield import AlgElem, NumberField, RatFunc, UniPoly

F = Fraction
t = RatFunc.t()
S = Mat([[0, -1], [1, 0]])
T = Mat([[1, 1], [0, 1]])
SL2Z = GeneratorSet([S, T], ["S", "T"])


def _random_word(rng, gens, length):
    g = Mat.identity(2)
    for _ in range(length):
        g = g * rng.choice(gens)
    return g


@pytest.fixture(scope="module")
def basis():
    return burnside_basis(SL2Z, 4)


def test_burnside_basis_sl2z(basis):
    assert basis.N == 4
    assert max(len(w) for w in basis.words) <= 4
    assert basis.gram_det() != 0
    # words reproduce the chosen matrices
    lookup = dict(zip(SL2Z.labels, SL2Z.gens))
    for w, g in zip(basis.words, basis.basis):
        prod = Mat.identity(2)
        for lab in w:
            prod = prod * lookup[lab]
        assert prod == g


def test_burnside_basis_reducible():
    upper = GeneratorSet([T, Mat([[2, 0], [0, F(1, 2)]])])
    with pytest.raises(NotIrreducible):
        burnside_basis(upper, 6)


def test_burnside_basis_dimension_one():
    tb = burnside_basis(GeneratorSet([], []), 3, n=1)
    assert tb.basis == [Mat([[1]])]


def test_alpha_identity_and_rationality(basis):
    assert alpha(Mat.identity(2), basis) == Mat.identity(4)
    for g in (S, T, inverse(T), S * T):
        a = alpha(g, basis)
        assert all(isinstance(x, Fraction) for x in a.entries())


def test_alpha_defining_equation(basis):
    g = S * T * T
    a = alpha_coefficients(g, basis)
    for i, gi in enumerate(basis.basis):
        lhs = g * gi
        rhs = Mat.identity(2) * 0
        for j, gj in enumerate(basis.basis):
            rhs = Mat([[rhs.rows[r][c] + a.rows[i][j] * gj.rows[r][c] for c in range(2)] for r in range(2)])
        assert lhs == rhs


def test_alpha_multiplicative_random(basis):
    rng = random.Random(5)
    gens = SL2Z.gens
    for _ in range(100):
        g = _random_word(rng, gens, rng.randint(0, 8))
        h = _random_word(rng, gens, rng.randint(0, 8))
        assert alpha(g * h, basis) == alpha(g, basis) * alpha(h, basis)


def test_alpha_injective_on_samples(basis):
    ball = word_ball(SL2Z, 4)
    images = {alpha(g, basis) for g in ball.elements()}
    assert len(images) == len(ball)


def test_change_of_basis_conjugates(basis):
    # S T and T generate the same group but the greedy search picks other matrices
    other = burnside_basis(GeneratorSet([S * T, T], ["U", "T"]), 6)
    assert other.basis != basis.basis
    P = change_of_basis(basis, other)
    Pinv = inverse(P)
    for g in word_ball(SL2Z, 3).elements():
        assert alpha(g, other) == Pinv * alpha(g, basis) * P


def test_alpha_over_rational_functions():
    a = Mat([[t, 0], [0, 1 / t]])
    b = Mat([[1, 1], [0, 1]]).map(RatFunc)
    c = Mat([[1, 0], [1, 1]]).map(RatFunc)
    tb = burnside_basis(GeneratorSet([a, b, c]), 4)
    assert det(tb.gram) != 0
    assert alpha(a * b, tb) == alpha(a, tb) * alpha(b, tb)


def test_integral_characteristic_examples():
    assert integral_characteristic(S)
    assert not integral_characteristic(Mat([[2, 0], [0, F(1, 2)]]))
    assert integral_characteristic(Mat([[1, 7], [0, 1]]))
    assert not integral_characteristic(Mat([[t, 0], [0, 1 / t]]))
    assert integral_characteristic(Mat([[1, t], [0, 1]]))


def test_integral_characteristic_number_field():
    K = NumberField(UniPoly([-2, 0, 1]))       # sqrt 2
    r = K.gen()
    # trace sqrt2 is an algebraic integer
    g = Mat([[r, K(-1)], [K(1), K(0)]])
    assert integral_characteristic(g)
    half = AlgElem(K, [F(1, 2), F(1, 2)])       # (1 + sqrt2)/2 has norm -1/4
    h = Mat([[half, K(0)], [K(0), half.inverse()]])
    assert not integral_characteristic(h)


def test_integral_characteristic_conjugation_invariant():
    rng = random.Random(13)
    for _ in range(100):
        g = rand_sl(rng, 2, lambda r: F(r.randint(-4, 4), r.choice([1, 1, 2, 3])))
        h = rand_sl(rng, 2, rand_fraction)
        assert integral_characteristic(g) == integral_characteristic(h * g * inverse(h))
