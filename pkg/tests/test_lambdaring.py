"""Twisted ring operations on series with constant term 1."""

import random

import pytest

from lambdaforge.algebra import IntegerRing, RationalField, rat
from lambdaforge.errors import MismatchError, RingCapabilityError
from lambdaforge.lambdaring import (
    LambdaSeries,
    adams_via_log,
    lambda_from_adams,
    witt_add,
    witt_lambda,
    witt_mul,
    witt_neg,
)

Q = RationalField()


def random_series(rng, order=6):
    coeffs = [rat(1)] + [rat(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order)]
    return LambdaSeries(Q, coeffs, order)


def test_constant_term_must_be_one():
    with pytest.raises(ValueError):
        LambdaSeries(Q, [rat(2)], 2)


def test_one_is_the_zero():
    rng = random.Random(0)
    s = random_series(rng)
    assert witt_add(LambdaSeries.one(Q, 6), s) == s


def test_one_plus_t_is_the_identity():
    rng = random.Random(1)
    s = random_series(rng)
    assert witt_mul(LambdaSeries.one_plus_t(Q, 6), s) == s


def test_mul_by_one_collapses():
    rng = random.Random(2)
    s = random_series(rng)
    assert witt_mul(LambdaSeries.one(Q, 6), s) == LambdaSeries.one(Q, 6)


def test_add_of_linear_factors():
    s = witt_add(
        LambdaSeries(Q, [rat(1), rat(2)], 2), LambdaSeries(Q, [rat(1), rat(3)], 2)
    )
    assert s.coeffs == (rat(1), rat(5), rat(6))


def test_commutativity_and_distributivity():
    rng = random.Random(3)
    for _ in range(15):
        f, g, h = (random_series(rng) for _ in range(3))
        assert witt_add(f, g) == witt_add(g, f)
        assert witt_mul(f, g) == witt_mul(g, f)
        assert witt_mul(witt_add(f, g), h) == witt_add(witt_mul(f, h), witt_mul(g, h))


def test_neg_inverts():
    rng = random.Random(4)
    f = random_series(rng)
    assert witt_add(f, witt_neg(f)) == LambdaSeries.one(Q, 6)


def test_witt_mul_requires_matching_orders():
    with pytest.raises(MismatchError):
        witt_mul(LambdaSeries.one(Q, 3), LambdaSeries.one(Q, 4))


def test_lambda_zero_and_one():
    rng = random.Random(5)
    f = random_series(rng)
    assert witt_lambda(0, f) == LambdaSeries.one_plus_t(Q, 6)
    assert witt_lambda(1, f) == f


def test_lambda_two_of_linear_series_is_trivial():
    f = LambdaSeries(Q, [rat(1), rat(7)], 4)
    assert witt_lambda(2, f) == LambdaSeries.one(Q, 4)


def test_lambda_routes_agree():
    # Newton power-sum evaluation equals explicit polynomial evaluation
    rng = random.Random(6)
    from lambdaforge.lambdaring import _witt_lambda_explicit, _witt_lambda_newton

    for m, order in ((2, 4), (3, 2), (2, 3), (4, 2)):
        for _ in range(10):
            f = random_series(rng, order=order * m)
            lhs = _witt_lambda_newton(m, f, order)
            rhs = _witt_lambda_explicit(m, f, order)
            assert lhs == rhs


def test_lambda_addition_formula_small():
    rng = random.Random(7)
    N = 3
    for _ in range(10):
        f = random_series(rng, order=N)
        g = random_series(rng, order=N)
        wide_f = LambdaSeries(Q, list(f.coeffs), 2 * N)
        wide_g = LambdaSeries(Q, list(g.coeffs), 2 * N)
        total = witt_add(wide_f, wide_g)
        for n in (2, 3):
            lhs = witt_lambda(n, total, out_order=N)
            rhs = LambdaSeries.one(Q, N)
            for j in range(n + 1):
                rhs = witt_add(rhs, witt_mul(
                    witt_lambda(j, wide_f, out_order=N),
                    witt_lambda(n - j, wide_g, out_order=N),
                ))
            assert lhs == rhs


def test_adams_of_linear_series_gives_powers():
    x = rat(3, 2)
    s = LambdaSeries(Q, [rat(1), x, rat(0), rat(0), rat(0)], 4)
    assert adams_via_log(s) == [x, x ** 2, x ** 3, x ** 4]


def test_adams_of_one_plus_t_is_constant_one():
    s = LambdaSeries.one_plus_t(Q, 5)
    assert adams_via_log(s) == [rat(1)] * 5


def test_adams_lambda_round_trip():
    rng = random.Random(8)
    for _ in range(15):
        psi = [rat(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(6)]
        series = lambda_from_adams(psi, Q, 6)
        assert adams_via_log(series) == psi
        again = random_series(rng)
        assert lambda_from_adams(adams_via_log(again), Q, 6) == again


def test_lambda_from_adams_order_two_formula():
    psi = [rat(5), rat(7)]
    series = lambda_from_adams(psi, Q, 2)
    assert series.coefficient(1) == rat(5)
    assert series.coefficient(2) == (rat(5) ** 2 - rat(7)) / rat(2)


def test_lambda_from_adams_zero_values():
    assert lambda_from_adams([rat(0)] * 4, Q, 4) == LambdaSeries.one(Q, 4)


def test_lambda_from_adams_needs_rational_scaling():
    with pytest.raises(RingCapabilityError):
        lambda_from_adams([1, 1], IntegerRing(), 2)


def test_witt_lambda_on_integers_within_cap():
    Z = IntegerRing()
    f = LambdaSeries(Z, [1, 2, 3], 2)
    # explicit polynomials keep the operation available without division
    out = witt_lambda(2, f)
    assert out.coefficient(1) == 3  # the second coefficient of the input
    with pytest.raises(RingCapabilityError):
        witt_lambda(5, LambdaSeries(Z, [1] + [1] * 6, 6))
