import random
from fractions import Fraction

import pytest

from valleydyck.errors import (
    NonzeroConstantTerm,
    NotAContraction,
    NotAUnit,
    NotDivisibleByX,
    OrderMismatch,
)
from valleydyck.polynomials import Polynomial
from valleydyck.series import (
    TruncatedSeries,
    named_series,
    solve_fixed_point,
    valley_series,
    valley_series_ab,
)

A = Polynomial.var("a")
B = Polynomial.var("b")
Q = Polynomial.var("q")
T = Polynomial.var("t")


def geometric(ratio, order):
    """1/(1 - ratio*x) with integer ratio, as explicit coefficients."""
    return TruncatedSeries([ratio**n for n in range(order + 1)])


def test_basic_ring_ops():
    one = TruncatedSeries.one(3)
    x = TruncatedSeries.x(3)
    assert (one + x) * (one - x) == TruncatedSeries.from_coeffs([1, 0, -1], 3)
    alpha = x.scale(A)
    assert alpha * alpha == TruncatedSeries.from_coeffs([0, 0, A * A], 3)
    with pytest.raises(OrderMismatch):
        one + TruncatedSeries.one(5)


def test_catalan_square():
    catalan = named_series("catalan", 3)
    assert [c.constant_value() for c in catalan.coeffs] == [1, 1, 2, 5]
    bumped = catalan - TruncatedSeries.one(3)
    assert bumped * bumped == TruncatedSeries.from_coeffs([0, 0, 1, 4], 3)


def test_inverse_geometric():
    s = TruncatedSeries.from_coeffs([1, -1], 4).inverse()
    assert s == TruncatedSeries([1, 1, 1, 1, 1])


def test_inverse_even_fibonacci():
    s = TruncatedSeries.from_coeffs([1, -3, 1], 4).inverse()
    assert [c.constant_value() for c in s.coeffs] == [1, 3, 8, 21, 55]


def test_inverse_chebyshev():
    u = TruncatedSeries.from_coeffs([1, -2 * T, 1], 2).inverse()
    assert u.coeffs == (Polynomial.one(), 2 * T, 4 * T * T - 1)
    assert u == named_series("chebyshev_u", 2)


def test_inverse_requires_unit():
    with pytest.raises(NotAUnit):
        TruncatedSeries.from_coeffs([0, 1], 2).inverse()
    with pytest.raises(NotAUnit):
        TruncatedSeries.from_coeffs([T, 1], 2).inverse()


def test_inverse_round_trip_random():
    rng = random.Random(5)
    for _ in range(25):
        coeffs = [Fraction(rng.randrange(1, 5))] + [
            Fraction(rng.randrange(-4, 5), rng.randrange(1, 3)) for _ in range(5)
        ]
        s = TruncatedSeries(coeffs)
        assert s * s.inverse() == TruncatedSeries.one(5)


def test_shift_and_poly_division():
    narayana = named_series("narayana", 3)
    f = (narayana - 1).shift_div_x(1).div_poly(T)
    assert f.order == 2
    assert f.coeffs == (Polynomial.one(), 1 + T, 1 + 3 * T + T * T)
    assert f == named_series("narayana_shift", 2)
    with pytest.raises(NotDivisibleByX):
        narayana.shift_div_x(1)


def test_pow():
    x = TruncatedSeries.x(4)
    assert x ** 0 == TruncatedSeries.one(4)
    t_ser = named_series("fuss", 4, r=2)
    lhs = (x * t_ser ** 2) * (x * t_ser ** 3)
    assert lhs == (x * x) * t_ser ** 5


def test_solve_fixed_point_checks_contraction():
    with pytest.raises(NotAContraction):
        solve_fixed_point(lambda f: f + 1, 3)


def test_motzkin_functional_equation():
    m = named_series("motzkin_ab", 3)
    assert m.coefficient(2) == A * A + B
    assert m.coefficient(3) == A ** 3 + 3 * A * B
    # both shapes of the defining relation agree
    one = TruncatedSeries.one(3)
    x = TruncatedSeries.x(3)
    again = (one - x.scale(A) - (x * x * m).scale(B)).inverse()
    assert again == m


def test_schroder_small_values():
    s = named_series("schroder_small", 2)
    assert s.coeffs == (Polynomial.one(), Polynomial.one(), Q + 2)


def test_schroder_large_at_one():
    r_ser = named_series("schroder_large", 2).substitute_params({"q": 1})
    assert [c.constant_value() for c in r_ser.coeffs] == [1, 2, 6]


def test_delannoy_series():
    d = named_series("delannoy", 2)
    assert [c.constant_value() for c in d.coeffs] == [1, 3, 13]


def test_narayana_bridges():
    n_ser = named_series("narayana", 8)
    assert n_ser.substitute_params({"t": Q + 1}) == named_series("schroder_large", 8)
    cat = named_series("catalan", 8)
    assert n_ser.substitute_params({"t": 1}) == cat


def test_valley_series_trivial_and_examples():
    zero = TruncatedSeries.zero(5)
    assert valley_series(zero, zero, zero) == TruncatedSeries.one(5)
    assert valley_series_ab(TruncatedSeries.x(5), zero) == TruncatedSeries.one(5)

    x = TruncatedSeries.x(5)
    one = TruncatedSeries.one(5)
    alpha = x * (one - x).inverse()
    beta = x * (one - x.scale(2)).inverse()
    v = valley_series_ab(alpha, beta)
    assert [c.constant_value() for c in v.coeffs] == [1, 0, 1, 4, 13, 40]

    v_fib = valley_series_ab(alpha, alpha)
    assert [c.constant_value() for c in v_fib.coeffs] == [1, 0, 1, 3, 8, 21]


def test_valley_series_matches_ab_form():
    rng = random.Random(3)
    for _ in range(15):
        order = 6
        alpha = TruncatedSeries(
            [0] + [Fraction(rng.randrange(-3, 4)) for _ in range(order)]
        )
        beta = TruncatedSeries(
            [0] + [Fraction(rng.randrange(-3, 4)) for _ in range(order)]
        )
        assert valley_series_ab(alpha, beta) == valley_series(alpha, beta, alpha * beta)


def test_valley_series_rejects_constant_term():
    with pytest.raises(NonzeroConstantTerm):
        valley_series_ab(TruncatedSeries.one(3), TruncatedSeries.zero(3))


def test_fixed_point_satisfies_equation():
    order = 6
    x = TruncatedSeries.x(order)
    one = TruncatedSeries.one(order)
    for name, phi in [
        ("catalan", lambda f: one + x * f * f),
        ("schroder_large", lambda f: one + (x * f).scale(Q) + x * f * f),
    ]:
        s = named_series(name, order)
        assert phi(s) == s


def test_series_division():
    order = 6
    num = named_series("catalan", order) - 1
    den = named_series("catalan", order)
    quotient = num / den
    assert quotient * den == num
    # C - 1 = xC^2 means (C-1)/C = xC
    assert quotient == TruncatedSeries.x(order) * den


def test_reciprocal_functional_equation_forms():
    order = 7
    one = TruncatedSeries.one(order)
    x = TruncatedSeries.x(order)
    a, b = A, B
    m = named_series("motzkin_ab", order)
    assert m == (one - x.scale(a) - (x * x * m).scale(b)).inverse()
    r = named_series("schroder_large", order)
    assert r == (one - x.scale(Q) - x * r).inverse()
    s = named_series("schroder_small", order)
    assert s == (one + x.scale(Q) - (x * s).scale(Q + 1)).inverse()
    n = named_series("narayana", order)
    assert n == (one - x.scale(T - 1) - x * n).inverse()
    f = named_series("narayana_shift", order)
    assert f == (one - x.scale(T + 1) - (x * x * f).scale(T)).inverse()
    for r_param in (1, 2, 3):
        t_ser = named_series("fuss", order, r=r_param)
        assert t_ser == (one - x * t_ser**r_param).inverse()
        assert t_ser == (
            one - x * t_ser ** (r_param - 1) - (x * x) * t_ser ** (2 * r_param)
        ).inverse()


def test_json_round_trip():
    s = named_series("narayana", 3)
    assert TruncatedSeries.from_json(s.to_json()) == s
