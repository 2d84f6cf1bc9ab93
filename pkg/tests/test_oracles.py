from fractions import Fraction

import pytest

from valleydyck.errors import BadParams, IndexOutOfRange
from valleydyck.oracles import (
    catalan_number,
    chebyshev_u_at,
    chebyshev_u_polynomial,
    delannoy_hstep_count,
    delannoy_number,
    fibonacci_number,
    formula_vn,
    fuss_catalan_number,
    motzkin_polynomial,
    narayana_polynomial,
    oracle,
    schroder_large_polynomial,
    schroder_small_polynomial,
)
from valleydyck.paths import enumerate_family
from valleydyck.polynomials import Polynomial
from valleydyck.series import named_series, valley_series, valley_series_ab
from valleydyck.weights import registry_get

A = Polynomial.var("a")
B = Polynomial.var("b")
C = Polynomial.var("c")
D = Polynomial.var("d")
Q = Polynomial.var("q")
T = Polynomial.var("t")


def test_catalan_against_brute_force():
    for n in range(7):
        assert catalan_number(n) == len(list(enumerate_family("dyck", n)))


def test_fibonacci_convention():
    assert [fibonacci_number(k) for k in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]


def test_narayana_small():
    assert narayana_polynomial(0) == 1
    assert narayana_polynomial(1) == T
    assert narayana_polynomial(2) == T + T * T
    assert oracle("narayana", 2) == T + T * T


def test_narayana_bridges():
    for n in range(13):
        nar = narayana_polynomial(n)
        assert nar.substitute({"t": 1}) == catalan_number(n)
        assert nar.substitute({"t": Q + 1}) == schroder_large_polynomial(n)


def test_small_schroder_scaling():
    for n in range(1, 13):
        assert (Q + 1) * schroder_small_polynomial(n) == schroder_large_polynomial(n)
    assert schroder_small_polynomial(0) == 1


def test_delannoy_numbers():
    assert [delannoy_number(n) for n in range(5)] == [1, 3, 13, 63, 321]
    for n in range(21):
        delannoy_number(n)  # both binomial forms compared internally


def test_chebyshev_recurrence_and_series():
    series = named_series("chebyshev_u", 20)
    for n in range(21):
        assert chebyshev_u_polynomial(n) == series.coefficient(n)
    assert chebyshev_u_at(2, Fraction(3, 2)) == Polynomial.const(8)
    assert chebyshev_u_at(2, B + C) == 4 * (B + C) ** 2 - 1


def enumerate_complete_trees(internal: int, arity: int):
    """All complete arity-ary trees with the given number of internal vertices.

    A tree is either a leaf (None) or a tuple of exactly `arity` subtrees.
    """
    if internal == 0:
        yield None
        return

    def splits(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in splits(total - first, slots - 1):
                yield (first,) + rest

    for sizes in splits(internal - 1, arity):
        children_options = [list(enumerate_complete_trees(s, arity)) for s in sizes]

        def combine(options):
            if not options:
                yield ()
                return
            for head in options[0]:
                for tail in combine(options[1:]):
                    yield (head,) + tail

        for children in combine(children_options):
            yield children


def test_fuss_catalan():
    assert fuss_catalan_number(2, 2) == 3
    assert [fuss_catalan_number(n, 1) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert [fuss_catalan_number(n, 2) for n in range(5)] == [1, 1, 3, 12, 55]
    with pytest.raises(BadParams):
        fuss_catalan_number(2, 0)
    # independent oracle: literally enumerate complete (r+1)-ary trees
    for r in (1, 2, 3):
        for n in range(5):
            count = sum(1 for _ in enumerate_complete_trees(n, r + 1))
            assert count == fuss_catalan_number(n, r), (r, n)


def test_motzkin_values():
    assert motzkin_polynomial(2) == A * A + B
    assert motzkin_polynomial(3) == A ** 3 + 3 * A * B
    ones = motzkin_polynomial(6).substitute({"a": 1, "b": 1})
    assert ones == 51


def test_oracle_dispatch():
    assert oracle("catalan", 3) == 5
    assert oracle("delannoy", 2) == 13
    assert oracle("fuss", 2, r=2) == 3
    assert oracle("narayana", 2, t=1) == 2
    with pytest.raises(BadParams):
        oracle("unknown", 1)
    with pytest.raises(BadParams):
        oracle("fuss", 2)


def test_formula_geometric_examples():
    assert formula_vn("geom_3x", 0) == 1
    assert formula_vn("geom_3x", 3) == 4
    assert [formula_vn("geom_fib", n).constant_value() for n in range(6)] == [
        1,
        0,
        1,
        3,
        8,
        21,
    ]


def test_difference_formulas_match_series():
    order = 10
    cases = [
        ("motzkin_diff", "motzkin_ab", {}),
        ("schroder_large_diff", "schroder_large_q", {}),
        ("schroder_small_diff", "schroder_small_q", {}),
        ("narayana_diff", "narayana_t", {}),
        ("narayana_shift_diff", "narayana_shift_t", {}),
    ]
    for formula, table, params in cases:
        alpha, beta, _ = registry_get(table, order, **params).to_series()
        series = valley_series_ab(alpha, beta)
        for n in range(order + 1):
            assert formula_vn(formula, n) == series.coefficient(n), (formula, n)


def test_chebyshev_closed_form_symbolic():
    order = 8
    alpha, beta, _ = registry_get("chebyshev_abcd", order).to_series()
    series = valley_series_ab(alpha, beta)
    for n in range(order + 1):
        assert formula_vn("chebyshev_closed", n) == series.coefficient(n)


def test_abcd_cases():
    # ad = (a-b)c: pure power growth
    assert formula_vn("abcd_power", 4, a=2, b=1, c=2, d=1) == 2 * 3 ** 2
    # ad = (a-b)c + 1: Chebyshev evaluated at the half sum
    assert formula_vn("abcd_chebyshev", 2, a=3, b=2, c=2, d=1) == 2
    assert formula_vn("abcd_chebyshev", 3, a=3, b=2, c=2, d=1) == 2 * 4
    assert formula_vn("abcd_chebyshev", 4, a=3, b=2, c=2, d=1) == formula_vn(
        "chebyshev_closed", 4, a=3, b=2, c=2, d=1
    )
    # a + d = 3 on top: even-index Fibonacci values
    assert formula_vn("abcd_fibonacci", 3, a=2, b=1, c=1, d=1) == fibonacci_number(4)
    with pytest.raises(BadParams):
        formula_vn("abcd_power", 4, a=2, b=1, c=3, d=1)


def test_delannoy_convolution():
    assert formula_vn("delannoy_convolution", 4, multiplier=7) == 245
    assert formula_vn("delannoy_convolution", 1, multiplier=7) == 0


def test_fuss_collapse_small_value():
    # the two-route value at n=2, r=1 with m = r+1
    assert formula_vn("fuss_asym_collapse", 2, r=1, m=2) == 1
    assert formula_vn("fuss_asym", 2, r=1, m=2) == 1


def test_fuss_formulas_match_series():
    order = 7
    for r in (1, 2):
        for m in (r, r + 1, r + 2):
            sym_spec = registry_get("fuss_sym", order, m=m, r=r)
            alpha, beta, _ = sym_spec.to_series()
            series = valley_series_ab(alpha, beta)
            for n in range(order + 1):
                assert formula_vn("fuss_sym", n, m=m, r=r) == series.coefficient(n), (
                    "sym",
                    r,
                    m,
                    n,
                )
            asym_spec = registry_get("fuss_asym", order, m=m, r=r)
            alpha, beta, _ = asym_spec.to_series()
            series = valley_series_ab(alpha, beta)
            for n in range(order + 1):
                assert formula_vn("fuss_asym", n, m=m, r=r) == series.coefficient(n), (
                    "asym",
                    r,
                    m,
                    n,
                )


def test_fuss_cubic_matches_three_weight_series():
    order = 7
    for r in (1, 2):
        for m in (r, r + 1, r + 2):
            spec = registry_get("fuss_cubic", order, m=m, r=r)
            series = valley_series(*spec.to_series())
            for n in range(order + 1):
                assert formula_vn("fuss_cubic", n, m=m, r=r) == series.coefficient(n), (
                    r,
                    m,
                    n,
                )


def test_collapse_formulas_agree():
    for r in (1, 2, 3):
        for n in range(8):
            assert formula_vn("fuss_asym_collapse", n, r=r) == formula_vn(
                "fuss_asym", n, m=r + 1, r=r
            )
            assert formula_vn("fuss_cubic_collapse", n, r=r) == formula_vn(
                "fuss_cubic", n, m=r + 1, r=r
            )


def test_hstep_count():
    assert delannoy_hstep_count(1) == 1
    assert delannoy_hstep_count(2) == 6
    assert delannoy_hstep_count(3) == 35
    with pytest.raises(IndexOutOfRange):
        delannoy_hstep_count(0)


def test_formula_index_validation():
    with pytest.raises(IndexOutOfRange):
        formula_vn("geom_3x", -1)
    with pytest.raises(BadParams):
        formula_vn("nope", 1)
