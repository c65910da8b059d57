from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathlie.polyring import (
    DimensionError,
    LayeringError,
    PrimeParams,
    TruncPoly,
    add,
    evaluate,
    exponent_index,
    exponent_vector,
    mul,
    partial,
    shift,
)


def poly(p, nvars, text_terms):
    return TruncPoly(p, nvars, text_terms)


def x(p, nvars, i):
    return TruncPoly.variable(p, nvars, i)


def polys(p, nvars):
    size = p**nvars
    return st.dictionaries(st.integers(0, size - 1), st.integers(0, p - 1), max_size=size).map(
        lambda d: TruncPoly(p, nvars, d)
    )


class TestExamples:
    def test_add_cancels_mod_p(self):
        f = x(3, 2, 1) + x(3, 2, 2).scale(2)
        assert add(f, x(3, 2, 1).scale(2)) == x(3, 2, 2).scale(2)

    def test_add_zero(self):
        f = x(3, 2, 1) * x(3, 2, 2) + 1
        assert f + TruncPoly.zero(3, 2) == f

    def test_add_doubles(self):
        sq = x(3, 1, 1) ** 2
        assert sq + sq == sq.scale(2)

    def test_mul_reduces_exponent(self):
        sq = x(3, 1, 1) ** 2
        assert mul(sq, sq) == sq

    def test_mul_distinct_variables(self):
        assert (x(3, 2, 1) * x(3, 2, 2)).terms == {(1, 1): 1}

    def test_mul_binomials(self):
        x1 = x(3, 1, 1)
        assert (x1 + 1) * (x1 + 2) == x1**2 + 2

    def test_partial_power_rule(self):
        f = x(3, 2, 1) ** 2 * x(3, 2, 2)
        assert partial(f, 1) == (x(3, 2, 1) * x(3, 2, 2)).scale(2)

    def test_second_partial(self):
        assert partial(x(3, 1, 1) ** 2, 1, 2) == 2

    def test_partial_absent_variable(self):
        assert not partial(x(3, 2, 2), 1)

    def test_partial_out_of_range(self):
        with pytest.raises(DimensionError):
            partial(x(3, 2, 2), 3)

    def test_shift_variable(self):
        one = TruncPoly.constant(3, 0, 1)
        assert shift(x(3, 1, 1), 1, one) == 1

    def test_shift_square(self):
        one = TruncPoly.constant(3, 0, 1)
        x1 = x(3, 1, 1)
        assert shift(x1**2, 1, one) == x1.scale(2) + 1

    def test_shift_of_independent_poly(self):
        h = TruncPoly.constant(3, 0, 2)
        assert not shift(x(3, 2, 2), 1, h)

    def test_shift_layering_violation(self):
        with pytest.raises(LayeringError):
            shift(x(3, 2, 2), 1, x(3, 2, 1))

    def test_evaluate(self):
        assert evaluate(x(3, 1, 1) ** 2 + 1, (2,)) == 2

    def test_evaluate_zero_and_constant(self):
        assert evaluate(TruncPoly.zero(3, 2), (1, 2)) == 0
        assert evaluate(TruncPoly.constant(5, 0, 4), ()) == 4

    def test_evaluate_wrong_length(self):
        with pytest.raises(DimensionError):
            evaluate(x(3, 2, 1), (1,))

    def test_mismatched_nvars(self):
        with pytest.raises(DimensionError):
            x(3, 1, 1) + x(3, 2, 1)
        with pytest.raises(DimensionError):
            x(3, 1, 1) * x(3, 2, 1)


class TestEncoding:
    def test_index_round_trip(self):
        for idx in range(27):
            assert exponent_index(exponent_vector(idx, 3, 3), 3) == idx

    def test_first_variable_least_significant(self):
        assert exponent_vector(1, 3, 2) == (1, 0)
        assert exponent_vector(3, 3, 2) == (0, 1)

    def test_tuple_keys_reduce(self):
        # x1^4 = x1^2 when p = 3
        assert TruncPoly(3, 1, {(4,): 1}) == x(3, 1, 1) ** 2

    def test_leading_uses_pdeg_order(self):
        f = x(3, 2, 2) + x(3, 2, 1) ** 2
        assert f.leading() == (exponent_index((0, 1), 3), 1)

    def test_zero_has_no_leading_term(self):
        with pytest.raises(ValueError):
            TruncPoly.zero(3, 1).leading()

    def test_params_rejects_even_prime(self):
        with pytest.raises(ValueError, match="odd prime"):
            PrimeParams(2, 2)
        with pytest.raises(ValueError):
            PrimeParams(9, 2)
        with pytest.raises(ValueError):
            PrimeParams(3, 0)

    def test_basis_size(self):
        assert PrimeParams(3, 3).basis_size == 13
        assert PrimeParams(5, 2).basis_size == 6


@settings(max_examples=60, deadline=None)
@given(polys(3, 2), polys(3, 2), polys(3, 2))
def test_ring_axioms_p3(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + a.scale(2) == 0
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(polys(5, 2), polys(5, 2))
def test_ring_axioms_p5(a, b):
    assert a * (b + 1) == a * b + a
    assert a - b + b == a


@settings(max_examples=40, deadline=None)
@given(polys(3, 3), polys(3, 3))
def test_product_is_pointwise(a, b):
    for pt in product(range(3), repeat=3):
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) % 3


def test_frobenius_consistency():
    # reducing x^e to x^(e - (p-1)) never changes a value
    for e in range(1, 9):
        f = TruncPoly(3, 1, {(e,): 1})
        for v in range(3):
            assert f.evaluate((v,)) == pow(v, e, 3)


def test_taylor_equals_substitution_exhaustive_p3():
    p = 3
    for nvars in range(1, 4):
        for idx in range(p**nvars):
            f = TruncPoly.monomial(p, nvars, idx)
            for i in range(1, nvars + 1):
                for hidx in range(p ** (i - 1)):
                    for c in range(1, p):
                        h = TruncPoly.monomial(p, i - 1, hidx, c)
                        assert f.shift(i, h) == f.taylor_shift(i, h)


@settings(max_examples=50, deadline=None)
@given(polys(5, 2), polys(5, 1))
def test_taylor_equals_substitution_p5(f, h):
    assert f.shift(2, h) == f.taylor_shift(2, h)
