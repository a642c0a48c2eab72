from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from altruns.exact_algebra import (
    ONE,
    ZERO,
    PartialFractionExpansion,
    RationalFunction,
    degree,
    denominator_degree,
    denominator_expand,
    factored_denominator,
    partial_fractions,
    pole_term_coefficient,
    poly,
    poly_add,
    poly_arith,
    poly_compose,
    poly_derivative,
    poly_divrem,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_scale,
    poly_sub,
    poly_to_strings,
    rational_function,
    reassemble,
    rf_add,
    rf_derivative,
    rf_mul_poly,
    series_coefficients,
    sturm_real_root_audit,
)

fractions_st = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys_st = st.lists(fractions_st, max_size=6).map(poly)


def test_poly_normalization():
    assert poly((0, 1, 0)) == (0, 1)
    assert poly(()) == ZERO
    assert poly((Fraction(1, 2),)) == (Fraction(1, 2),)
    assert degree(ZERO) == -1
    assert degree((1, 2, 3)) == 2


def test_poly_basic_ops():
    a = poly((1, 2))
    b = poly((3, 0, 1))
    assert poly_add(a, b) == (4, 2, 1)
    assert poly_sub(b, a) == (2, -2, 1)
    assert poly_mul(a, b) == (3, 6, 1, 2)
    assert poly_mul(a, ZERO) == ZERO
    assert poly_derivative(b) == (0, 2)
    assert poly_derivative(poly((5,))) == ZERO
    assert poly_scale(a, Fraction(1, 2)) == (Fraction(1, 2), 1)
    assert poly_eval(b, 2) == 7
    assert poly_compose(poly((0, 1, 1)), poly((-1, 1))) == (0, -1, 1)


def test_poly_divrem():
    q, r = poly_divrem(poly((0, 0, 0, 4)), poly((1, -3, 2)))
    assert q == (3, 2) and r == (-3, 7)
    q, r = poly_divrem(poly((1, 2)), poly((1, 1, 1)))
    assert q == ZERO and r == (1, 2)
    with pytest.raises(ZeroDivisionError):
        poly_divrem(poly((1,)), ZERO)


@given(polys_st, polys_st)
def test_divrem_reassembles(a, b):
    if not b:
        return
    q, r = poly_divrem(a, b)
    assert poly_add(poly_mul(q, b), r) == a
    assert degree(r) < degree(b)


def test_poly_arith_dispatch():
    assert poly_arith((1, 1), (1, -1), "add") == (2,)
    assert poly_arith((1, 1), (1, -1), "sub") == (0, 2)
    assert poly_arith((1, 1), (1, -1), "mul") == (1, 0, -1)
    assert poly_arith((1, 0, 3), None, "derivative") == (0, 6)
    assert poly_arith((1, 0, -1), (1, 1), "divrem") == ((1, -1), ZERO)
    with pytest.raises(ValueError):
        poly_arith((1,), (1,), "pow")


def test_poly_gcd():
    a = poly_mul(poly((1, 1)), poly((2, 1)))
    b = poly_mul(poly((1, 1)), poly((3, 1)))
    assert poly_gcd(a, b) == (1, 1)
    assert poly_gcd(a, ZERO) == poly_scale(a, Fraction(1, a[-1]))
    assert poly_gcd(ZERO, ZERO) == ZERO


def test_poly_strings():
    assert poly_to_strings(poly((Fraction(19, 4), 2))) == ["19/4", "2"]


def test_factored_denominator_canonical():
    assert factored_denominator({1: 2, 3: 1}) == ((3, 1), (1, 2))
    assert factored_denominator([(2, 1), (1, 0)]) == ((2, 1),)
    assert denominator_degree({2: 3, 1: 1}) == 4
    assert denominator_expand({2: 1, 1: 1}) == (1, -3, 2)
    assert denominator_expand({}) == ONE
    with pytest.raises(ValueError):
        factored_denominator({0: 1})
    with pytest.raises(ValueError):
        factored_denominator({2: -1})


def test_rational_function_reduction():
    f = rational_function(poly_mul(poly((1, -2)), poly((1, 1))), {2: 1, 1: 1})
    assert f.numerator == (1, 1) and f.denominator == ((1, 1),)
    assert rational_function(ZERO, {3: 2}) == RationalFunction(ZERO, ())
    with pytest.raises(ValueError):
        RationalFunction(poly((1, -2)), ((2, 1),))
    with pytest.raises(ValueError):
        RationalFunction(ZERO, ((2, 1),))


def test_rf_arithmetic():
    f = rational_function((0, 0, 2), {1: 1})  # 2x^2/(1-x)
    g = rf_mul_poly(f, (0, 2))  # 4x^3/(1-x)
    assert g.numerator == (0, 0, 0, 4) and g.denominator == ((1, 1),)
    h = rf_add(f, g)
    assert h.numerator == (0, 0, 2, 4) and h.denominator == ((1, 1),)
    d = rf_derivative(f)
    assert d.numerator == (0, 4, -2) and d.denominator == ((1, 2),)
    assert rf_derivative(rational_function((1, 0, 1), ())) == rational_function((0, 2), ())


def test_series_coefficients():
    f = rational_function((0, 0, 2), {1: 1})
    assert series_coefficients(f, 5) == [0, 0, 2, 2, 2, 2]
    g = rational_function((0, 0, 0, 4), {2: 1, 1: 1})
    assert series_coefficients(g, 6) == [0, 0, 0, 4, 12, 28, 60]
    assert series_coefficients(rational_function((1,), {2: 1}), 4) == [1, 2, 4, 8, 16]
    assert series_coefficients(rational_function((3, 1), ()), 3) == [3, 1, 0, 0]
    with pytest.raises(ValueError):
        series_coefficients(f, -1)


def test_partial_fractions_simple_pole():
    f = rational_function((1,), {1: 1})
    pfe = partial_fractions(f)
    assert pfe.pole_terms == ((1, 1, 1),) and pfe.poly_part == ZERO


def test_partial_fractions_no_denominator():
    f = rational_function((3, 0, 2), ())
    pfe = partial_fractions(f)
    assert pfe.pole_terms == () and pfe.poly_part == (3, 0, 2)


def test_partial_fractions_known_expansion():
    # 4x^3/((1-2x)(1-x)) = 1/(1-2x) - 4/(1-x) + 3 + 2x
    f = rational_function((0, 0, 0, 4), {2: 1, 1: 1})
    pfe = partial_fractions(f)
    assert pfe.pole_terms == ((2, 1, 1), (1, 1, -4))
    assert pfe.poly_part == (3, 2)


@st.composite
def rational_functions_st(draw):
    ks = draw(st.lists(st.integers(1, 4), unique=True, min_size=1, max_size=3))
    den = {k: draw(st.integers(1, 2)) for k in ks}
    size = sum(den.values()) + draw(st.integers(0, 2))
    num = draw(st.lists(fractions_st, min_size=1, max_size=size + 1).map(poly))
    return rational_function(num, den)


@given(rational_functions_st())
def test_partial_fractions_reassemble(f):
    assert reassemble(partial_fractions(f)) == f


@given(rational_functions_st())
def test_partial_fractions_match_series(f):
    pfe = partial_fractions(f)
    coeffs = series_coefficients(f, 8)
    for n in range(9):
        total = pfe.poly_part[n] if n < len(pfe.poly_part) else Fraction(0)
        for k, m, c in pfe.pole_terms:
            total += pole_term_coefficient(k, m, c, n)
        assert total == coeffs[n]


def test_sturm_examples():
    # 2x + 4x^2: roots 0 and -1/2
    assert sturm_real_root_audit((0, 2, 4)) == (2, True)
    assert sturm_real_root_audit((1, 0, 1)) == (0, False)
    assert sturm_real_root_audit((-6, 11, -6, 1)) == (3, False)  # roots 1, 2, 3
    assert sturm_real_root_audit((0, 2)) == (1, True)
    assert sturm_real_root_audit((4,)) == (0, True)
    with pytest.raises(ValueError):
        sturm_real_root_audit(())


@given(st.lists(st.integers(-4, 4), unique=True, min_size=1, max_size=4),
       st.lists(st.integers(1, 2), min_size=4, max_size=4))
def test_sturm_constructed_roots(roots, mults):
    p = ONE
    for r, m in zip(roots, mults):
        for _ in range(m):
            p = poly_mul(p, poly((-r, 1)))
    count, nonpositive = sturm_real_root_audit(p)
    assert count == len(roots)
    assert nonpositive == all(r <= 0 for r in roots)


def test_expansion_type_is_frozen():
    pfe = PartialFractionExpansion(((2, 1, Fraction(2)),), (3, 2))
    with pytest.raises(Exception):
        pfe.poly_part = ZERO
