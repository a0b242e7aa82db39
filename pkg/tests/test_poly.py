import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgelab.poly import Polynomial, as_rational, poly_compose_scale, poly_partial

import generators as gen


x, y, z = (Polynomial.variable(3, i) for i in (1, 2, 3))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, n=3):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * n), coeffs, max_size=4))
    return Polynomial(n, terms)


def to_sympy(p: Polynomial, symbols):
    expr = sympy.Integer(0)
    for exp, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, exp):
            term *= s ** e
        expr += term
    return expr


def test_partial_examples():
    assert poly_partial(x ** 2 * y, 1) == 2 * x * y
    assert poly_partial(Polynomial.constant(3, 5), 1).is_zero()


def test_partial_index_out_of_range():
    with pytest.raises(IndexError):
        x.partial(4)
    with pytest.raises(IndexError):
        x.partial(0)


def test_mixed_partials_commute_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(100):
        p = gen.poly(rng, 3, max_degree=4, terms=5)
        assert p.partial(2).partial(1) == p.partial(1).partial(2)


@pytest.mark.parametrize("p, expected", [
    (x ** 2 * y, Polynomial(4, {(3, 2, 1, 0): 1})),
    (Polynomial.constant(3, 1), Polynomial.constant(4, 1)),
    (x + y ** 2, Polynomial(4, {(1, 1, 0, 0): 1, (2, 0, 2, 0): 1})),
])
def test_compose_scale(p, expected):
    assert poly_compose_scale(p) == expected


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_partial_is_a_derivation(p, q):
    for i in (1, 2, 3):
        assert (p * q).partial(i) == q * p.partial(i) + p * q.partial(i)
        assert (p + q).partial(i) == p.partial(i) + q.partial(i)


@given(polys())
def test_self_difference_is_empty(p):
    assert (p - p).terms == {}


def test_zero_coefficients_are_never_stored():
    p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): Fraction(1)}


def test_rendering():
    p = Fraction(3, 2) * x ** 2 * y - z + 1
    assert str(p) == "3/2*x1^2*x2 - x3 + 1"
    assert str(Polynomial.zero(2)) == "0"
    assert str(-x) == "-x1"


def test_big_integers_do_not_overflow():
    p = (x + 1) ** 40
    assert p.evaluate([1, 0, 0]) == 2 ** 40


def test_integrate_unit_and_substitute():
    # integral of t^2 x over t in [0,1] is x/3
    p = Polynomial(2, {(2, 1): 1})
    assert p.integrate_unit(1) == Polynomial(1, {(1,): Fraction(1, 3)})
    # (x + y)^2 with x -> y, y -> 1
    q = (x + y) ** 2
    out = q.substitute([y, Polynomial.constant(3, 1), z])
    assert out == (y + 1) ** 2


@pytest.mark.parametrize("exponents", [(0,), (3,), (1, 0), (2, 3), (0, 0, 0), (1, 2, 1), (4, 0, 2)])
def test_simplex_moment_against_iterated_integration(exponents):
    # independent route: sympy integrates over the simplex one variable at a time
    n = len(exponents)
    ts = sympy.symbols(f"t1:{n + 1}")
    expr = sympy.Integer(1)
    for t, a in zip(ts, exponents):
        expr *= t ** a
    for k in range(n - 1, -1, -1):
        upper = 1 - sum(ts[:k])
        expr = sympy.integrate(expr, (ts[k], 0, upper))
    expected = Fraction(int(sympy.numer(expr)), int(sympy.denom(expr)))
    assert Polynomial(n, {exponents: 1}).simplex_moment() == expected


def test_substitute_matches_sympy():
    rng = random.Random(3)
    X = sympy.symbols("x1:4")
    for _ in range(10):
        p = gen.poly(rng, 3)
        subs = [gen.poly(rng, 3, max_degree=2) for _ in range(3)]
        ours = to_sympy(p.substitute(subs), X)
        theirs = to_sympy(p, X).subs({X[i]: to_sympy(subs[i], X) for i in range(3)}, simultaneous=True)
        assert sympy.expand(ours - theirs) == 0


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/2") == Fraction(3, 2)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        x + Polynomial.variable(2, 1)
