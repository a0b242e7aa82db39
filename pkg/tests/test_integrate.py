import random
from fractions import Fraction

import pytest
import sympy

from hodgelab.exterior import DifferentialForm, d
from hodgelab.integrate import (
    DegenerateSimplexError,
    EmbeddedChain,
    EmbeddedSimplex,
    adjointness_check,
    chain_boundary,
    integrate_form,
    l2_inner,
    norm_functional,
    orientation_sign,
    standard_simplex,
    stokes_check,
    unit_cube_chain,
)
from hodgelab.poly import Polynomial

import generators as gen

X, Y = Polynomial.variable(2, 1), Polynomial.variable(2, 2)
F = DifferentialForm.function
GREEN = DifferentialForm(2, 1, {(1,): -Y, (2,): X})

SQUARE = EmbeddedChain.of(
    EmbeddedSimplex([(0, 0), (1, 0), (1, 1)]),
    EmbeddedSimplex([(0, 0), (1, 1), (0, 1)]),
)
SQUARE_LOOP = EmbeddedChain.of(*[
    EmbeddedSimplex([a, b])
    for a, b in [((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (0, 0))]
])


def sympy_integral(w: DifferentialForm, s: EmbeddedSimplex) -> Fraction:
    """Pull back by hand with sympy determinants and integrate iteratively."""
    n, p = s.ambient, s.dimension
    ts = sympy.symbols(f"t1:{p + 1}")
    v0 = [sympy.Rational(c.numerator, c.denominator) for c in s.vertices[0]]
    edges = [[sympy.Rational(c.numerator, c.denominator) - a for a, c in zip(v0, v)]
             for v in s.vertices[1:]]
    xs = [v0[i] + sum(ts[k] * edges[k][i] for k in range(p)) for i in range(n)]
    jac = sympy.Matrix(edges).T          # n x p
    integrand = sympy.Integer(0)
    for idx, coeff in w.items():
        expr = sympy.Integer(0)
        for exp, c in coeff.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for xi, e in zip(xs, exp):
                term *= xi ** e
            expr += term
        minor = jac.extract([i - 1 for i in idx], list(range(p))).det() if p else 1
        integrand += expr * minor
    for k in range(p - 1, -1, -1):
        integrand = sympy.integrate(integrand, (ts[k], 0, 1 - sum(ts[:k])))
    value = sympy.nsimplify(integrand) * s.orientation
    return Fraction(int(sympy.numer(value)), int(sympy.denom(value)))


def test_reference_triangle_area():
    area = DifferentialForm.blade(2, 1, 2)
    assert integrate_form(area, EmbeddedChain.of(standard_simplex(2))) == Fraction(1, 2)


def test_green_loop_integral():
    assert integrate_form(GREEN, SQUARE_LOOP) == 2


def test_unit_square_triangulation_has_unit_area():
    assert integrate_form(DifferentialForm.blade(2, 1, 2), SQUARE) == 1
    assert integrate_form(DifferentialForm.blade(3, 1, 2, 3), unit_cube_chain(3)) == 1
    assert all(orientation_sign(s) * s.orientation == 1 for _, s in unit_cube_chain(3).terms)


def test_zero_forms_evaluate_at_points():
    pt = EmbeddedChain.of(EmbeddedSimplex([(2, 3)]))
    assert integrate_form(F(X * Y + 1), pt) == 7


def test_orientation_reversal_negates():
    rng = random.Random(71)
    for _ in range(20):
        n = rng.randint(1, 3)
        p = rng.randint(0, n)
        w, c = gen.form(rng, n, p), gen.chain(rng, n, p)
        assert integrate_form(w, -c) == -integrate_form(w, c)
        flipped = EmbeddedChain(n, p, [(k, s.reversed()) for k, s in c.terms])
        assert integrate_form(w, flipped) == -integrate_form(w, c)


def test_integration_is_bilinear():
    rng = random.Random(73)
    a, b = gen.form(rng, 3, 2), gen.form(rng, 3, 2)
    c1, c2 = gen.chain(rng, 3, 2), gen.chain(rng, 3, 2)
    assert integrate_form(a + b, c1) == integrate_form(a, c1) + integrate_form(b, c1)
    assert integrate_form(a, c1 + c2) == integrate_form(a, c1) + integrate_form(a, c2)
    assert integrate_form(a.scale(Fraction(2, 3)), c1) == Fraction(2, 3) * integrate_form(a, c1)


def test_integral_against_sympy_oracle():
    rng = random.Random(79)
    for _ in range(25):
        n = rng.randint(1, 3)
        p = rng.randint(1, n)
        w, s = gen.form(rng, n, p, max_degree=2), gen.simplex(rng, n, p)
        assert integrate_form(w, EmbeddedChain.of(s)) == sympy_integral(w, s)


def test_degree_mismatch_rejected():
    with pytest.raises(ValueError):
        integrate_form(GREEN, SQUARE)


def test_degenerate_simplex_rejected():
    with pytest.raises(DegenerateSimplexError):
        EmbeddedSimplex([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DegenerateSimplexError):
        EmbeddedSimplex([(0,), (1,), (2,)])


# -- boundaries ---------------------------------------------------------------

def test_triangle_boundary_formula():
    v0, v1, v2 = (0, 0), (1, 0), (0, 1)
    tri = EmbeddedChain.of(EmbeddedSimplex([v0, v1, v2]))
    expected = EmbeddedChain(2, 1, [
        (1, EmbeddedSimplex([v1, v2])), (-1, EmbeddedSimplex([v0, v2])), (1, EmbeddedSimplex([v0, v1]))])
    assert chain_boundary(tri) == expected


def test_boundary_of_boundary_of_tetrahedron():
    tet = EmbeddedChain.of(standard_simplex(3))
    assert chain_boundary(chain_boundary(tet)).is_empty()


def test_closed_loop_has_empty_boundary():
    assert chain_boundary(SQUARE_LOOP).is_empty()


def test_square_boundary_is_the_loop():
    assert chain_boundary(SQUARE) == SQUARE_LOOP


def test_boundary_of_points_rejected():
    with pytest.raises(ValueError):
        chain_boundary(EmbeddedChain.of(EmbeddedSimplex([(0, 0)])))


def test_boundary_squared_random():
    rng = random.Random(83)
    for _ in range(30):
        n = rng.randint(2, 4)
        c = gen.chain(rng, n, rng.randint(2, n), size=3)
        assert chain_boundary(chain_boundary(c)).is_empty()


# -- Stokes ------------------------------------------------------------------

def test_green_stokes():
    res = stokes_check(GREEN, SQUARE)
    assert (res.lhs, res.rhs, res.equal) == (2, 2, True)


def test_shared_edge_cancels():
    rng = random.Random(89)
    w = gen.form(rng, 2, 1)
    glued = SQUARE
    outer = SQUARE_LOOP
    assert integrate_form(w, chain_boundary(glued)) == integrate_form(w, outer)
    assert stokes_check(w, glued).equal


def test_exact_form_over_closed_chain():
    rng = random.Random(97)
    w = d(F(gen.poly(rng, 2)))
    res = stokes_check(w, SQUARE)
    assert res.equal
    assert integrate_form(w, SQUARE_LOOP) == 0


def test_stokes_random():
    rng = random.Random(101)
    for _ in range(60):
        n = rng.randint(1, 4)
        p = rng.randint(0, n - 1)
        assert stokes_check(gen.form(rng, n, p), gen.chain(rng, n, p + 1)).equal


def test_periods_agree_for_cohomologous_forms():
    rng = random.Random(103)
    for _ in range(10):
        w = gen.form(rng, 3, 1)
        a = F(gen.poly(rng, 3))
        loop = chain_boundary(gen.chain(rng, 3, 2))
        assert integrate_form(w + d(a), loop) == integrate_form(w, loop)


# -- L2 products --------------------------------------------------------------

def test_l2_examples():
    dx = DifferentialForm.blade(2, 1)
    tri = EmbeddedChain.of(standard_simplex(2))
    assert l2_inner(dx, dx, tri) == Fraction(1, 2)
    assert l2_inner(DifferentialForm.zero(2, 1), GREEN, tri) == 0
    assert norm_functional(dx, SQUARE) == 1
    assert norm_functional(DifferentialForm.zero(2, 1), SQUARE) == 0


def test_l2_symmetric_and_semidefinite():
    rng = random.Random(107)
    cube = unit_cube_chain(3)
    for _ in range(10):
        p = rng.randint(0, 3)
        a, b = gen.form(rng, 3, p, max_degree=2), gen.form(rng, 3, p, max_degree=2)
        assert l2_inner(a, b, cube) == l2_inner(b, a, cube)
        assert norm_functional(a, cube) >= 0
        c = gen.rational(rng)
        assert norm_functional(a.scale(c), cube) == c * c * norm_functional(a, cube)


def test_l2_needs_full_domain():
    with pytest.raises(ValueError):
        l2_inner(GREEN, GREEN, SQUARE_LOOP)


# -- adjointness -----------------------------------------------------------------

def test_adjointness_with_boundary_vanishing_coefficient():
    bump = X * (1 - X) * Y * (1 - Y)
    rng = random.Random(109)
    for _ in range(5):
        a = F(bump * gen.poly(rng, 2, max_degree=1))
        b = gen.form(rng, 2, 1, max_degree=2)
        res = adjointness_check(a, b, SQUARE)
        assert res.boundary_term == 0 and res.difference == 0


def test_adjointness_zero_form():
    res = adjointness_check(DifferentialForm.zero(2, 0), GREEN, SQUARE)
    assert res.lhs == res.rhs == 0


def test_adjointness_generic_difference_is_the_flux():
    rng = random.Random(113)
    for _ in range(10):
        p = rng.randint(0, 1)
        a = gen.form(rng, 2, p, max_degree=2)
        b = gen.form(rng, 2, p + 1, max_degree=2)
        res = adjointness_check(a, b, SQUARE)
        assert res.difference == res.boundary_term
