"""Exact integration of polynomial forms over affine simplices in R^n.

A p-simplex is pulled back to the standard simplex through its affine
parametrization ``x = v0 + sum_i t_i (v_i - v0)``; the pulled-back
Jacobian 1-forms are wedged together, so the determinant comes out of the
exterior algebra itself.  Monomials are then integrated with
``prod(a_i!) / (p + sum(a_i))!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Sequence, Tuple

from . import linalg
from .exterior import (
    DifferentialForm,
    codifferential,
    exterior_derivative,
    hodge_star,
    permutation_sign,
    wedge,
)
from .poly import Polynomial, as_rational

Point = Tuple[Fraction, ...]


class DegenerateSimplexError(ValueError):
    """The vertices of a simplex are affinely dependent."""


@dataclass(frozen=True)
class EmbeddedSimplex:
    vertices: Tuple[Point, ...]
    orientation: int = 1

    def __init__(self, vertices: Sequence[Sequence], orientation: int = 1):
        pts = tuple(tuple(as_rational(c) for c in v) for v in vertices)
        if not pts:
            raise ValueError("a simplex needs at least one vertex")
        n = len(pts[0])
        if n < 1 or any(len(v) != n for v in pts):
            raise ValueError("vertices must share one ambient dimension >= 1")
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        p = len(pts) - 1
        if p > n:
            raise DegenerateSimplexError(f"{p}-simplex cannot be embedded in R^{n}")
        edges = [[b - a for a, b in zip(pts[0], v)] for v in pts[1:]]
        if edges and linalg.rank(edges) < p:
            raise DegenerateSimplexError(f"vertices {pts} are affinely dependent")
        object.__setattr__(self, "vertices", pts)
        object.__setattr__(self, "orientation", orientation)

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    def reversed(self) -> "EmbeddedSimplex":
        return EmbeddedSimplex(self.vertices, -self.orientation)

    def canonical(self) -> Tuple[Tuple[Point, ...], int]:
        """Sorted vertex tuple with the orientation sign folded in."""
        order = sorted(range(len(self.vertices)), key=lambda k: self.vertices[k])
        return tuple(self.vertices[k] for k in order), self.orientation * permutation_sign(order)


class EmbeddedChain:
    """Formal rational combination of oriented p-simplices in R^n."""

    __slots__ = ("ambient", "degree", "terms")

    def __init__(self, ambient: int, degree: int,
                 terms: Iterable[Tuple[object, EmbeddedSimplex]] = ()):
        self.ambient = ambient
        self.degree = degree
        clean: List[Tuple[Fraction, EmbeddedSimplex]] = []
        for coeff, s in terms:
            if s.ambient != ambient or s.dimension != degree:
                raise ValueError(
                    f"simplex of dimension {s.dimension} in R^{s.ambient} does not fit a "
                    f"{degree}-chain in R^{ambient}")
            clean.append((as_rational(coeff), s))
        self.terms = tuple(clean)

    @classmethod
    def of(cls, *simplices: EmbeddedSimplex) -> "EmbeddedChain":
        if not simplices:
            raise ValueError("cannot infer the shape of an empty chain")
        s0 = simplices[0]
        return cls(s0.ambient, s0.dimension, [(1, s) for s in simplices])

    def normalized(self) -> Dict[Tuple[Point, ...], Fraction]:
        """Canonical sparse form: sorted vertex tuple -> coefficient, zeros dropped."""
        out: Dict[Tuple[Point, ...], Fraction] = {}
        for coeff, s in self.terms:
            key, sign = s.canonical()
            out[key] = out.get(key, 0) + coeff * sign
        return {k: v for k, v in out.items() if v}

    def simplified(self) -> "EmbeddedChain":
        return EmbeddedChain(self.ambient, self.degree,
                             [(c, EmbeddedSimplex(k)) for k, c in sorted(self.normalized().items())])

    def is_empty(self) -> bool:
        return not self.normalized()

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddedChain):
            return NotImplemented
        return ((self.ambient, self.degree) == (other.ambient, other.degree)
                and self.normalized() == other.normalized())

    def __add__(self, other: "EmbeddedChain") -> "EmbeddedChain":
        if (self.ambient, self.degree) != (other.ambient, other.degree):
            raise ValueError("chains of different shape")
        return EmbeddedChain(self.ambient, self.degree, self.terms + other.terms)

    def __neg__(self) -> "EmbeddedChain":
        return self.scale(-1)

    def scale(self, c) -> "EmbeddedChain":
        c = as_rational(c)
        return EmbeddedChain(self.ambient, self.degree, [(c * k, s) for k, s in self.terms])

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"EmbeddedChain(R^{self.ambient}, degree={self.degree}, terms={len(self.terms)})"


def _integrate_simplex(w: DifferentialForm, s: EmbeddedSimplex) -> Fraction:
    n, p = w.dimension, w.degree
    v0 = s.vertices[0]
    if p == 0:
        return s.orientation * w[()].evaluate(v0)
    edges = [[b - a for a, b in zip(v0, v)] for v in s.vertices[1:]]
    # x_j(t) = v0_j + sum_i t_i * edges[i][j], as polynomials in t_1..t_p
    subst = []
    for j in range(n):
        terms = {(0,) * p: v0[j]}
        for i in range(p):
            e = [0] * p
            e[i] = 1
            terms[tuple(e)] = edges[i][j]
        subst.append(Polynomial(p, terms))
    # pulled-back coordinate differentials dx_j = sum_i edges[i][j] dt_i
    dxs = [DifferentialForm(p, 1, {(i + 1,): edges[i][j] for i in range(p)}) for j in range(n)]
    total = Fraction(0)
    for idx, coeff in w.items():
        frame = dxs[idx[0] - 1]
        for k in idx[1:]:
            frame = wedge(frame, dxs[k - 1])
        jac = frame[tuple(range(1, p + 1))]
        if not jac:
            continue
        pulled = coeff.substitute(subst) * jac
        total += pulled.simplex_moment()
    return s.orientation * total


def integrate_form(w: DifferentialForm, c: EmbeddedChain) -> Fraction:
    """The period <c, w>: exact integral of a p-form over a p-chain."""
    if w.dimension != c.ambient:
        raise ValueError(f"form on R^{w.dimension} against a chain in R^{c.ambient}")
    if w.degree != c.degree:
        raise ValueError(f"cannot integrate a {w.degree}-form over a {c.degree}-chain")
    return sum((coeff * _integrate_simplex(w, s) for coeff, s in c.terms if coeff), Fraction(0))


def chain_boundary(c: EmbeddedChain) -> EmbeddedChain:
    """Alternating facet sum, cancelled to canonical form."""
    if c.degree == 0:
        raise ValueError("a 0-chain has no boundary")
    terms = []
    for coeff, s in c.terms:
        for i in range(len(s.vertices)):
            facet = s.vertices[:i] + s.vertices[i + 1:]
            terms.append((coeff * s.orientation * (-1) ** i, EmbeddedSimplex(facet)))
    return EmbeddedChain(c.ambient, c.degree - 1, terms).simplified()


@dataclass(frozen=True)
class StokesResult:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def stokes_check(w: DifferentialForm, c: EmbeddedChain) -> StokesResult:
    """Compare the integral of w over the boundary of c with that of dw over c."""
    if c.degree != w.degree + 1:
        raise ValueError(f"a {w.degree}-form needs a {w.degree + 1}-chain")
    return StokesResult(
        lhs=integrate_form(w, chain_boundary(c)),
        rhs=integrate_form(exterior_derivative(w), c),
    )


def _require_full(domain: EmbeddedChain) -> None:
    if domain.degree != domain.ambient:
        raise ValueError(f"L2 products need a full-dimensional domain, got degree "
                         f"{domain.degree} in R^{domain.ambient}")


def l2_inner(a: DifferentialForm, b: DifferentialForm, domain: EmbeddedChain) -> Fraction:
    """(a, b) = integral over the domain of a ^ star b."""
    if a.degree != b.degree or a.dimension != b.dimension:
        raise ValueError("L2 product needs two forms of one degree and dimension")
    _require_full(domain)
    return integrate_form(wedge(a, hodge_star(b)), domain)


def norm_functional(a: DifferentialForm, domain: EmbeddedChain) -> Fraction:
    return l2_inner(a, a, domain)


@dataclass(frozen=True)
class AdjointnessResult:
    lhs: Fraction
    rhs: Fraction
    boundary_term: Fraction

    @property
    def difference(self) -> Fraction:
        return self.lhs - self.rhs


def adjointness_check(a: DifferentialForm, b: DifferentialForm,
                      domain: EmbeddedChain) -> AdjointnessResult:
    """(da, b) against (a, codiff b) on a bounded domain.

    On a bounded domain the two differ by the flux of ``a ^ star b`` through
    the boundary, which is reported alongside.
    """
    if b.degree != a.degree + 1:
        raise ValueError(f"b must have degree {a.degree + 1}, got {b.degree}")
    _require_full(domain)
    return AdjointnessResult(
        lhs=l2_inner(exterior_derivative(a), b, domain),
        rhs=l2_inner(a, codifferential(b), domain),
        boundary_term=integrate_form(wedge(a, hodge_star(b)), chain_boundary(domain)),
    )


def standard_simplex(n: int) -> EmbeddedSimplex:
    """0, e1, ..., en: positively oriented."""
    verts = [[0] * n]
    for i in range(n):
        e = [0] * n
        e[i] = 1
        verts.append(e)
    return EmbeddedSimplex(verts)


def orientation_sign(s: EmbeddedSimplex) -> int:
    """Sign of the edge determinant of a full-dimensional simplex."""
    edges = [[b - a for a, b in zip(s.vertices[0], v)] for v in s.vertices[1:]]
    n = len(edges)
    sign = 1
    m = [list(r) for r in edges]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c])
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        if m[c][c] < 0:
            sign = -sign
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign


def unit_cube_chain(n: int) -> EmbeddedChain:
    """Positively oriented Kuhn triangulation of [0,1]^n into n! simplices."""
    terms = []
    for perm in permutations(range(n)):
        v = [0] * n
        verts = [tuple(v)]
        for k in perm:
            v[k] = 1
            verts.append(tuple(v))
        s = EmbeddedSimplex(verts)
        terms.append((1, s if orientation_sign(s) > 0 else s.reversed()))
    return EmbeddedChain(n, n, terms)
