"""Symbolic exterior calculus on R^n with the Euclidean metric.

Forms carry exact polynomial coefficients, so every identity (``d d = 0``,
star involution, graded Leibniz, ...) can be checked as an equality.

Sign conventions::

    star(dx^I)  = sign(I, I^c) dx^{I^c}
    codiff      = (-1)^(n(p+1)+1) star d star     on p-forms
    laplacian   = codiff d + d codiff

With these, the Laplacian of a function is ``-sum_i d^2 f / dx_i^2`` and
``codiff`` of an R^3 1-form is minus its classical divergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from .poly import Polynomial, Scalar, as_rational

MultiIndex = Tuple[int, ...]


def permutation_sign(seq) -> int:
    """Parity sign of the permutation sorting ``seq``; 0 on repeated entries."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def complement(index: MultiIndex, n: int) -> MultiIndex:
    present = set(index)
    return tuple(i for i in range(1, n + 1) if i not in present)


def blade_sign(index: MultiIndex, n: int) -> int:
    """sign(I, I^c): parity of the concatenation relative to (1..n)."""
    return permutation_sign(index + complement(index, n))


def blades(n: int, p: int) -> Iterator[MultiIndex]:
    """All strictly increasing multi-indices of length p in 1..n."""
    return combinations(range(1, n + 1), p)


class DifferentialForm:
    """A degree-p form on R^n: increasing multi-index -> Polynomial."""

    __slots__ = ("_dim", "_deg", "_coeffs", "_hash")

    def __init__(self, dimension: int, degree: int,
                 coefficients: Mapping[MultiIndex, Union[Polynomial, Scalar]] | None = None):
        if dimension < 1:
            raise ValueError("forms need an ambient dimension >= 1")
        if not 0 <= degree <= dimension:
            raise ValueError(f"degree {degree} outside 0..{dimension}")
        clean: Dict[MultiIndex, Polynomial] = {}
        for idx, c in (coefficients or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"blade {idx} does not have degree {degree}")
            if any(not 1 <= i <= dimension for i in idx):
                raise IndexError(f"blade {idx} has an index outside 1..{dimension}")
            sign = permutation_sign(idx)
            if sign == 0:
                continue
            key = tuple(sorted(idx))
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(dimension, as_rational(c))
            elif c.dimension != dimension:
                raise ValueError(f"coefficient has dimension {c.dimension}, form has {dimension}")
            total = clean.get(key, Polynomial.zero(dimension)) + (c if sign > 0 else -c)
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._dim = dimension
        self._deg = degree
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, dimension: int, degree: int, coeffs: Dict[MultiIndex, Polynomial]):
        w = cls.__new__(cls)
        w._dim, w._deg, w._coeffs, w._hash = dimension, degree, coeffs, None
        return w

    @classmethod
    def zero(cls, dimension: int, degree: int) -> "DifferentialForm":
        return cls(dimension, degree)

    @classmethod
    def function(cls, f: Polynomial) -> "DifferentialForm":
        """Wrap a polynomial as a 0-form."""
        return cls(f.dimension, 0, {(): f})

    @classmethod
    def blade(cls, dimension: int, *indices: int) -> "DifferentialForm":
        """``dx^{i1} ^ dx^{i2} ^ ...``; indices need not be sorted."""
        return cls(dimension, len(indices), {tuple(indices): 1})

    @property
    def dimension(self) -> int:
        return self._dim

    @property
    def degree(self) -> int:
        return self._deg

    @property
    def coefficients(self) -> Dict[MultiIndex, Polynomial]:
        return dict(self._coeffs)

    def __getitem__(self, index: MultiIndex) -> Polynomial:
        return self._coeffs.get(tuple(index), Polynomial.zero(self._dim))

    def items(self):
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self._dim, self._deg, self._coeffs) == (other._dim, other._deg, other._coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, self._deg, frozenset(self._coeffs.items())))
        return self._hash

    def _check_same(self, other: "DifferentialForm") -> None:
        if self._dim != other._dim:
            raise ValueError(f"dimension mismatch: {self._dim} vs {other._dim}")
        if self._deg != other._deg:
            raise ValueError(f"degree mismatch: {self._deg} vs {other._deg}")

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check_same(other)
        out = dict(self._coeffs)
        for idx, c in other._coeffs.items():
            s = out[idx] + c if idx in out else c
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return DifferentialForm._raw(self._dim, self._deg, out)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm._raw(self._dim, self._deg, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def scale(self, factor: Union[Polynomial, Scalar]) -> "DifferentialForm":
        """Multiply every coefficient by a scalar or a polynomial function."""
        out = {}
        for idx, c in self._coeffs.items():
            v = c * factor
            if v:
                out[idx] = v
        return DifferentialForm._raw(self._dim, self._deg, out)

    def __mul__(self, other):
        if isinstance(other, DifferentialForm):
            return wedge(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = scale

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for idx, c in self.items():
            blade = "^".join(f"dx{i}" for i in idx)
            coeff = str(c)
            if not blade:
                parts.append(f"({coeff})")
            elif c == 1:
                parts.append(blade)
            else:
                parts.append(f"({coeff})*{blade}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DifferentialForm(n={self._dim}, p={self._deg}, {str(self)!r})"


@dataclass(frozen=True)
class MetricContext:
    """Orthonormal Euclidean metric on R^n with orientation dx1^...^dxn."""

    dimension: int

    def volume_form(self) -> DifferentialForm:
        return DifferentialForm.blade(self.dimension, *range(1, self.dimension + 1))


def _ctx(w: DifferentialForm, ctx: Optional[MetricContext]) -> MetricContext:
    if ctx is None:
        return MetricContext(w.dimension)
    if ctx.dimension != w.dimension:
        raise ValueError(f"metric is on R^{ctx.dimension}, form is on R^{w.dimension}")
    return ctx


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    """Exterior product.  Degrees above n collapse to the zero n-form."""
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    n, p = a.dimension, a.degree + b.degree
    if p > n:
        return DifferentialForm.zero(n, n)
    out: Dict[MultiIndex, Polynomial] = {}
    for i1, c1 in a._coeffs.items():
        for i2, c2 in b._coeffs.items():
            joined = i1 + i2
            sign = permutation_sign(joined)
            if not sign:
                continue
            key = tuple(sorted(joined))
            prod = c1 * c2
            if sign < 0:
                prod = -prod
            s = out[key] + prod if key in out else prod
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return DifferentialForm._raw(n, p, out)


def exterior_derivative(w: DifferentialForm) -> DifferentialForm:
    """``d w``; a top-degree form maps to the zero n-form."""
    n, p = w.dimension, w.degree
    if p == n:
        return DifferentialForm.zero(n, n)
    out: Dict[MultiIndex, Polynomial] = {}
    for idx, c in w._coeffs.items():
        for i in range(1, n + 1):
            if i in idx:
                continue
            dc = c.partial(i)
            if not dc:
                continue
            # moving dx^i past the sorted blade: count the entries smaller than i
            pos = sum(1 for j in idx if j < i)
            key = tuple(sorted(idx + (i,)))
            if pos % 2:
                dc = -dc
            s = out[key] + dc if key in out else dc
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return DifferentialForm._raw(n, p + 1, out)


d = exterior_derivative


def graded_leibniz_check(a: DifferentialForm, b: DifferentialForm) -> bool:
    """Whether d(a^b) == da^b + (-1)^p a^db holds exactly."""
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    lhs = d(wedge(a, b))
    rhs_left = wedge(d(a), b)
    rhs_right = wedge(a, d(b))
    if rhs_left.degree != rhs_right.degree or lhs.degree != rhs_left.degree:
        # degree overflow on some side: every term is the capped zero form
        return lhs.is_zero() and rhs_left.is_zero() and rhs_right.is_zero()
    rhs = rhs_left + (rhs_right if a.degree % 2 == 0 else -rhs_right)
    return lhs == rhs


def hodge_star(w: DifferentialForm, ctx: Optional[MetricContext] = None) -> DifferentialForm:
    n = _ctx(w, ctx).dimension
    out = {}
    for idx, c in w._coeffs.items():
        comp = complement(idx, n)
        out[comp] = c if blade_sign(idx, n) > 0 else -c
    return DifferentialForm._raw(n, n - w.degree, out)


star = hodge_star


def pointwise_inner(a: DifferentialForm, b: DifferentialForm) -> Polynomial:
    """<a, b> = sum_I a_I b_I for the orthonormal coframe."""
    a._check_same(b)
    total = Polynomial.zero(a.dimension)
    for idx, c in a._coeffs.items():
        if idx in b._coeffs:
            total = total + c * b._coeffs[idx]
    return total


def codifferential(w: DifferentialForm, ctx: Optional[MetricContext] = None) -> DifferentialForm:
    ctx = _ctx(w, ctx)
    n, p = ctx.dimension, w.degree
    if p == 0:
        return DifferentialForm.zero(n, 0)
    result = hodge_star(d(hodge_star(w, ctx)), ctx)
    return -result if (n * (p + 1) + 1) % 2 else result


delta = codifferential


def hodge_laplacian(w: DifferentialForm, ctx: Optional[MetricContext] = None) -> DifferentialForm:
    ctx = _ctx(w, ctx)
    n, p = ctx.dimension, w.degree
    out = DifferentialForm.zero(n, p)
    if p < n:
        out = out + codifferential(d(w), ctx)
    if p > 0:
        out = out + d(codifferential(w, ctx))
    return out


laplacian = hodge_laplacian


@dataclass(frozen=True)
class HarmonicCheck:
    """Outcome of :func:`is_harmonic`; truthy iff the form is closed and coclosed."""

    closed: bool
    coclosed: bool

    @property
    def harmonic(self) -> bool:
        return self.closed and self.coclosed

    def __bool__(self) -> bool:
        return self.harmonic

    @property
    def failures(self) -> Tuple[str, ...]:
        out = []
        if not self.closed:
            out.append("d")
        if not self.coclosed:
            out.append("codiff")
        return tuple(out)


def is_harmonic(w: DifferentialForm, ctx: Optional[MetricContext] = None) -> HarmonicCheck:
    ctx = _ctx(w, ctx)
    closed = w.degree == w.dimension or d(w).is_zero()
    return HarmonicCheck(closed=closed, coclosed=codifferential(w, ctx).is_zero())


def homotopy_operator(w: DifferentialForm) -> DifferentialForm:
    """Cone (Poincare) operator centered at the origin.

    For a p-form with p >= 1 this satisfies ``d K w + K d w = w``, so a
    closed form ``w`` has the primitive ``K w``.
    """
    n, p = w.dimension, w.degree
    if p == 0:
        raise ValueError("the homotopy operator is defined on forms of degree >= 1")
    out: Dict[MultiIndex, Polynomial] = {}
    xs = [Polynomial.variable(n, k) for k in range(1, n + 1)]
    t_weight = Polynomial(n + 1, {(p - 1,) + (0,) * n: 1})
    for idx, c in w._coeffs.items():
        # integral over t in [0,1] of t^(p-1) c(t x)
        radial = (c.compose_scale() * t_weight).integrate_unit(1)
        for pos, k in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1:]
            term = xs[k - 1] * radial
            if pos % 2:
                term = -term
            s = out[rest] + term if rest in out else term
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
    return DifferentialForm._raw(n, p - 1, out)


def witten_derivative(w: DifferentialForm, f: Polynomial, t) -> DifferentialForm:
    """The deformed differential exp(-t f) d exp(t f), acting as ``d + t df^``."""
    if f.dimension != w.dimension:
        raise ValueError(f"f has dimension {f.dimension}, form has {w.dimension}")
    t = as_rational(t)
    dw = d(w)
    if not t:
        return dw
    df = d(DifferentialForm.function(f))
    return dw + wedge(df, w).scale(t)


def _require(w: DifferentialForm, n: int, p: int, what: str) -> None:
    if w.dimension != n or w.degree != p:
        raise ValueError(f"{what} expects a {p}-form on R^{n}, got a {w.degree}-form on R^{w.dimension}")


def grad(f: DifferentialForm) -> DifferentialForm:
    _require(f, 3, 0, "grad")
    return d(f)


def curl(w: DifferentialForm) -> DifferentialForm:
    _require(w, 3, 1, "curl")
    return hodge_star(d(w))


def div(w: DifferentialForm) -> DifferentialForm:
    # codiff is -div on R^3 1-forms; negate to get the classical divergence
    _require(w, 3, 1, "div")
    return -codifferential(w)


@dataclass(frozen=True)
class MaxwellField:
    """Field report for a potential A on R^4.

    ``pi_current`` is pi * J, i.e. ``-codiff(F) / 4``; J itself carries the
    irrational factor 1/pi and is kept symbolically.
    """

    potential: DifferentialForm
    field: DifferentialForm
    bianchi_ok: bool
    pi_current: DifferentialForm
    continuity_ok: bool


def maxwell_field(A: DifferentialForm) -> MaxwellField:
    _require(A, 4, 1, "maxwell_field")
    F = d(A)
    pi_J = codifferential(F).scale(Fraction(-1, 4))
    return MaxwellField(
        potential=A,
        field=F,
        bianchi_ok=d(F).is_zero(),
        pi_current=pi_J,
        continuity_ok=codifferential(pi_J).is_zero(),
    )


def maxwell_action(F: DifferentialForm, domain) -> Fraction:
    """1/2 * integral over ``domain`` of F ^ star F."""
    from .integrate import l2_inner

    if F.degree != 2:
        raise ValueError(f"the field must be a 2-form, got degree {F.degree}")
    return l2_inner(F, F, domain) / 2
