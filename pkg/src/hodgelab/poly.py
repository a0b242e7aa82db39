"""Exact multivariate polynomials over the rationals.

A :class:`Polynomial` in ``n`` variables ``x1..xn`` is a mapping from dense
exponent tuples to nonzero :class:`fractions.Fraction` coefficients.  Values
are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def _grlex_key(exp: Exponent):
    return (sum(exp), exp)


class Polynomial:
    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dimension: int, terms: Mapping[Exponent, Scalar] | None = None):
        if not isinstance(dimension, int) or dimension < 0:
            raise ValueError(f"dimension must be a non-negative integer, got {dimension!r}")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != dimension or any((not isinstance(e, int)) or e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp!r} for dimension {dimension}")
            c = as_rational(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._dim = dimension
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> "Polynomial":
        return cls(dimension)

    @classmethod
    def constant(cls, dimension: int, value: Scalar) -> "Polynomial":
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension: int, i: int) -> "Polynomial":
        """The coordinate function ``x_i`` (1-based)."""
        if not 1 <= i <= dimension:
            raise IndexError(f"variable index {i} out of range 1..{dimension}")
        exp = [0] * dimension
        exp[i - 1] = 1
        return cls(dimension, {tuple(exp): 1})

    @classmethod
    def _raw(cls, dimension: int, terms: Dict[Exponent, Fraction]) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p._dim = dimension
        p._terms = terms
        p._hash = None
        return p

    # -- basic protocol -----------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dim

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, highest first."""
        for exp in sorted(self._terms, key=_grlex_key, reverse=True):
            yield exp, self._terms[exp]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._dim, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._dim == other._dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(self._dim, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._dim != self._dim:
                raise ValueError(f"dimension mismatch: {self._dim} vs {other._dim}")
            return other
        return Polynomial.constant(self._dim, as_rational(other))

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial._raw(self._dim, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self._dim, {e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Polynomial.zero(self._dim)
            return Polynomial._raw(self._dim, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self._dim, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self._dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and substitution -----------------------------------------

    def partial(self, i: int) -> "Polynomial":
        """Exact partial derivative with respect to ``x_i`` (1-based)."""
        if not 1 <= i <= self._dim:
            raise IndexError(f"variable index {i} out of range 1..{self._dim}")
        k = i - 1
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k]
        return Polynomial._raw(self._dim, out)

    def compose_scale(self) -> "Polynomial":
        """``p(t*x1, ..., t*xn)`` as a polynomial in ``(t, x1, ..., xn)``.

        The new variable ``t`` is variable 1; the old ``x_i`` become ``x_{i+1}``.
        """
        return Polynomial._raw(
            self._dim + 1, {(sum(exp),) + exp: c for exp, c in self._terms.items()}
        )

    def integrate_unit(self, i: int) -> "Polynomial":
        """Definite integral over ``x_i`` in [0, 1]; the variable is removed."""
        if not 1 <= i <= self._dim:
            raise IndexError(f"variable index {i} out of range 1..{self._dim}")
        k = i - 1
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[:k] + exp[k + 1:]
            s = out.get(e, 0) + c / (exp[k] + 1)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self._dim - 1, out)

    def substitute(self, values: Sequence["Polynomial"]) -> "Polynomial":
        """Replace each ``x_i`` by ``values[i-1]`` (all of one common dimension)."""
        if len(values) != self._dim:
            raise ValueError(f"need {self._dim} substitutions, got {len(values)}")
        if not values:
            return self
        target = values[0].dimension
        if any(v.dimension != target for v in values):
            raise ValueError("substituted polynomials must share a dimension")
        powers: Dict[Tuple[int, int], Polynomial] = {}

        def power(k: int, e: int) -> Polynomial:
            key = (k, e)
            if key not in powers:
                powers[key] = values[k] ** e
            return powers[key]

        result = Polynomial.zero(target)
        for exp, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for k, e in enumerate(exp):
                if e:
                    term = term * power(k, e)
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self._dim:
            raise ValueError(f"point has {len(point)} coordinates, expected {self._dim}")
        pt = [as_rational(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(pt, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def simplex_moment(self) -> Fraction:
        """Integral over the standard simplex {t >= 0, sum(t) <= 1} in R^n.

        Uses the monomial moment formula
        prod(a_i!) / (n + sum(a_i))!.
        """
        n = self._dim
        total = Fraction(0)
        for exp, c in self._terms.items():
            num = 1
            for a in exp:
                num *= factorial(a)
            total += c * Fraction(num, factorial(n + sum(exp)))
        return total

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self._dim}, {str(self)!r})"


def poly_partial(p: Polynomial, i: int) -> Polynomial:
    return p.partial(i)


def poly_compose_scale(p: Polynomial) -> Polynomial:
    return p.compose_scale()


def poly_sum(polys: Iterable[Polynomial], dimension: int) -> Polynomial:
    total = Polynomial.zero(dimension)
    for p in polys:
        total = total + p
    return total
