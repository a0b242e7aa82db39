"""Oriented abstract simplicial complexes, rational chains and boundary matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .exterior import permutation_sign
from .linalg import SparseMatrix
from .poly import as_rational

Simplex = Tuple[int, ...]


class SimplicialComplex:
    """Face-closed complex with canonical (sorted) simplices.

    ``simplices[p]`` lists the p-simplices lexicographically; ``boundary(p)``
    is the signed incidence matrix of shape (#(p-1)-simplices, #p-simplices).
    Input facets with permuted vertices keep the parity of their sorting
    permutation in :attr:`facet_orientation`.
    """

    def __init__(self, facets: Iterable[Sequence[int]]):
        facets = [tuple(f) for f in facets]
        orientation: Dict[Simplex, int] = {}
        faces: Dict[int, set] = {}
        for f in facets:
            if not f:
                raise ValueError("empty facet")
            if any((not isinstance(v, int)) or isinstance(v, bool) or v < 0 for v in f):
                raise ValueError(f"facet {f} has a vertex id that is not a non-negative integer")
            if len(set(f)) != len(f):
                raise ValueError(f"facet {f} repeats a vertex")
            key = tuple(sorted(f))
            orientation[key] = permutation_sign(f)
            for k in range(1, len(key) + 1):
                faces.setdefault(k - 1, set()).update(combinations(key, k))
        top = max(faces, default=-1)
        self.facets: Tuple[Simplex, ...] = tuple(facets)
        self.facet_orientation: Dict[Simplex, int] = orientation
        self.simplices: List[List[Simplex]] = [sorted(faces.get(p, ())) for p in range(top + 1)]
        self._index: List[Dict[Simplex, int]] = [
            {s: i for i, s in enumerate(level)} for level in self.simplices
        ]
        self._boundary: List[Optional[SparseMatrix]] = [None]
        for p in range(1, top + 1):
            entries = {}
            for j, s in enumerate(self.simplices[p]):
                for i in range(p + 1):
                    facet = s[:i] + s[i + 1:]
                    entries[(self._index[p - 1][facet], j)] = Fraction((-1) ** i)
            self._boundary.append(
                SparseMatrix((len(self.simplices[p - 1]), len(self.simplices[p])), entries))

    @property
    def dimension(self) -> int:
        """Top dimension N (-1 for the empty complex)."""
        return len(self.simplices) - 1

    def count(self, p: int) -> int:
        return len(self.simplices[p]) if 0 <= p <= self.dimension else 0

    def counts(self) -> List[int]:
        return [len(level) for level in self.simplices]

    def index(self, simplex: Sequence[int]) -> int:
        s = tuple(sorted(simplex))
        p = len(s) - 1
        if not 0 <= p <= self.dimension or s not in self._index[p]:
            raise KeyError(f"{tuple(simplex)} is not a simplex of this complex")
        return self._index[p][s]

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        p = len(s) - 1
        return 0 <= p <= self.dimension and s in self._index[p]

    def boundary(self, p: int) -> SparseMatrix:
        """Incidence matrix of boundary from p-chains to (p-1)-chains.

        Out-of-range degrees give the appropriately shaped zero matrix.
        """
        if 1 <= p <= self.dimension:
            return self._boundary[p]
        return SparseMatrix((self.count(p - 1), self.count(p)))

    def vertices(self) -> List[int]:
        return [s[0] for s in self.simplices[0]] if self.simplices else []

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.counts()))

    def fundamental_chain(self) -> "Chain":
        """Sum of the top facets with their input orientations."""
        N = self.dimension
        values = [Fraction(0)] * self.count(N)
        for s, sign in self.facet_orientation.items():
            if len(s) - 1 == N:
                values[self._index[N][s]] = Fraction(sign)
        return Chain(self, N, tuple(values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(tuple(tuple(level) for level in self.simplices))

    def __repr__(self) -> str:
        return f"SimplicialComplex(counts={self.counts()})"


def build_complex(facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    return SimplicialComplex(facets)


@dataclass(frozen=True, eq=False)
class Chain:
    """Rational p-chain: one coefficient per p-simplex, in complex order."""

    complex: SimplicialComplex
    degree: int
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if len(vals) != self.complex.count(self.degree):
            raise ValueError(f"{self.degree}-chain needs {self.complex.count(self.degree)} "
                             f"values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, K: SimplicialComplex, p: int) -> "Chain":
        return cls(K, p, (Fraction(0),) * K.count(p))

    @classmethod
    def from_dict(cls, K: SimplicialComplex, p: int, coeffs: Dict[Sequence[int], object]) -> "Chain":
        """Build from {vertex tuple: coefficient}; unsorted tuples carry their parity."""
        values = [Fraction(0)] * K.count(p)
        for s, c in coeffs.items():
            if len(s) != p + 1:
                raise ValueError(f"{tuple(s)} is not a {p}-simplex")
            values[K.index(s)] += permutation_sign(s) * as_rational(c)
        return cls(K, p, tuple(values))

    def as_dict(self) -> Dict[Simplex, Fraction]:
        return {s: v for s, v in zip(self.complex.simplices[self.degree], self.values) if v}

    def _check(self, other) -> None:
        if other.complex is not self.complex and other.complex != self.complex:
            raise ValueError("chains live on different complexes")
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.complex, self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.complex, self.degree, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return type(self)(self.complex, self.degree, tuple(-a for a in self.values))

    def scale(self, c):
        c = as_rational(c)
        return type(self)(self.complex, self.degree, tuple(c * a for a in self.values))

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (self.degree == other.degree and self.values == other.values
                and self.complex == other.complex)

    def __hash__(self) -> int:
        return hash((self.degree, self.values))

    def __repr__(self) -> str:
        body = ", ".join(f"{s}: {v}" for s, v in self.as_dict().items())
        return f"{type(self).__name__}(degree={self.degree}, {{{body}}})"


def boundary(c: Chain) -> Chain:
    if c.degree == 0:
        raise ValueError("a 0-chain has no boundary")
    return Chain(c.complex, c.degree - 1, tuple(c.complex.boundary(c.degree).matvec(c.values)))


def is_cycle(c: Chain) -> bool:
    return c.degree == 0 or boundary(c).is_zero()


@dataclass(frozen=True)
class BoundaryWitness:
    """Outcome of :func:`is_boundary`; ``witness`` is B with c = boundary(B)."""

    is_boundary: bool
    witness: Optional[Chain] = None

    def __bool__(self) -> bool:
        return self.is_boundary


def is_boundary(c: Chain) -> BoundaryWitness:
    K, p = c.complex, c.degree
    D = K.boundary(p + 1)
    if D.shape[1] == 0:
        return BoundaryWitness(c.is_zero(), Chain.zero(K, p + 1) if c.is_zero() else None)
    x = linalg.solve(D.todense(), c.values, ncols=D.shape[1])
    if x is None:
        return BoundaryWitness(False)
    return BoundaryWitness(True, Chain(K, p + 1, tuple(x)))


def homologous(c1: Chain, c2: Chain) -> BoundaryWitness:
    """Whether two cycles differ by a boundary; carries the witness B."""
    c1._check(c2)
    if not (is_cycle(c1) and is_cycle(c2)):
        raise ValueError("homologous() needs two cycles")
    return is_boundary(c1 - c2)


def cone(K: SimplicialComplex, apex: Optional[int] = None) -> SimplicialComplex:
    """Cone over K: a contractible complex."""
    if apex is None:
        apex = max(K.vertices(), default=-1) + 1
    if apex in K.vertices():
        raise ValueError(f"apex {apex} is already a vertex")
    return SimplicialComplex([s + (apex,) for level in K.simplices for s in level] or [(apex,)])


# reference complexes used across the test suites and the docs

def hollow_triangle() -> SimplicialComplex:
    return SimplicialComplex([(0, 1), (1, 2), (0, 2)])


def filled_triangle() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 2)])


OCTAHEDRON_FACES = [
    (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
    (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
]


def octahedron() -> SimplicialComplex:
    """Boundary of the octahedron, faces coherently oriented (outward)."""
    return SimplicialComplex(OCTAHEDRON_FACES)


def torus7() -> SimplicialComplex:
    """The 7-vertex (Moebius-Csaszar) torus: faces {i, i+1, i+3}, {i, i+2, i+3} mod 7."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 3) % 7, (i + 2) % 7))
    return SimplicialComplex(faces)


def cylinder() -> SimplicialComplex:
    """Annulus: bottom ring 0,1,2 and top ring 3,4,5."""
    faces = []
    for i in range(3):
        j = (i + 1) % 3
        faces.append((i, j, i + 3))
        faces.append((j, j + 3, i + 3))
    return SimplicialComplex(faces)
