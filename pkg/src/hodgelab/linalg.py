"""Exact rational linear algebra: sparse incidence matrices and dense elimination.

Dense matrices are plain lists of rows of Fractions.  Elimination is pivoted
Gauss-Jordan; the optional ``column_order`` only changes the pivot sequence,
never the solution space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]
Vector = List[Fraction]


class SparseMatrix:
    """Immutable sparse rational matrix stored as ``{(row, col): value}``."""

    __slots__ = ("shape", "_entries", "_cols")

    def __init__(self, shape: Tuple[int, int], entries: Dict[Tuple[int, int], Fraction] | None = None):
        rows, cols = shape
        self.shape = (rows, cols)
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside shape {shape}")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self._entries = clean
        self._cols: Dict[int, Dict[int, Fraction]] = {}
        for (i, j), v in clean.items():
            self._cols.setdefault(j, {})[i] = v

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._entries)

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def column(self, j: int) -> Dict[int, Fraction]:
        return dict(self._cols.get(j, {}))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix((self.shape[1], self.shape[0]),
                            {(j, i): v for (i, j), v in self._entries.items()})

    @property
    def T(self) -> "SparseMatrix":
        return self.transpose()

    def matvec(self, x: Sequence[Fraction]) -> Vector:
        if len(x) != self.shape[1]:
            raise ValueError(f"vector of length {len(x)} against shape {self.shape}")
        out = [Fraction(0)] * self.shape[0]
        for (i, j), v in self._entries.items():
            if x[j]:
                out[i] += v * x[j]
        return out

    def rmatvec(self, y: Sequence[Fraction]) -> Vector:
        """Transpose product ``A^T y``."""
        if len(y) != self.shape[0]:
            raise ValueError(f"vector of length {len(y)} against shape {self.shape}")
        out = [Fraction(0)] * self.shape[1]
        for (i, j), v in self._entries.items():
            if y[i]:
                out[j] += v * y[i]
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        rows: Dict[int, Dict[int, Fraction]] = {}
        for (i, k), v in self._entries.items():
            rows.setdefault(k, {})[i] = v
        out: Dict[Tuple[int, int], Fraction] = {}
        for (k, j), w in other._entries.items():
            for i, v in rows.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + v * w
        return SparseMatrix((self.shape[0], other.shape[1]), out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = dict(self._entries)
        for key, v in other._entries.items():
            out[key] = out.get(key, 0) + v
        return SparseMatrix(self.shape, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def todense(self) -> Matrix:
        out = [[Fraction(0)] * self.shape[1] for _ in range(self.shape[0])]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz()})"


def identity(n: int) -> SparseMatrix:
    return SparseMatrix((n, n), {(i, i): Fraction(1) for i in range(n)})


def rref(a: Matrix, column_order: Optional[Sequence[int]] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns (R, pivot columns in pivot order)."""
    m = [list(map(Fraction, row)) for row in a]
    if not m:
        return m, []
    ncols = len(m[0])
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots: List[int] = []
    r = 0
    for c in order:
        if r == len(m):
            break
        pivot_row = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row_r = m[r]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: Optional[int] = None,
              column_order: Optional[Sequence[int]] = None) -> List[Vector]:
    """Basis of {x : a x = 0}; one vector per free column."""
    if not a:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(a[0])
    r, pivots = rref(a, column_order)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -r[row][free]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Fraction], ncols: Optional[int] = None,
          column_order: Optional[Sequence[int]] = None) -> Optional[Vector]:
    """One exact solution of ``a x = b`` (free variables zero), or None."""
    if not a:
        n = ncols or 0
        return [Fraction(0)] * n if not any(b) else None
    n = len(a[0])
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(a, b)]
    order = list(range(n)) if column_order is None else list(column_order)
    r, pivots = rref(aug, order)
    for row in r[len(pivots):]:
        if row[n]:
            return None
    x = [Fraction(0)] * n
    for row, pc in enumerate(pivots):
        x[pc] = r[row][n]
    return x


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def project_out(x: Vector, basis: List[Vector]) -> Vector:
    """Orthogonal projection of ``x`` onto the complement of span(basis).

    Solves the Gram system exactly instead of orthonormalizing.
    """
    if not basis:
        return list(x)
    gram = [[dot(u, v) for v in basis] for u in basis]
    rhs = [dot(u, x) for u in basis]
    coeffs = solve(gram, rhs)
    assert coeffs is not None, "Gram matrix of a basis is nonsingular"
    out = list(x)
    for c, u in zip(coeffs, basis):
        if c:
            out = [oi - c * ui for oi, ui in zip(out, u)]
    return out


def min_norm_solve(a: Matrix, b: Sequence[Fraction], ncols: int,
                   column_order: Optional[Sequence[int]] = None) -> Optional[Vector]:
    """The minimum-norm exact solution of ``a x = b`` (orthogonal to ker a)."""
    x = solve(a, b, ncols=ncols, column_order=column_order)
    if x is None:
        return None
    return project_out(x, nullspace(a, ncols=ncols, column_order=column_order))


def sparse_gram(a: SparseMatrix) -> Matrix:
    """Dense ``a^T a``."""
    return (a.T @ a).todense()


def dense_from_rows(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]
