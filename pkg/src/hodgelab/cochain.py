"""Combinatorial Hodge theory on a simplicial complex.

The inner product on cochains is the identity on the simplex basis, so the
coboundary is the transpose of the boundary matrix and the codifferential is
its transpose again.  Everything, including the Hodge decomposition and the
harmonic spaces, is computed exactly over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import linalg
from .complex import Chain, SimplicialComplex
from .linalg import SparseMatrix


class Cochain(Chain):
    """Rational p-cochain: one value per p-simplex, in complex order."""


def coboundary_matrix(K: SimplicialComplex, p: int) -> SparseMatrix:
    """d_p : C^p -> C^{p+1}, the transpose of boundary(p+1)."""
    return K.boundary(p + 1).T


def laplacian_matrix(K: SimplicialComplex, p: int) -> SparseMatrix:
    """L_p = d_p^T d_p + d_{p-1} d_{p-1}^T."""
    up = coboundary_matrix(K, p)
    down = coboundary_matrix(K, p - 1)
    return up.T @ up + down @ down.T


def _coerce(w: Chain) -> Cochain:
    return w if isinstance(w, Cochain) else Cochain(w.complex, w.degree, w.values)


def coboundary(w: Cochain) -> Cochain:
    """(dw) evaluated on a (p+1)-simplex is w summed over its signed facets.

    In top degree there are no (p+1)-simplices and the result is the zero
    cochain of degree N.
    """
    K, p = w.complex, w.degree
    if p >= K.dimension:
        return Cochain.zero(K, K.dimension)
    return Cochain(K, p + 1, tuple(K.boundary(p + 1).rmatvec(w.values)))


def codifferential_discrete(w: Cochain) -> Cochain:
    K, p = w.complex, w.degree
    if p == 0:
        return Cochain.zero(K, 0)
    return Cochain(K, p - 1, tuple(K.boundary(p).matvec(w.values)))


def laplacian_discrete(w: Cochain) -> Cochain:
    K, p = w.complex, w.degree
    return Cochain(K, p, tuple(laplacian_matrix(K, p).matvec(w.values)))


def inner(a: Chain, b: Chain) -> Fraction:
    """Combinatorial inner product of two cochains of one degree."""
    a._check(b)
    return linalg.dot(a.values, b.values)


def pairing(c: Chain, w: Chain) -> Fraction:
    """The period <c, w> of a cochain on a chain."""
    if c.degree != w.degree:
        raise ValueError(f"cannot pair a {c.degree}-chain with a {w.degree}-cochain")
    if c.complex is not w.complex and c.complex != w.complex:
        raise ValueError("chain and cochain live on different complexes")
    return linalg.dot(c.values, w.values)


def harmonic_basis(K: SimplicialComplex, p: int) -> List[Cochain]:
    """Exact basis of ker L_p."""
    if not 0 <= p <= K.dimension:
        raise ValueError(f"degree {p} outside 0..{K.dimension}")
    L = laplacian_matrix(K, p)
    return [Cochain(K, p, tuple(v)) for v in linalg.nullspace(L.todense(), ncols=L.shape[1])]


@dataclass(frozen=True)
class HodgeSplit:
    exact: Cochain
    coexact: Cochain
    harmonic: Cochain
    alpha: Cochain
    beta: Cochain

    def reconstruct(self) -> Cochain:
        return self.exact + self.coexact + self.harmonic


def _order(n: int, elimination_order: str) -> Optional[Sequence[int]]:
    if elimination_order == "forward":
        return None
    if elimination_order == "reverse":
        return list(range(n - 1, -1, -1))
    raise ValueError(f"unknown elimination order {elimination_order!r}")


def hodge_decompose(w: Cochain, elimination_order: str = "forward") -> HodgeSplit:
    """Orthogonal split ``w = d alpha + codiff beta + gamma``.

    alpha and beta are the minimum-norm solutions of their normal equations;
    ``elimination_order`` changes only the pivot sequence, not the result.
    """
    w = _coerce(w)
    K, p = w.complex, w.degree
    d_prev = coboundary_matrix(K, p - 1)     # C^{p-1} -> C^p
    d_here = coboundary_matrix(K, p)         # C^p -> C^{p+1}

    if p > 0 and d_prev.shape[1]:
        m = d_prev.shape[1]
        a = linalg.min_norm_solve(linalg.sparse_gram(d_prev), d_prev.rmatvec(w.values), m,
                                  _order(m, elimination_order))
        assert a is not None, "normal equations are always consistent"
        alpha = Cochain(K, p - 1, tuple(a))
    else:
        alpha = Cochain.zero(K, p - 1)

    if p < K.dimension and d_here.shape[0]:
        m = d_here.shape[0]
        gram = (d_here @ d_here.T).todense()
        b = linalg.min_norm_solve(gram, d_here.matvec(w.values), m, _order(m, elimination_order))
        assert b is not None, "normal equations are always consistent"
        beta = Cochain(K, p + 1, tuple(b))
    else:
        beta = Cochain.zero(K, p + 1)

    exact = Cochain(K, p, tuple(d_prev.matvec(alpha.values))) if p > 0 else Cochain.zero(K, p)
    coexact = (Cochain(K, p, tuple(d_here.rmatvec(beta.values))) if p < K.dimension
               else Cochain.zero(K, p))
    harmonic = w - exact - coexact
    return HodgeSplit(exact=exact, coexact=coexact, harmonic=_coerce(harmonic),
                      alpha=alpha, beta=beta)


@dataclass(frozen=True)
class CohomologyReport:
    betti: List[int]
    euler: int
    harmonic_basis: List[List[Cochain]]
    rank_betti: List[int]


class HodgeWeylMismatch(AssertionError):
    """The harmonic-kernel and rank routes to the Betti numbers disagree."""


def betti_by_rank(K: SimplicialComplex) -> List[int]:
    """b_p = nullity(d_p) - rank(d_{p-1}) from exact boundary-matrix ranks."""
    N = K.dimension
    ranks = [linalg.rank(coboundary_matrix(K, p).todense()) if K.count(p + 1) else 0
             for p in range(-1, N + 1)]
    # ranks[p + 1] is rank(d_p)
    return [K.count(p) - ranks[p + 1] - ranks[p] for p in range(N + 1)]


def cohomology_report(K: SimplicialComplex) -> CohomologyReport:
    bases = [harmonic_basis(K, p) for p in range(K.dimension + 1)]
    betti = [len(b) for b in bases]
    by_rank = betti_by_rank(K)
    if betti != by_rank:
        raise HodgeWeylMismatch(f"dim ker L = {betti} but rank route gives {by_rank}")
    chi = sum((-1) ** p * b for p, b in enumerate(betti))
    if chi != K.euler_characteristic():
        raise HodgeWeylMismatch(f"Euler characteristic {chi} from Betti numbers, "
                                f"{K.euler_characteristic()} from simplex counts")
    return CohomologyReport(betti=betti, euler=chi, harmonic_basis=bases, rank_betti=by_rank)


@dataclass(frozen=True)
class CoboundaryWitness:
    """Outcome of :func:`cohomologous`; ``witness`` is theta with w1 - w2 = d theta."""

    cohomologous: bool
    witness: Optional[Cochain] = None

    def __bool__(self) -> bool:
        return self.cohomologous


def is_closed(w: Cochain) -> bool:
    return w.degree >= w.complex.dimension or coboundary(_coerce(w)).is_zero()


def cohomologous(w1: Cochain, w2: Cochain) -> CoboundaryWitness:
    w1, w2 = _coerce(w1), _coerce(w2)
    w1._check(w2)
    if not (is_closed(w1) and is_closed(w2)):
        raise ValueError("cohomologous() needs closed cochains")
    K, p = w1.complex, w1.degree
    diff = w1 - w2
    if p == 0:
        return CoboundaryWitness(diff.is_zero(), None)
    D = coboundary_matrix(K, p - 1)
    theta = linalg.solve(D.todense(), diff.values, ncols=D.shape[1])
    if theta is None:
        return CoboundaryWitness(False)
    return CoboundaryWitness(True, Cochain(K, p - 1, tuple(theta)))


def harmonic_representative(w: Cochain) -> Cochain:
    """The unique harmonic cochain cohomologous to the closed cochain w."""
    w = _coerce(w)
    if not is_closed(w):
        raise ValueError("harmonic_representative() needs a closed cochain")
    return hodge_decompose(w).harmonic


def cycle_basis(K: SimplicialComplex, p: int) -> List[Chain]:
    """Basis of the p-cycles (kernel of the boundary map)."""
    D = K.boundary(p)
    if p == 0 or D.shape[0] == 0:
        return [Chain(K, p, tuple(Fraction(int(i == j)) for i in range(K.count(p))))
                for j in range(K.count(p))]
    return [Chain(K, p, tuple(v)) for v in linalg.nullspace(D.todense(), ncols=D.shape[1])]
