"""
Finite-dimensional *-algebras of operators.

Algebras are stored as Hilbert-Schmidt orthonormal bases of dense
complex matrices.  Closure, commutants and centers are all computed by
plain linear algebra on vectorized operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TOL = 1e-10


def as_operator(X, dim: int | None = None) -> np.ndarray:
    """Validate ``X`` as a finite square complex matrix."""
    A = np.asarray(X, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("operator must be a square matrix, got shape %s" % (A.shape,))
    if dim is not None and A.shape[0] != dim:
        raise ValueError("dimension mismatch: expected %d, got %d" % (dim, A.shape[0]))
    if not np.all(np.isfinite(A)):
        raise ValueError("operator has non-finite entries")
    return A


def dagger(X: np.ndarray) -> np.ndarray:
    return np.conj(X).T


def hs_inner(A, B) -> complex:
    """tr(A^dagger B)."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ValueError("dimension mismatch: %s vs %s" % (A.shape, B.shape))
    return complex(np.vdot(A, B))


def hs_norm(X) -> float:
    return float(np.linalg.norm(X))


def commutator(A, B):
    return A @ B - B @ A


def hermitian_parts(ops: Sequence[np.ndarray], tol: float = TOL) -> list[np.ndarray]:
    """Split each operator into (X + X^dagger)/2 and (X - X^dagger)/2i, dropping zeros."""
    out = []
    for X in ops:
        scale = max(hs_norm(X), 1.0)
        for H in ((X + dagger(X)) / 2, (X - dagger(X)) / 2j):
            if hs_norm(H) > tol * scale:
                out.append(H)
    return out


class _Span:
    """Growing orthonormal set of vectors (stored as rows), Gram-Schmidt twice."""

    def __init__(self, size: int, capacity: int = 16):
        self.size = size
        self.rows = np.zeros((max(capacity, 1), size), dtype=complex)
        self.k = 0

    @property
    def basis(self):
        """Orthonormal vectors as columns."""
        return self.rows[:self.k].T

    def project_out(self, v):
        Q = self.rows[:self.k]
        return v - Q.T @ (Q @ v.conj()).conj()

    def residual(self, v):
        return self.project_out(self.project_out(v))

    def add(self, v, tol) -> bool:
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return False
        r = self.residual(v)
        nr = np.linalg.norm(r)
        if nr <= tol * nv:
            return False
        if self.k == len(self.rows):
            self.rows = np.concatenate([self.rows, np.zeros_like(self.rows)])
        self.rows[self.k] = r / nr
        self.k += 1
        return True


@dataclass
class OperatorAlgebra:
    """A dagger-closed associative algebra given by an orthonormal HS basis.

    ``basis`` has shape ``(k, dim, dim)``.  ``generators`` is a (hermitian)
    generating set kept around so that commutants can be computed without
    touching the full basis.
    """

    dim: int
    basis: np.ndarray
    unital: bool = True
    generators: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.basis = np.asarray(self.basis, dtype=complex).reshape(-1, self.dim, self.dim)
        if not self.generators:
            self.generators = hermitian_parts(list(self.basis))

    def __len__(self):
        return self.basis.shape[0]

    @property
    def vectors(self) -> np.ndarray:
        """Basis as columns of a ``dim**2 x k`` isometry."""
        return self.basis.reshape(len(self), -1).T

    def coefficients(self, X) -> np.ndarray:
        v = np.asarray(X, dtype=complex).ravel()
        return (self.basis.reshape(len(self), -1) @ v.conj()).conj()

    def project(self, X) -> np.ndarray:
        return (self.vectors @ self.coefficients(X)).reshape(self.dim, self.dim)

    def residual(self, X) -> float:
        """HS distance from ``X`` to the algebra."""
        return hs_norm(np.asarray(X) - self.project(X))

    def contains(self, X, tol: float = 1e-8) -> bool:
        return self.residual(X) <= tol * max(hs_norm(X), 1.0)

    def contains_algebra(self, other: "OperatorAlgebra", tol: float = 1e-8) -> bool:
        return all(self.contains(B, tol) for B in other.basis)

    def element(self, coeffs) -> np.ndarray:
        return np.tensordot(np.asarray(coeffs, dtype=complex), self.basis, axes=1)

    def random_element(self, rng: np.random.Generator, hermitian: bool = False) -> np.ndarray:
        k = len(self)
        c = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        X = self.element(c)
        if hermitian:
            X = (X + dagger(X)) / 2
        return X

    def is_commutative(self, tol: float = 1e-8) -> bool:
        return all(
            hs_norm(commutator(self.basis[i], self.basis[j])) <= tol
            for i in range(len(self)) for j in range(i + 1, len(self)))

    def closure_residuals(self) -> dict:
        """Max residuals of the *-algebra axioms, for diagnostics and tests."""
        gram = self.vectors.conj().T @ self.vectors
        out = {
            "orthonormal": float(np.max(np.abs(gram - np.eye(len(self))), initial=0.0)),
            "dagger": max((self.residual(dagger(B)) for B in self.basis), default=0.0),
            "identity": self.residual(np.eye(self.dim)) if self.unital else 0.0,
        }
        return out


def generate_algebra(generators: Sequence, unital: bool = True, tol: float = TOL) -> OperatorAlgebra:
    """Smallest dagger-closed associative algebra containing ``generators``.

    Candidates are processed in a fixed order: identity (if unital), then each
    generator followed by its adjoint, in input order.  Afterwards every basis
    element, in order of discovery, is multiplied on the left by every seed
    operator.  The span of all words in the seeds is closed under products, so
    this reaches the same space as multiplying all basis pairs.
    """
    gens = [as_operator(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].shape[0]
    for g in gens:
        as_operator(g, dim)

    seeds = []
    for g in gens:
        seeds.append(g)
        if hs_norm(dagger(g) - g) > tol * max(hs_norm(g), 1.0):
            seeds.append(dagger(g))
    span = _Span(dim * dim)
    if unital:
        span.add(np.eye(dim, dtype=complex).ravel(), tol)
    for s in seeds:
        span.add(s.ravel(), tol)
    # normalized seeds span the same words and keep round-off uniform in scale
    left = np.array([s / hs_norm(s) for s in seeds if hs_norm(s) > 0])

    limit = dim * dim
    i = 0
    while i < span.k:
        B = span.rows[i].reshape(dim, dim)
        cands = np.matmul(left, B).reshape(len(left), -1).T
        # cheap batched screen; survivors go through the full two-pass add
        R = span.project_out(cands)
        norms = np.linalg.norm(cands, axis=0)
        for j in np.nonzero(np.linalg.norm(R, axis=0) > tol * norms)[0]:
            span.add(cands[:, j], tol)
            if span.k > limit:
                raise RuntimeError("algebra closure exceeded dim**2 elements")
        i += 1

    basis = span.basis.T.reshape(-1, dim, dim).copy()
    return OperatorAlgebra(dim, basis, unital, hermitian_parts(gens, tol))


def null_space(A: np.ndarray, rcond: float = TOL) -> np.ndarray:
    """Orthonormal basis of ker A; singular values below rcond * max count as zero."""
    m, n = A.shape
    if m == 0 or n == 0:
        return np.eye(n, dtype=A.dtype)
    _, s, vh = np.linalg.svd(A, full_matrices=m < n)
    cut = rcond * s[0] if len(s) and s[0] > 0 else 0.0
    rank = int(np.sum(s > cut))
    return vh[rank:].conj().T


def _cluster(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Group sorted real ``values`` into runs separated by more than ``gap``."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > gap:
            groups.append(np.arange(start, i))
            start = i
    return groups


def _splitter(herms: list, dim: int) -> np.ndarray:
    # any hermitian element of the generated algebra works; a generic one
    # just keeps the parameter count small
    rng = np.random.default_rng(20010101)
    unit = [H / (hs_norm(H) / np.sqrt(dim)) for H in herms]
    S = np.zeros((dim, dim), dtype=complex)
    for H in unit:
        S += rng.standard_normal() * H
    head = unit[:4]
    for a in range(len(head)):
        for b in range(a, len(head)):
            S += rng.standard_normal() * (head[a] @ head[b] + head[b] @ head[a]) / 2
    return (S + dagger(S)) / 2


def commutant(generators: Sequence, tol: float = TOL) -> OperatorAlgebra:
    """All operators commuting with every generator (and its adjoint).

    The generators are replaced by their hermitian parts.  A hermitian element
    of the generated algebra is diagonalized first; every commuting operator is
    block diagonal in its eigenspaces, which shrinks the unknowns from dim**2
    to the sum of squared eigenvalue multiplicities.  The remaining constraints
    are imposed one generator at a time by nullspace refinement.
    """
    gens = [as_operator(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].shape[0]
    for g in gens:
        as_operator(g, dim)
    herms = hermitian_parts(gens, tol)
    if not herms:
        herms = [np.eye(dim, dtype=complex)]

    S = _splitter(herms, dim)
    w, V = np.linalg.eigh(S)
    span_w = w[-1] - w[0]
    groups = _cluster(w, 1e-8 * max(span_w, 1.0))

    # parametrization X = sum_a V_a Y_a V_a^dagger, columns HS-orthonormal
    blocks = [V[:, g] for g in groups]
    cols = []
    for Va in blocks:
        m = Va.shape[1]
        T = np.einsum("pi,qj->ijpq", Va, Va.conj()).reshape(m * m, dim * dim)
        cols.append(T)
    W = np.concatenate(cols, axis=0).T  # dim**2 x P

    N = _refine_nullspace(W.T.reshape(-1, dim, dim), herms, tol)

    basis = (W @ N).T.reshape(-1, dim, dim)
    # one more Gram-Schmidt pass keeps the basis orthonormal to ~1e-15
    q, _ = np.linalg.qr(basis.reshape(len(basis), -1).T)
    basis = q.T.reshape(-1, dim, dim)
    return OperatorAlgebra(dim, basis, True, hermitian_parts(list(basis), tol))


def algebra_commutant(alg: OperatorAlgebra, tol: float = TOL) -> OperatorAlgebra:
    return commutant(alg.generators, tol)


def _refine_nullspace(elements: np.ndarray, herms: list, tol: float) -> np.ndarray:
    """Orthonormal coefficient vectors c with [H, sum_k c_k E_k] = 0 for all H."""
    k = len(elements)
    N = np.eye(k, dtype=complex)
    for H in herms:
        if N.shape[1] == 0:
            break
        basis = np.tensordot(N.T, elements, axes=1)
        C = (np.matmul(H, basis) - np.matmul(basis, H)).reshape(len(basis), -1).T
        if np.linalg.norm(C) <= tol * hs_norm(H):
            continue
        N = N @ null_space(C, rcond=tol)
    return N


def center(alg: OperatorAlgebra, tol: float = TOL) -> OperatorAlgebra:
    """alg intersected with its commutant.

    An element of alg is central iff it commutes with a generating set, so
    only ``alg.generators`` enter the constraints.
    """
    N = _refine_nullspace(alg.basis, alg.generators, tol)
    q, _ = np.linalg.qr(N)
    basis = np.tensordot(q.T, alg.basis, axes=1)
    return OperatorAlgebra(alg.dim, basis, alg.unital)


def full_algebra(dim: int) -> OperatorAlgebra:
    basis = np.eye(dim * dim, dtype=complex).reshape(-1, dim, dim)
    return OperatorAlgebra(dim, basis, True, hermitian_parts(list(basis)))


def scalar_algebra(dim: int) -> OperatorAlgebra:
    return OperatorAlgebra(dim, np.eye(dim, dtype=complex)[None] / np.sqrt(dim), True,
                           [np.eye(dim, dtype=complex)])


def span_algebra(ops: Sequence, tol: float = TOL, unital: bool = True) -> OperatorAlgebra:
    """Orthonormalized linear span of ``ops``; caller asserts it is an algebra."""
    ops = [as_operator(X) for X in ops]
    dim = ops[0].shape[0]
    span = _Span(dim * dim)
    for X in ops:
        span.add(X.ravel(), tol)
    basis = span.basis.T.reshape(-1, dim, dim).copy()
    return OperatorAlgebra(dim, basis, unital, hermitian_parts(ops, tol))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (A + dagger(A)) / 2
