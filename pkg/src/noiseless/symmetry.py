"""
Finite groups of unitaries, group averaging and symmetrized control.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import (TOL, as_operator, commutator, dagger, generate_algebra, hs_norm,
                      span_algebra)
from .wedderburn import BlockStructure, decompose, multiplicity_part

SAME_ELEMENT = 1e-8


@dataclass
class GroupRep:
    dim: int
    elements: np.ndarray
    labels: list = field(default_factory=list)

    def __post_init__(self):
        self.elements = np.asarray(self.elements, dtype=complex).reshape(-1, self.dim, self.dim)
        if not self.labels:
            self.labels = ["g%d" % i for i in range(len(self.elements))]

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def index(self, U, tol=SAME_ELEMENT):
        d = np.linalg.norm((self.elements - U).reshape(len(self), -1), axis=1)
        hits = np.nonzero(d < tol)[0]
        return int(hits[0]) if len(hits) else None

    def check(self, tol: float = 1e-8) -> dict:
        """Residuals of unitarity, identity membership and closure."""
        eye = np.eye(self.dim)
        unit = max(hs_norm(dagger(g) @ g - eye) for g in self.elements)
        has_id = self.index(eye, tol) is not None
        closed = all(self.index(a @ b, tol) is not None
                     for a in self.elements for b in self.elements)
        return {"unitarity": float(unit), "identity": has_id, "closed": closed}

    def to_dict(self):
        return {"dim": self.dim,
                "elements": [{"name": lab, "re": g.real.tolist(), "im": g.imag.tolist()}
                             for lab, g in zip(self.labels, self.elements)]}

    @classmethod
    def from_dict(cls, data):
        els = [np.asarray(e["re"]) + 1j * np.asarray(e.get("im", np.zeros_like(e["re"])))
               for e in data["elements"]]
        return cls(int(data["dim"]), np.array(els), [e.get("name", "") for e in data["elements"]])


def close_group(generators: Sequence, max_order: int = 10000, labels: Sequence[str] | None = None) -> GroupRep:
    """Breadth-first closure of ``generators`` under multiplication.

    Elements are identified when their HS distance is below 1e-8, so global
    phases are significant.  Labels are words in the generator labels.
    """
    gens = [as_operator(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].shape[0]
    for g in gens:
        as_operator(g, dim)
        if hs_norm(dagger(g) @ g - np.eye(dim)) > 1e-10 * np.sqrt(dim):
            raise ValueError("generator is not unitary")
    names = list(labels) if labels else ["a%d" % i for i in range(len(gens))]

    elements = [np.eye(dim, dtype=complex)]
    words = ["e"]
    flat = np.empty((max_order, dim * dim), dtype=complex)
    flat[0] = elements[0].ravel()
    i = 0
    while i < len(elements):
        for g, name in zip(gens, names):
            h = g @ elements[i]
            dist = np.linalg.norm(flat[:len(elements)] - h.ravel(), axis=1)
            if np.min(dist) < SAME_ELEMENT:
                continue
            if len(elements) == max_order:
                raise OverflowError("group order exceeds %d; the generators may not "
                                    "generate a finite group" % max_order)
            flat[len(elements)] = h.ravel()
            elements.append(h)
            words.append(name if words[i] == "e" else name + "." + words[i])
        i += 1
    return GroupRep(dim, np.array(elements), words)


def twirl(X, G: GroupRep) -> np.ndarray:
    """Group average |G|^-1 sum_g g X g^dagger."""
    X = as_operator(X, G.dim)
    acc = np.zeros_like(X)
    for g in G.elements:
        acc += g @ X @ dagger(g)
    return acc / len(G)


def group_algebra(G: GroupRep):
    """The span of the group elements, as an OperatorAlgebra."""
    return span_algebra(list(G.elements))


@dataclass
class SuppressionReport:
    invariance_residual: float
    hamiltonian_invariant: bool
    coupling_norms: list
    suppressed: list
    tol: float

    @property
    def verdict(self) -> bool:
        return self.hamiltonian_invariant and all(self.suppressed)

    def to_dict(self):
        return {"invariance_residual": self.invariance_residual,
                "hamiltonian_invariant": self.hamiltonian_invariant,
                "coupling_norms": self.coupling_norms, "suppressed": self.suppressed,
                "verdict": self.verdict, "tol": self.tol}


def check_suppression(H_S, couplings: Sequence, G: GroupRep, tol: float = 1e-10) -> SuppressionReport:
    """Does symmetrizing over G keep H_S and average every coupling to zero?"""
    H_S = as_operator(H_S, G.dim)
    res = hs_norm(twirl(H_S, G) - H_S)
    norms = [hs_norm(twirl(S, G)) for S in couplings]
    return SuppressionReport(float(res), res < tol, [float(v) for v in norms],
                             [bool(v < tol) for v in norms], tol)


@dataclass
class GroupNSReport:
    structure: BlockStructure
    residuals: list
    contained: bool
    ns_dims: list
    tol: float

    def to_dict(self):
        return {"residuals": self.residuals, "contained": self.contained,
                "ns_dims": self.ns_dims, "tol": self.tol,
                "sectors": [[s.n, s.d] for s in self.structure.sectors],
                # A inside rho(CG) forces NS of at least these dimensions on A
                "bound": "lower"}


def ns_from_group(alg_gens: Sequence, G: GroupRep, tol: float = 1e-8, seed: int = 0) -> GroupNSReport:
    """Test A inside span(G) and decompose the group algebra."""
    CG = group_algebra(G)
    res = [float(CG.residual(as_operator(g, G.dim))) for g in alg_gens]
    contained = all(r < tol * max(hs_norm(g), 1.0) for r, g in zip(res, alg_gens))
    bs = decompose(CG, seed=seed)
    ns = [s.n for s in bs.sectors if s.n >= 2]
    return GroupNSReport(bs, res, bool(contained), ns, tol)


def ns_from_lie_generators(alg_gens: Sequence, lie_gens: Sequence, tol: float = 1e-8,
                           seed: int = 0) -> GroupNSReport:
    """ns_from_group for a compact group given by hermitian Lie-algebra generators.

    The associative algebra generated by ``lie_gens`` stands in for the span
    of the group elements.
    """
    CG = generate_algebra(list(lie_gens))
    res = [float(CG.residual(as_operator(g, CG.dim))) for g in alg_gens]
    contained = all(r < tol * max(hs_norm(g), 1.0) for r, g in zip(res, alg_gens))
    bs = decompose(CG, seed=seed)
    ns = [s.n for s in bs.sectors if s.n >= 2]
    return GroupNSReport(bs, res, bool(contained), ns, tol)


# -- Lie closure -----------------------------------------------------------

def _real_vec(X):
    return np.concatenate([X.real.ravel(), X.imag.ravel()])


def lie_closure(generators: Sequence, tol: float = TOL, max_dim: int | None = None) -> np.ndarray:
    """Real Lie algebra generated by anti-hermitian ``generators``.

    Returns a stack of matrices orthonormal under Re tr(A^dagger B).
    Commutators of every new element with all earlier ones are added until
    a full round brings nothing new.
    """
    gens = [as_operator(g) for g in generators]
    dim = gens[0].shape[0]
    limit = max_dim or dim * dim
    Q = np.zeros((2 * dim * dim, limit))
    mats = []

    def add(X):
        v = _real_vec(X)
        nv = np.linalg.norm(v)
        if nv == 0:
            return False
        B = Q[:, :len(mats)]
        r = v - B @ (B.T @ v)
        r = r - B @ (B.T @ r)
        nr = np.linalg.norm(r)
        if nr <= tol * nv or len(mats) == limit:
            return False
        Q[:, len(mats)] = r / nr
        half = dim * dim
        mats.append((r[:half] + 1j * r[half:]).reshape(dim, dim) / nr)
        return True

    for g in gens:
        add(g)
    i = 0
    while i < len(mats):
        for j in range(i):
            add(commutator(mats[j], mats[i]))
        i += 1
    return np.array(mats) if mats else np.zeros((0, dim, dim), dtype=complex)


def _real_rank(mats, tol):
    if len(mats) == 0:
        return 0
    A = np.array([_real_vec(M) for M in mats])
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > tol * s[0])) if s[0] > 0 else 0


@dataclass
class UniversalityReport:
    label: int
    n: int
    lie_dim: int
    projected_dim: int
    projected_traceless_dim: int
    universal_u: bool
    universal_su: bool

    def to_dict(self):
        return dict(self.__dict__)


def symmetrized_universality(H1, H2, G: GroupRep, bs: BlockStructure, label,
                             tol: float = 1e-9) -> UniversalityReport:
    """Lie-closure dimension of the twirled pair on one multiplicity factor.

    ``bs`` is the decomposition of span(G).  The twirled Hamiltonians act as
    M (x) 1 on each sector; the multiplicity parts of the generated Lie
    algebra are compared with u(n) (dimension n**2) and su(n) (n**2 - 1).
    """
    H1 = as_operator(H1, G.dim)
    H2 = as_operator(H2, G.dim)
    for H in (H1, H2):
        if hs_norm(H - dagger(H)) > 1e-10 * max(hs_norm(H), 1.0):
            raise ValueError("Hamiltonians must be hermitian")
    K1 = twirl(H1, G)
    K2 = twirl(H2, G)
    L = lie_closure([1j * K1, 1j * K2], tol)
    s = bs.sector(label)
    parts = [multiplicity_part(X, bs, label) for X in L]
    proj = _real_rank(parts, tol)
    traceless = [P - np.trace(P) / s.n * np.eye(s.n) for P in parts]
    proj0 = _real_rank(traceless, tol)
    return UniversalityReport(s.label, s.n, len(L), proj, proj0,
                              proj >= s.n ** 2, proj0 >= s.n ** 2 - 1)


def pauli_group(n: int = 1) -> GroupRep:
    """The n-qubit Pauli group with phases {1, i, -1, -i}."""
    from .pauli import PauliString
    gens, names = [], []
    for q in range(n):
        for letter in "XYZ":
            gens.append(PauliString.single(n, q, letter).to_matrix())
            names.append("%s%d" % (letter, q + 1))
    return close_group(gens, labels=names)
