"""
Error-correcting codes read off a block decomposition.

Fixing the gauge index mu of a sector gives the code span{|J lam mu>}_lam,
which satisfies the Knill-Laflamme condition for every error set inside the
algebra.  Fixing lam instead gives a code for errors inside the commutant.
The stabilizer construction is the abelian special case: d_J = 1 and one
sector per syndrome.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import as_operator, dagger
from .pauli import PauliString, gf2_rank, gf2_solve, symplectic_product
from .wedderburn import BlockStructure, assemble

MULTIPLICITY = "multiplicity"
GAUGE = "gauge"


@dataclass
class CodeSubspace:
    """Orthonormal code basis (columns of ``basis``) inside one sector."""

    dim: int
    basis: np.ndarray
    label: int
    fixed_index: int
    role: str
    tag: str = ""

    @property
    def k(self):
        return self.basis.shape[1]

    def to_dict(self):
        return {"dim": self.dim, "label": self.label, "fixed_index": self.fixed_index,
                "role": self.role, "tag": self.tag,
                "basis": {"re": self.basis.real.tolist(), "im": self.basis.imag.tolist()}}

    @classmethod
    def from_dict(cls, data):
        B = np.asarray(data["basis"]["re"]) + 1j * np.asarray(data["basis"]["im"])
        B = B.reshape(int(data["dim"]), -1)
        return cls(int(data["dim"]), B, data.get("label", 0), data.get("fixed_index", 0),
                   data.get("role", MULTIPLICITY), data.get("tag", ""))

    @classmethod
    def from_vectors(cls, vectors, label=0, fixed_index=0, role=MULTIPLICITY):
        B = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
        return cls(B.shape[0], B, label, fixed_index, role)


def extract_code(bs: BlockStructure, label, fixed_index: int, role: str = MULTIPLICITY) -> CodeSubspace:
    """Code inside sector ``label`` with one index held fixed (0-based).

    ``role="multiplicity"`` fixes mu and returns the n_J-dimensional code
    span{|J lam mu>}_lam; ``role="gauge"`` fixes lam and returns the
    d_J-dimensional code span{|J lam mu>}_mu.
    """
    s = bs.sector(label)
    U = bs.basis_change
    if role == MULTIPLICITY:
        if not 0 <= fixed_index < s.d:
            raise IndexError("mu = %d out of range 0..%d" % (fixed_index, s.d - 1))
        cols = [s.offset + lam * s.d + fixed_index for lam in range(s.n)]
    elif role == GAUGE:
        if not 0 <= fixed_index < s.n:
            raise IndexError("lam = %d out of range 0..%d" % (fixed_index, s.n - 1))
        cols = [s.offset + fixed_index * s.d + mu for mu in range(s.d)]
    else:
        raise ValueError("role must be %r or %r" % (MULTIPLICITY, GAUGE))
    return CodeSubspace(bs.dim, U[:, cols].copy(), s.label, fixed_index, role, s.tag)


@dataclass
class KLReport:
    c: np.ndarray = field(repr=False)
    off_diagonal: float
    diagonal_spread: float
    c_rank: int
    n_errors: int
    tol: float
    passed: bool
    degenerate: bool

    def to_dict(self):
        return {"c": {"re": self.c.real.tolist(), "im": self.c.imag.tolist()},
                "off_diagonal": self.off_diagonal, "diagonal_spread": self.diagonal_spread,
                "c_rank": self.c_rank, "n_errors": self.n_errors, "tol": self.tol,
                "passed": self.passed, "degenerate": self.degenerate}

    @classmethod
    def from_dict(cls, data):
        c = np.asarray(data["c"]["re"]) + 1j * np.asarray(data["c"]["im"])
        return cls(c, data["off_diagonal"], data["diagonal_spread"], data["c_rank"],
                   data["n_errors"], data["tol"], data["passed"], data["degenerate"])


def kl_check(code: CodeSubspace, errors: Sequence, tol: float = 1e-8) -> KLReport:
    """Knill-Laflamme test <a| e_i^dagger e_j |b> = delta_ab c_ij.

    ``off_diagonal`` is the largest |<a|e_i^dagger e_j|b>| with a != b and
    ``diagonal_spread`` the largest deviation of a diagonal entry from its
    mean over a.  The code is degenerate when c has rank below the number
    of errors (relative singular value cutoff ``tol``).
    """
    errors = [as_operator(e, code.dim) for e in errors]
    if not errors:
        raise ValueError("empty error list")
    V = code.basis
    k = V.shape[1]
    m = len(errors)
    W = np.concatenate([e @ V for e in errors], axis=1)  # dim x (m k)
    G = (dagger(W) @ W).reshape(m, k, m, k).transpose(0, 2, 1, 3)  # [i, j, a, b]
    diag = np.einsum("ijaa->ija", G)
    c = diag.mean(axis=2)
    off = G - np.einsum("ija,ab->ijab", diag, np.eye(k))
    off_max = float(np.max(np.abs(off), initial=0.0))
    spread = float(np.max(np.abs(diag - c[:, :, None]), initial=0.0))
    s = np.linalg.svd(c, compute_uv=False)
    rank = int(np.sum(s > tol * s[0])) if s[0] > 0 else 0
    passed = off_max < tol and spread < tol
    return KLReport(c, off_max, spread, rank, m, tol, bool(passed), rank < m)


# -- stabilizer layer -----------------------------------------------------

class PairClass(enum.Enum):
    IN_GROUP = "in_group"
    ANTICOMMUTES = "anticommutes"
    UNDETECTABLE = "undetectable"


@dataclass
class PairClassification:
    kind: PairClass
    product: PauliString
    # i**phase * (group element) == product, when kind is IN_GROUP
    phase: int | None = None
    witness: int | None = None


def check_stabilizer(gens: Sequence[PauliString]):
    gens = list(gens)
    if not gens:
        return
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators act on different qubit counts")
        if not g.is_hermitian():
            raise ValueError("generator %s is not hermitian" % g)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if symplectic_product(gens[a], gens[b]):
                raise ValueError("generators %s and %s anticommute" % (gens[a], gens[b]))
    if gf2_rank(np.array([g.bits for g in gens])) < len(gens):
        raise ValueError("generators are dependent over GF(2)")


def stabilizer_decompose(gens: Sequence[PauliString], n: int | None = None) -> BlockStructure:
    """Joint eigenspaces of a stabilizer group as a BlockStructure.

    Sector label s has bit j (most significant first, generator order) set
    when generator j has eigenvalue -1.  Every sector has d = 1 and
    n = 2**(N - k).
    """
    gens = list(gens)
    check_stabilizer(gens)
    if n is None:
        if not gens:
            raise ValueError("qubit count needed for an empty generator list")
        n = gens[0].n
    dim = 2 ** n
    k = len(gens)
    mats = [g.to_matrix() for g in gens]
    pieces, tags = [], []
    for s in range(2 ** k):
        P = np.eye(dim, dtype=complex)
        for j, M in enumerate(mats):
            sign = -1 if (s >> (k - 1 - j)) & 1 else 1
            P = P @ (np.eye(dim) + sign * M) / 2
        w, V = np.linalg.eigh((P + dagger(P)) / 2)
        C = V[:, w > 0.5]
        if C.shape[1] != 2 ** (n - k):
            raise RuntimeError("syndrome space %d has dimension %d" % (s, C.shape[1]))
        pieces.append((C.shape[1], 1, C))
        tags.append(format(s, "0%db" % k) if k else "")
    return assemble(dim, pieces, tags=tags)


def classify_error_pair(e_i: PauliString, e_j: PauliString,
                        gens: Sequence[PauliString]) -> PairClassification:
    """Correctability class of e_i^dagger e_j against a stabilizer group."""
    gens = list(gens)
    check_stabilizer(gens)
    p = e_i.dagger() * e_j
    for idx, g in enumerate(gens):
        if symplectic_product(p, g):
            return PairClassification(PairClass.ANTICOMMUTES, p, witness=idx)
    if gens:
        x = gf2_solve(np.array([g.bits for g in gens]), p.bits)
    else:
        x = np.zeros(0, dtype=np.uint8) if not p.bits.any() else None
    if x is None:
        return PairClassification(PairClass.UNDETECTABLE, p)
    elem = PauliString.identity(p.n)
    for bit, g in zip(x, gens):
        if bit:
            elem = elem * g
    return PairClassification(PairClass.IN_GROUP, p, phase=(p.phase - elem.phase) % 4)
