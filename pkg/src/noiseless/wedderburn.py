"""
Block decomposition of a finite-dimensional *-algebra.

For a unital dagger-closed algebra A on H we find a unitary U whose columns
form a basis |J, lam, mu> with

    U^dagger A U = sum_J  1_{n_J} (x) M(d_J)
    U^dagger A' U = sum_J  M(n_J) (x) 1_{d_J}

Columns are ordered sector by sector, lam-major inside a sector.  The
multiplicity factor C^{n_J} of a sector with n_J >= 2 is a noiseless
subsystem.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Sequence

import numpy as np

from .algebra import (OperatorAlgebra, algebra_commutant, as_operator, center,
                      dagger, hs_norm, _cluster)

MAX_RETRIES = 5
CLUSTER_GAP = 1e-6


class DecompositionError(RuntimeError):
    """The randomized block splitting could not be certified."""


@dataclass
class Sector:
    label: int
    n: int
    d: int
    offset: int
    tag: str = ""

    @property
    def size(self):
        return self.n * self.d

    @property
    def slice(self):
        return slice(self.offset, self.offset + self.n * self.d)


@dataclass
class BlockStructure:
    dim: int
    sectors: list
    basis_change: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        self.basis_change = np.asarray(self.basis_change, dtype=complex)

    def sector(self, label) -> Sector:
        for s in self.sectors:
            if s.label == label or (s.tag and s.tag == str(label)):
                return s
        raise KeyError("no sector %r" % (label,))

    def isometry(self, label) -> np.ndarray:
        """Columns of U spanning the given sector."""
        return self.basis_change[:, self.sector(label).slice]

    def projector(self, label) -> np.ndarray:
        V = self.isometry(label)
        return V @ dagger(V)

    def vector(self, label, lam: int, mu: int) -> np.ndarray:
        s = self.sector(label)
        if not (0 <= lam < s.n and 0 <= mu < s.d):
            raise IndexError("(lam, mu) = (%d, %d) out of range for n=%d, d=%d" % (lam, mu, s.n, s.d))
        return self.basis_change[:, s.offset + lam * s.d + mu]

    @property
    def dims(self):
        return [(s.n, s.d) for s in self.sectors]

    def to_dict(self) -> dict:
        U = self.basis_change
        return {
            "dim": self.dim,
            "seed": self.seed,
            "sectors": [asdict(s) for s in self.sectors],
            "basis_change": {"re": U.real.tolist(), "im": U.imag.tolist()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BlockStructure":
        U = np.asarray(data["basis_change"]["re"]) + 1j * np.asarray(data["basis_change"]["im"])
        sectors = [Sector(**s) for s in data["sectors"]]
        return cls(int(data["dim"]), sectors, U, data.get("seed"))


@dataclass
class NSDescriptor:
    label: int
    ns_dim: int
    gauge_dim: int
    encoder: np.ndarray = field(repr=False)
    tag: str = ""


@dataclass
class VerificationReport:
    algebra_residual: float
    commutant_residual: float
    unitarity_residual: float
    dim_hilbert: tuple
    dim_algebra: tuple
    dim_commutant: tuple
    tol: float
    passed: bool

    def to_dict(self):
        return asdict(self)


# -- block pattern helpers -------------------------------------------------

def to_block_basis(X, bs: BlockStructure) -> np.ndarray:
    X = as_operator(X, bs.dim)
    U = bs.basis_change
    return dagger(U) @ X @ U


def off_block(Y: np.ndarray, sectors: Sequence[Sector]) -> np.ndarray:
    """Copy of ``Y`` with the diagonal sector blocks zeroed."""
    R = Y.copy()
    for s in sectors:
        R[s.slice, s.slice] = 0
    return R


def multiplicity_form_residual(B: np.ndarray, n: int, d: int) -> float:
    """Distance of an (n d) x (n d) block from the form 1_n (x) M."""
    M = np.einsum("iaib->ab", B.reshape(n, d, n, d)) / n
    return hs_norm(B - np.kron(np.eye(n), M))


def gauge_form_residual(B: np.ndarray, n: int, d: int) -> float:
    """Distance of an (n d) x (n d) block from the form M (x) 1_d."""
    M = np.einsum("aibi->ab", B.reshape(n, d, n, d)) / d
    return hs_norm(B - np.kron(M, np.eye(d)))


def algebra_form_residual(X, bs: BlockStructure) -> float:
    """How far ``X`` is from lying in the algebra described by ``bs``."""
    Y = to_block_basis(X, bs)
    r2 = hs_norm(off_block(Y, bs.sectors)) ** 2
    for s in bs.sectors:
        r2 += multiplicity_form_residual(Y[s.slice, s.slice], s.n, s.d) ** 2
    return float(np.sqrt(r2))


def commutant_form_residual(X, bs: BlockStructure) -> float:
    Y = to_block_basis(X, bs)
    r2 = hs_norm(off_block(Y, bs.sectors)) ** 2
    for s in bs.sectors:
        r2 += gauge_form_residual(Y[s.slice, s.slice], s.n, s.d) ** 2
    return float(np.sqrt(r2))


def multiplicity_part(X, bs: BlockStructure, label) -> np.ndarray:
    """Partial trace over the gauge factor of sector ``label``, divided by d."""
    s = bs.sector(label)
    V = bs.isometry(label)
    B = dagger(V) @ np.asarray(X) @ V
    return np.einsum("aibi->ab", B.reshape(s.n, s.d, s.n, s.d)) / s.d


def canonical_order(sectors_with_q: list, dim: int) -> list:
    """Sort (n, d, Q, payload) tuples by (d, n, trace fingerprint)."""
    weights = np.arange(dim, dtype=float)

    def key(item):
        n, d, Q = item[0], item[1], item[2]
        fp = float(np.real(np.diag(Q)) @ weights)
        return (d, n, round(fp, 6))

    return sorted(sectors_with_q, key=key)


def assemble(dim: int, pieces: list, seed=None, tags=None) -> BlockStructure:
    """Build a BlockStructure from ordered (n, d, columns) pieces."""
    cols = []
    sectors = []
    offset = 0
    for i, (n, d, C) in enumerate(pieces):
        tag = tags[i] if tags else ""
        sectors.append(Sector(i, int(n), int(d), offset, tag))
        cols.append(C)
        offset += n * d
    U = np.concatenate(cols, axis=1) if cols else np.zeros((dim, 0))
    return BlockStructure(dim, sectors, U, seed)


# -- decomposition ---------------------------------------------------------

def _check_input(alg: OperatorAlgebra, tol: float):
    res = alg.closure_residuals()
    if not alg.unital or res["identity"] > 1e-8:
        raise ValueError("decompose needs a unital algebra")
    if res["dagger"] > 1e-8:
        raise ValueError("decompose needs a dagger-closed algebra (residual %.2e)" % res["dagger"])


def _central_projectors(Z: OperatorAlgebra, rng, gap: float):
    H = Z.random_element(rng, hermitian=True)
    w, V = np.linalg.eigh(H)
    rng_w = w[-1] - w[0]
    flat = rng_w <= 1e-12 * max(abs(w[0]), abs(w[-1]), 1.0)
    groups = [np.arange(len(w))] if flat else _cluster(w, gap * rng_w)
    return [V[:, g] for g in groups]


def _split_sector(alg: OperatorAlgebra, P: np.ndarray, rng, gap: float):
    """Return (n, d, columns) for one sector with isometry ``P``."""
    m = P.shape[1]
    H = dagger(P) @ alg.random_element(rng, hermitian=True) @ P
    w, V = np.linalg.eigh((H + dagger(H)) / 2)
    rng_w = w[-1] - w[0]
    groups = _cluster(w, gap * rng_w) if rng_w > 1e-12 * max(abs(w[0]), abs(w[-1]), 1.0) \
        else [np.arange(m)]
    sizes = {len(g) for g in groups}
    if len(sizes) != 1:
        raise DecompositionError("uneven eigenvalue clusters %s" % sorted(len(g) for g in groups))
    d = len(groups)
    n = m // d
    blocks = [V[:, g] for g in groups]  # each m x n, spans 1_n (x) |e_mu>

    # transport the reference block to the others with an algebra element
    R = dagger(P) @ alg.random_element(rng) @ P
    ref = blocks[0]
    aligned = [ref]
    for Vk in blocks[1:]:
        T = dagger(Vk) @ R @ ref
        u, s, vh = np.linalg.svd(T)
        if s[-1] < 1e-6 * max(s[0], 1e-300) or s[-1] < 1e-10:
            raise DecompositionError("degenerate transport element")
        if s[0] - s[-1] > 1e-6 * s[0]:
            raise DecompositionError("transport is not a multiple of a unitary")
        aligned.append(Vk @ (u @ vh))

    cols = np.empty((m, n * d), dtype=complex)
    for mu, B in enumerate(aligned):
        cols[:, mu::d] = B
    return n, d, P @ cols


def _attempt(alg, Z, seed, gap):
    rng = np.random.default_rng(seed)
    projs = _central_projectors(Z, rng, gap)
    if len(projs) != len(Z):
        raise DecompositionError("found %d central blocks, center has dimension %d"
                                 % (len(projs), len(Z)))
    items = []
    for P in projs:
        n, d, C = _split_sector(alg, P, rng, gap)
        items.append((n, d, P @ dagger(P), C))
    items = canonical_order(items, alg.dim)
    bs = assemble(alg.dim, [(n, d, C) for n, d, _, C in items], seed)
    return bs


def decompose(alg: OperatorAlgebra, seed: int = 0, tol: float = 1e-8,
              gap: float = CLUSTER_GAP) -> BlockStructure:
    """Randomized block decomposition, certified against the algebra.

    Each attempt samples generic elements of the center and of the algebra
    restricted to each central block.  An attempt is accepted when every
    algebra basis element has the block form within ``tol`` and the sector
    table accounts for dim A and dim H.  Failed attempts are retried with
    ``seed + 1, seed + 2, ...``; the seed that succeeded is stored on the
    result.
    """
    _check_input(alg, tol)
    Z = center(alg)
    problems = []
    for attempt in range(MAX_RETRIES + 1):
        s = seed + attempt
        try:
            bs = _attempt(alg, Z, s, gap)
        except DecompositionError as exc:
            problems.append("seed %d: %s" % (s, exc))
            continue
        dims_ok = (sum(x.n * x.d for x in bs.sectors) == alg.dim
                   and sum(x.d ** 2 for x in bs.sectors) == len(alg))
        res = max(algebra_form_residual(B, bs) for B in alg.basis)
        if dims_ok and res < tol:
            return bs
        problems.append("seed %d: residual %.2e, dims_ok=%s" % (s, res, dims_ok))
    raise DecompositionError("decomposition failed: " + "; ".join(problems))


def verify_structure(alg: OperatorAlgebra, bs: BlockStructure, tol: float = 1e-8,
                     comm: OperatorAlgebra | None = None) -> VerificationReport:
    """Independent certification of a BlockStructure against ``alg``.

    The commutant is recomputed from the algebra's generators unless given.
    """
    if alg.dim != bs.dim:
        raise ValueError("dimension mismatch: %d vs %d" % (alg.dim, bs.dim))
    if comm is None:
        comm = algebra_commutant(alg)
    U = bs.basis_change
    unit = hs_norm(dagger(U) @ U - np.eye(bs.dim)) if U.shape == (bs.dim, bs.dim) else np.inf
    a_res = max((algebra_form_residual(B, bs) for B in alg.basis), default=0.0) \
        if U.shape == (bs.dim, bs.dim) else np.inf
    c_res = max((commutant_form_residual(B, bs) for B in comm.basis), default=0.0) \
        if U.shape == (bs.dim, bs.dim) else np.inf
    dh = (sum(s.n * s.d for s in bs.sectors), bs.dim)
    da = (sum(s.d ** 2 for s in bs.sectors), len(alg))
    dc = (sum(s.n ** 2 for s in bs.sectors), len(comm))
    passed = bool(unit < tol and a_res < tol and c_res < tol
                  and dh[0] == dh[1] and da[0] == da[1] and dc[0] == dc[1])
    return VerificationReport(float(a_res), float(c_res), float(unit), dh, da, dc, tol, passed)


def noiseless_subsystems(bs: BlockStructure, gauge_index: int = 0) -> list:
    """One descriptor per sector with multiplicity at least two.

    The encoder maps C^{n_J} into H with the gauge factor fixed to basis
    vector ``gauge_index``.
    """
    out = []
    for s in bs.sectors:
        if s.n < 2:
            continue
        g = min(gauge_index, s.d - 1)
        enc = bs.basis_change[:, s.offset + g: s.offset + s.n * s.d: s.d]
        out.append(NSDescriptor(s.label, s.n, s.d, enc, s.tag))
    return out


def trivial_structure(dim: int) -> BlockStructure:
    """The scalar algebra: one sector, n = dim, d = 1."""
    return assemble(dim, [(dim, 1, np.eye(dim, dtype=complex))])
