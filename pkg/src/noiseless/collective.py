"""
Collective decoherence of N qubits.

The collective operators S_a = sum_i sigma_a^(i) (Pauli normalization, so
the Casimir S.S has eigenvalue 4J(J+1)) generate the algebra of
permutation-invariant operators.  Its sectors are labeled by total spin J,
with gauge dimension 2J+1 and multiplicity equal to the number of standard
Young tableaux of the corresponding two-row shape.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import factorial
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .algebra import generate_algebra
from .pauli import PAULI
from .wedderburn import (BlockStructure, algebra_form_residual, assemble, canonical_order,
                         commutant_form_residual, decompose)

MAX_QUBITS = 12
DENSE_LIMIT = 6


def _local(op, site, n):
    mats = [np.eye(2, dtype=complex)] * n
    mats = list(mats)
    mats[site] = op
    return reduce(np.kron, mats)


def collective_sum(op, sites: Sequence[int], n: int) -> np.ndarray:
    return sum(_local(op, i, n) for i in sites)


@dataclass
class CollectiveSystem:
    N: int

    @cached_property
    def S(self):
        return tuple(collective_sum(PAULI[a], range(self.N), self.N) for a in "XYZ")

    @property
    def Sx(self):
        return self.S[0]

    @property
    def Sy(self):
        return self.S[1]

    @property
    def Sz(self):
        return self.S[2]

    @property
    def casimir(self):
        return sum(S @ S for S in self.S)

    @cached_property
    def algebra(self):
        return generate_algebra(list(self.S))

    @cached_property
    def structure(self):
        return schur_weyl_decompose(self.N)


def collective_ops(N: int) -> CollectiveSystem:
    if not 1 <= N <= MAX_QUBITS:
        raise ValueError("N must be between 1 and %d" % MAX_QUBITS)
    return CollectiveSystem(N)


# -- permutations ----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, N: int) -> tuple:
    """``"(1 2)(3)"`` (1-based cycles) to a 0-based image tuple."""
    img = list(range(N))
    seen = set()
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise ValueError("malformed permutation %r" % text)
    for body in _CYCLE_RE.findall(text):
        items = [int(t) - 1 for t in body.replace(",", " ").split()]
        for a in items:
            if not 0 <= a < N or a in seen:
                raise ValueError("malformed permutation %r" % text)
            seen.add(a)
        for a, b in zip(items, items[1:] + items[:1]):
            img[a] = b
    return tuple(img)


def perm_rep(N: int, perm) -> np.ndarray:
    """Unitary sending tensor factor k to position perm[k].

    ``perm`` is a 0-based image sequence or a cycle string such as
    ``"(1 2 3)"``.  A transposition gives the SWAP of those two qubits.
    """
    if isinstance(perm, str):
        perm = parse_cycles(perm, N)
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(N)):
        raise ValueError("not a permutation of 0..%d: %r" % (N - 1, perm))
    dim = 2 ** N
    # output axis perm[k] carries input axis k
    axes = [0] * N
    for k, p in enumerate(perm):
        axes[p] = k
    idx = np.arange(dim).reshape((2,) * N).transpose(axes).ravel()
    P = np.zeros((dim, dim), dtype=complex)
    P[np.arange(dim), idx] = 1
    return P


def symmetric_group(N: int):
    """All N! permutation unitaries, as a GroupRep."""
    from .symmetry import GroupRep
    perms = list(itertools.permutations(range(N)))
    return GroupRep(2 ** N, np.array([perm_rep(N, p) for p in perms]),
                    [str(tuple(p + 1 for p in q)) for q in perms])


# -- multiplicities --------------------------------------------------------

def spin_values(N: int) -> list:
    """J = N/2, N/2 - 1, ..., down to 0 or 1/2."""
    return [Fraction(N, 2) - k for k in range(N // 2 + 1)]


def _as_spin(J) -> Fraction:
    J = Fraction(J) if not isinstance(J, str) else Fraction(J)
    if J.denominator not in (1, 2):
        raise ValueError("J must be an integer or half-integer, got %s" % J)
    return J


def predicted_multiplicity(N: int, J) -> int:
    """(2J+1) N! / ((N/2+J+1)! (N/2-J)!), in exact integers."""
    J = _as_spin(J)
    a = Fraction(N, 2) + J
    b = Fraction(N, 2) - J
    if a.denominator != 1 or b.denominator != 1 or b < 0 or J < 0:
        raise ValueError("J = %s is not a spin value for N = %d" % (J, N))
    a, b = int(a), int(b)
    num = (a - b + 1) * factorial(N)
    den = factorial(a + 1) * factorial(b)
    if num % den:
        raise ArithmeticError("non-integral multiplicity")
    return num // den


def spin_tag(J: Fraction) -> str:
    return str(J)


# -- decompositions ---------------------------------------------------------

def _tag_sectors(bs: BlockStructure):
    for s in bs.sectors:
        s.tag = spin_tag(Fraction(s.d - 1, 2))
    return bs


def ladder_decompose(N: int) -> BlockStructure:
    """Schur-Weyl basis from highest-weight vectors and the lowering operator.

    Highest-weight vectors of spin J are the kernel of the raising operator
    on the S_z = 2J eigenspace; repeated lowering fills in the gauge index.
    """
    dim = 2 ** N
    ones = np.array([bin(i).count("1") for i in range(dim)])
    raise_ = collective_sum(np.array([[0, 1], [0, 0]], dtype=complex), range(N), N)
    lower = raise_.T.copy()
    items = []
    for J in spin_values(N):
        d = int(2 * J + 1)
        # S_z = 2J  <=>  number of ones = N/2 - J
        k = int(Fraction(N, 2) - J)
        rows = np.nonzero(ones == k)[0]
        above = np.nonzero(ones == k - 1)[0]
        if len(above):
            K = null_space(raise_[np.ix_(above, rows)].real)
        else:
            K = np.eye(len(rows))
        n = K.shape[1]
        hw = np.zeros((dim, n), dtype=complex)
        hw[rows] = K
        cols = np.empty((dim, n * d), dtype=complex)
        v = hw
        for mu in range(d):
            cols[:, mu::d] = v
            if mu + 1 < d:
                v = lower @ v
                v = v / np.linalg.norm(v, axis=0)
        items.append((n, d, cols @ cols.conj().T, cols))
    items = canonical_order(items, dim)
    bs = assemble(dim, [(n, d, C) for n, d, _, C in items])
    return _tag_sectors(bs)


def _check_multiplicities(N, bs):
    for s in bs.sectors:
        J = Fraction(s.d - 1, 2)
        want = predicted_multiplicity(N, J)
        if s.n != want:
            raise RuntimeError("J = %s: computed multiplicity %d, formula gives %d" % (J, s.n, want))


def schur_weyl_decompose(N: int, seed: int = 0, method: str = "auto") -> BlockStructure:
    """Sectors of the collective algebra A_N, tagged by spin J.

    ``method="dense"`` generates A_N and runs the generic decomposition;
    ``"ladder"`` uses the spin ladder directly and scales to N = 10 and a
    bit beyond.  ``"auto"`` picks dense up to N = 6.
    """
    if not 1 <= N <= MAX_QUBITS:
        raise ValueError("N must be between 1 and %d" % MAX_QUBITS)
    if method == "auto":
        method = "dense" if N <= DENSE_LIMIT else "ladder"
    if method == "dense":
        sys_ = collective_ops(N)
        bs = _tag_sectors(decompose(sys_.algebra, seed=seed))
    elif method == "ladder":
        bs = ladder_decompose(N)
    else:
        raise ValueError("unknown method %r" % method)
    _check_multiplicities(N, bs)
    return bs


def check_ladder(N: int, bs: BlockStructure) -> dict:
    """Cheap certificate: S_a have the algebra form, adjacent swaps the commutant form."""
    sys_ = collective_ops(N)
    a = max(algebra_form_residual(S, bs) for S in sys_.S)
    c = max((commutant_form_residual(perm_rep(N, _adjacent(N, k)), bs) for k in range(N - 1)),
            default=0.0)
    return {"algebra_residual": a, "commutant_residual": c}


def _adjacent(N, k):
    p = list(range(N))
    p[k], p[k + 1] = p[k + 1], p[k]
    return p


def three_qubit_doublet_states() -> list:
    """The four J = 1/2 vectors |psi^alpha_beta> for three qubits.

    Returns ``[((alpha, beta), vector), ...]``.  alpha labels the copy of
    the spin-1/2 irrep (multiplicity index), beta the S_z value (gauge
    index, beta = 1 is m = +1/2).
    """
    def ket(bits):
        v = np.zeros(8, dtype=complex)
        v[int(bits, 2)] = 1
        return v

    r2 = np.sqrt(2)
    r6 = np.sqrt(6)
    return [
        ((1, 1), (ket("010") - ket("100")) / r2),
        ((1, 2), (ket("011") - ket("101")) / r2),
        ((2, 1), 2 / r6 * (0.5 * (ket("010") + ket("100")) - ket("001"))),
        ((2, 2), 2 / r6 * (ket("110") - 0.5 * (ket("011") + ket("101")))),
    ]


# -- clusters --------------------------------------------------------------

@dataclass
class ClusterReport:
    sizes: tuple
    structure: BlockStructure
    computed: list
    predicted: list
    match: bool

    @property
    def ns_dims(self):
        return sorted(n for n, _ in self.computed if n >= 2)

    @property
    def max_ns_dim(self):
        return max((n for n, _ in self.computed), default=1)

    def to_dict(self):
        return {"clusters": list(self.sizes), "computed": [list(x) for x in self.computed],
                "predicted": [list(x) for x in self.predicted], "match": self.match,
                "ns_dims": self.ns_dims, "max_ns_dim": self.max_ns_dim if self.ns_dims else 0}


def cluster_generators(sizes: Sequence[int]) -> list:
    N = sum(sizes)
    gens = []
    start = 0
    for c in sizes:
        sites = range(start, start + c)
        gens.extend(collective_sum(PAULI[a], sites, N) for a in "XYZ")
        start += c
    return gens


def predicted_cluster_sectors(sizes: Sequence[int]) -> list:
    """Sorted (n, d) over all combinations of per-cluster spins."""
    per = [[(predicted_multiplicity(c, J), int(2 * J + 1)) for J in spin_values(c)] for c in sizes]
    out = []
    for combo in itertools.product(*per):
        n = int(np.prod([x[0] for x in combo]))
        d = int(np.prod([x[1] for x in combo]))
        out.append((n, d))
    return sorted(out)


MAX_CLUSTER_ALGEBRA = 2500


def cluster_decompose(sizes: Sequence[int], seed: int = 0) -> ClusterReport:
    """Decompose the algebra of independent collective clusters."""
    sizes = tuple(int(c) for c in sizes)
    if not sizes or min(sizes) < 1 or sum(sizes) > 10:
        raise ValueError("cluster sizes must be positive with total at most 10")
    predicted = predicted_cluster_sectors(sizes)
    alg_dim = sum(d * d for _, d in predicted)
    if alg_dim > MAX_CLUSTER_ALGEBRA:
        raise ValueError("the cluster algebra has dimension %d; dense decomposition is "
                         "capped at %d" % (alg_dim, MAX_CLUSTER_ALGEBRA))
    alg = generate_algebra(cluster_generators(sizes))
    bs = decompose(alg, seed=seed)
    computed = sorted((s.n, s.d) for s in bs.sectors)
    return ClusterReport(sizes, bs, computed, predicted, computed == predicted)
