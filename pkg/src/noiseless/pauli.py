"""
Pauli strings in the binary symplectic representation.

A PauliString is ``i**phase * X^x_1 Z^z_1 (x) ... (x) X^x_N Z^z_N`` with
qubit 1 the leftmost tensor factor.  Text form is a word over IXYZ with
an optional ``+``, ``-``, ``i``, ``+i``, ``-i`` prefix, e.g. ``-iXZI``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

PAULI = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}

_PREFIX = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_TEXT_RE = re.compile(r"^\s*([+-]?i?)([IXYZ]*)\s*$")


@dataclass(frozen=True)
class PauliString:
    x: tuple
    z: tuple
    phase: int = 0

    def __post_init__(self):
        if len(self.x) != len(self.z):
            raise ValueError("x and z bit vectors differ in length")
        object.__setattr__(self, "x", tuple(int(b) & 1 for b in self.x))
        object.__setattr__(self, "z", tuple(int(b) & 1 for b in self.z))
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        m = _TEXT_RE.match(text)
        if m is None:
            raise ValueError("not a Pauli string: %r" % (text,))
        prefix, word = m.groups()
        if not word:
            raise ValueError("empty Pauli string: %r" % (text,))
        x = [1 if c in "XY" else 0 for c in word]
        z = [1 if c in "ZY" else 0 for c in word]
        # Y = i X Z
        return cls(tuple(x), tuple(z), _PREFIX[prefix] + word.count("Y"))

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls((0,) * n, (0,) * n, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """``letter`` on ``qubit`` (0-based), identity elsewhere."""
        word = ["I"] * n
        word[qubit] = letter
        return cls.parse("".join(word))

    @property
    def word(self) -> str:
        return "".join("IZXY"[xb * 2 + zb] for xb, zb in zip(self.x, self.z))

    def __str__(self):
        ph = (self.phase - self.word.count("Y")) % 4
        return ["", "i", "-", "-i"][ph] + self.word

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        # Z^z1 X^x2 = (-1)^(z1.x2) X^x2 Z^z1
        swaps = sum(a & b for a, b in zip(self.z, other.x))
        x = tuple(a ^ b for a, b in zip(self.x, other.x))
        z = tuple(a ^ b for a, b in zip(self.z, other.z))
        return PauliString(x, z, self.phase + other.phase + 2 * swaps)

    def dagger(self) -> "PauliString":
        xz = sum(a & b for a, b in zip(self.x, self.z))
        return PauliString(self.x, self.z, -self.phase + 2 * xz)

    def commutes(self, other: "PauliString") -> bool:
        return symplectic_product(self, other) == 0

    def is_hermitian(self) -> bool:
        return self.dagger() == self

    @property
    def bits(self) -> np.ndarray:
        return np.array(self.x + self.z, dtype=np.uint8)

    def weight(self) -> int:
        return sum(a | b for a, b in zip(self.x, self.z))

    def to_matrix(self) -> np.ndarray:
        factors = [np.linalg.matrix_power(_X, xb) @ np.linalg.matrix_power(_Z, zb)
                   for xb, zb in zip(self.x, self.z)]
        return (1j ** self.phase) * reduce(np.kron, factors, np.eye(1, dtype=complex))


def symplectic_product(p: PauliString, q: PauliString) -> int:
    return (sum(a & b for a, b in zip(p.x, q.z)) + sum(a & b for a, b in zip(p.z, q.x))) % 2


def pauli_matrix(text: str) -> np.ndarray:
    return PauliString.parse(text).to_matrix()


# -- GF(2) linear algebra --------------------------------------------------

def gf2_row_reduce(A) -> tuple[np.ndarray, list]:
    """Reduced row echelon form over GF(2) and the pivot columns."""
    A = np.array(A, dtype=np.uint8) & 1
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(A[r:, c])[0]
        if len(hits) == 0:
            continue
        p = r + hits[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        pivots.append(c)
        r += 1
    return A, pivots


def gf2_rank(A) -> int:
    A = np.atleast_2d(np.asarray(A, dtype=np.uint8))
    if A.size == 0:
        return 0
    return len(gf2_row_reduce(A)[1])


def gf2_solve(A, b):
    """Some x with x A = b over GF(2) (A's rows combined), or None."""
    A = np.atleast_2d(np.asarray(A, dtype=np.uint8))
    b = np.asarray(b, dtype=np.uint8) & 1
    k = A.shape[0]
    if k == 0:
        return np.zeros(0, dtype=np.uint8) if not b.any() else None
    # augment with an identity to track which rows were combined
    aug = np.concatenate([A, np.eye(k, dtype=np.uint8)], axis=1)
    R, pivots = gf2_row_reduce(aug)
    m = A.shape[1]
    residual = b.copy()
    x = np.zeros(k, dtype=np.uint8)
    for row, c in enumerate(pivots):
        if c >= m:
            break
        if residual[c]:
            residual ^= R[row, :m]
            x ^= R[row, m:]
    if residual.any():
        return None
    return x
