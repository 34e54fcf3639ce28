import numpy as np
import pytest
from scipy.stats import unitary_group

from noiseless.collective import collective_ops, schur_weyl_decompose
from noiseless.pauli import PAULI

X, Y, Z, I2 = PAULI["X"], PAULI["Y"], PAULI["Z"], PAULI["I"]


def kron(*ops):
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def random_sector_table(rng, max_dim=12):
    """Random list of (n, d) with total dimension at most max_dim."""
    sectors = []
    room = max_dim
    while room > 0 and (not sectors or rng.random() < 0.6):
        d = int(rng.integers(1, min(3, room) + 1))
        n = int(rng.integers(1, room // d + 1))
        n = min(n, 3)
        sectors.append((n, d))
        room -= n * d
    return sectors


def structured_generators(rng, sectors, count=2):
    """Hermitian generators of sum_J 1_n (x) M(d), in a random basis."""
    dim = sum(n * d for n, d in sectors)
    W = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1)
    gens = []
    for _ in range(count):
        blocks = []
        for n, d in sectors:
            A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            blocks.append(np.kron(np.eye(n), A + A.conj().T))
        B = np.zeros((dim, dim), dtype=complex)
        o = 0
        for blk in blocks:
            m = blk.shape[0]
            B[o:o + m, o:o + m] = blk
            o += m
        gens.append(W @ B @ W.conj().T)
    return gens


@pytest.fixture(scope="session")
def a3():
    return collective_ops(3)


@pytest.fixture(scope="session")
def a3_structure():
    return schur_weyl_decompose(3, seed=7)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def record_criterion(number, title, ok, detail=""):
    line = "ACCEPTANCE %2d [%s] %s%s" % (number, "PASS" if ok else "FAIL", title,
                                        ("  (" + detail + ")") if detail else "")
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
