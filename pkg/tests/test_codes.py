import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noiseless.algebra import algebra_commutant, generate_algebra
from noiseless.codes import (GAUGE, MULTIPLICITY, CodeSubspace, PairClass, classify_error_pair,
                             extract_code, kl_check, stabilizer_decompose)
from noiseless.collective import perm_rep, three_qubit_doublet_states
from noiseless.pauli import PauliString, gf2_rank, gf2_solve, pauli_matrix
from noiseless.wedderburn import decompose

from conftest import X, Z, kron, random_sector_table, structured_generators

P = PauliString.parse
words = st.text(alphabet="IXYZ", min_size=1, max_size=5)
prefixes = st.sampled_from(["", "-", "i", "-i"])


# -- Pauli strings ----------------------------------------------------------

def test_parse_examples():
    assert np.allclose(pauli_matrix("XZ"), kron(X, Z))
    assert np.allclose(pauli_matrix("-iY"), -1j * np.array([[0, -1j], [1j, 0]]))
    assert str(P("Y")) == "Y"
    assert str(P("X") * P("Z")) == "-iY"
    for bad in ["", "XQ", "2X", "--X"]:
        with pytest.raises(ValueError):
            P(bad)


@given(prefixes, words)
def test_text_round_trip(prefix, word):
    p = P(prefix + word)
    assert str(p) == prefix + word
    assert P(str(p)) == p


@given(prefixes, words, prefixes, words)
def test_algebra_matches_matrices(pa, wa, pb, wb):
    n = min(len(wa), len(wb))
    a, b = P(pa + wa[:n]), P(pb + wb[:n])
    A, B = a.to_matrix(), b.to_matrix()
    assert np.allclose((a * b).to_matrix(), A @ B)
    assert np.allclose(a.dagger().to_matrix(), A.conj().T)
    assert a.commutes(b) == np.allclose(A @ B, B @ A)
    assert a.is_hermitian() == np.allclose(A, A.conj().T)


def test_gf2():
    A = np.array([[1, 1, 0], [0, 1, 1]])
    assert gf2_rank(A) == 2
    assert gf2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert list(gf2_solve(A, [1, 0, 1])) == [1, 1]
    assert gf2_solve(A, [1, 0, 0]) is None


# -- codes from a block structure -----------------------------------------

def test_extract_code_shapes(a3_structure):
    bs = a3_structure
    half = bs.sector("1/2")
    c = extract_code(bs, "1/2", 0, MULTIPLICITY)
    assert c.k == half.n == 2
    g = extract_code(bs, "1/2", 1, GAUGE)
    assert g.k == half.d == 2
    assert np.allclose(c.basis.conj().T @ c.basis, np.eye(2), atol=1e-12)
    with pytest.raises(IndexError):
        extract_code(bs, "1/2", 2, MULTIPLICITY)


def test_multiplicity_code_corrects_collective_errors(a3, a3_structure):
    code = extract_code(a3_structure, "1/2", 0)
    errs = [np.eye(8), a3.Sx, a3.Sy, a3.Sz]
    rep = kl_check(code, errs)
    assert rep.passed
    assert rep.off_diagonal < 1e-12


def test_exchange_error_breaks_multiplicity_code(a3_structure):
    code = extract_code(a3_structure, "1/2", 0)
    rep = kl_check(code, [np.eye(8), perm_rep(3, "(1 2)")])
    assert not rep.passed


def test_gauge_code_corrects_exchange_errors(a3_structure):
    code = extract_code(a3_structure, "1/2", 0, GAUGE)
    errs = [perm_rep(3, p) for p in ["", "(1 2)", "(2 3)", "(1 2 3)"]]
    assert kl_check(code, errs).passed


def test_degenerate_noiseless_code():
    # ZZ = +1 subspace is untouched by ZZ noise; c is rank one
    zz = kron(Z, Z)
    code = CodeSubspace.from_vectors([np.eye(4)[0], np.eye(4)[3]])
    rep = kl_check(code, [np.eye(4), zz])
    assert rep.passed and rep.degenerate and rep.c_rank == 1
    assert np.allclose(rep.c, np.ones((2, 2)))


def test_bit_flip_code_is_nondegenerate():
    code = CodeSubspace.from_vectors([np.eye(8)[0], np.eye(8)[7]])
    errs = [pauli_matrix(w) for w in ["III", "XII", "IXI", "IIX"]]
    rep = kl_check(code, errs)
    assert rep.passed and not rep.degenerate and rep.c_rank == 4


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_block_codes_satisfy_kl(seed):
    rng = np.random.default_rng(seed)
    sectors = random_sector_table(rng, 10)
    alg = generate_algebra(structured_generators(rng, sectors))
    bs = decompose(alg)
    comm = algebra_commutant(alg)
    a_errs = [alg.random_element(rng) for _ in range(4)]
    c_errs = [comm.random_element(rng) for _ in range(4)]
    for s in bs.sectors:
        for mu in range(s.d):
            assert kl_check(extract_code(bs, s.label, mu), a_errs, tol=1e-7).passed
        for lam in range(s.n):
            assert kl_check(extract_code(bs, s.label, lam, GAUGE), c_errs, tol=1e-7).passed


def test_kl_monotone_under_subsets(a3, a3_structure):
    code = extract_code(a3_structure, "1/2", 0)
    errs = [np.eye(8), a3.Sx, a3.Sz, a3.Sx @ a3.Sy]
    assert kl_check(code, errs).passed
    for r in range(1, 4):
        for sub in itertools.combinations(errs, r):
            assert kl_check(code, list(sub)).passed


def test_code_round_trip(a3_structure):
    c = extract_code(a3_structure, "3/2", 2)
    back = CodeSubspace.from_dict(c.to_dict())
    assert np.array_equal(back.basis, c.basis) and back.role == c.role


# -- stabilizer layer -----------------------------------------------------

def test_repetition_stabilizer():
    gens = [P("ZZI"), P("IZZ")]
    bs = stabilizer_decompose(gens)
    assert bs.dims == [(2, 1)] * 4
    assert [s.tag for s in bs.sectors] == ["00", "01", "10", "11"]
    # sector "10": Z1Z2 = -1, Z2Z3 = +1
    V = bs.isometry("10")
    assert np.allclose(V.conj().T @ pauli_matrix("ZZI") @ V, -np.eye(2))
    assert np.allclose(V.conj().T @ pauli_matrix("IZZ") @ V, np.eye(2))


def test_stabilizer_rejects_bad_generators():
    with pytest.raises(ValueError):
        stabilizer_decompose([P("XI"), P("ZI")])
    with pytest.raises(ValueError):
        stabilizer_decompose([P("ZZ"), P("ZZ")])
    with pytest.raises(ValueError):
        stabilizer_decompose([P("iZZ")])


def test_classification_examples():
    gens = [P("ZZI"), P("IZZ")]
    errs = [P(w) for w in ["III", "XII", "IXI", "IIX"]]
    for a in errs:
        for b in errs:
            kind = classify_error_pair(a, b, gens).kind
            assert kind in (PairClass.IN_GROUP, PairClass.ANTICOMMUTES)
            assert (kind is PairClass.IN_GROUP) == (a == b)
    assert classify_error_pair(P("III"), P("XXX"), gens).kind is PairClass.UNDETECTABLE
    assert classify_error_pair(P("III"), P("ZII"), gens).kind is PairClass.UNDETECTABLE
    c = classify_error_pair(P("III"), P("-ZIZ"), gens)
    assert c.kind is PairClass.IN_GROUP and c.phase == 2


def random_stabilizer(rng, n, k):
    gens = []
    while len(gens) < k:
        w = "".join(rng.choice(list("IXYZ"), n))
        p = P(w)
        if p == PauliString.identity(n) or not all(p.commutes(g) for g in gens):
            continue
        if gf2_rank(np.array([g.bits for g in gens + [p]])) == len(gens) + 1:
            gens.append(p)
    return gens


@pytest.mark.parametrize("seed", range(5))
def test_stabilizer_matches_dense(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    k = int(rng.integers(1, n))
    gens = random_stabilizer(rng, n, k)
    bs = stabilizer_decompose(gens)
    dense = decompose(generate_algebra([g.to_matrix() for g in gens]))
    assert sorted(bs.dims) == sorted(dense.dims) == [(2 ** (n - k), 1)] * 2 ** k
    for g in gens:
        D = bs.basis_change.conj().T @ g.to_matrix() @ bs.basis_change
        assert np.allclose(D, np.diag(np.diag(D)), atol=1e-12)


@given(prefixes, words)
def test_pair_with_itself_is_in_group(prefix, word):
    e = P(prefix + word)
    gens = [P("Z" * len(word))]
    assert classify_error_pair(e, e, gens).kind is PairClass.IN_GROUP


def test_doublet_pairs_against_collective_algebra(a3):
    states = dict(three_qubit_doublet_states())
    rng = np.random.default_rng(0)
    errs = [a3.algebra.random_element(rng) for _ in range(20)]
    # alpha varies at fixed beta: an A_3 code
    good = CodeSubspace.from_vectors([states[(1, 1)], states[(2, 1)]])
    assert kl_check(good, errs).passed
    # beta varies at fixed alpha: an A_3' code, not an A_3 code
    mixed = CodeSubspace.from_vectors([states[(1, 1)], states[(1, 2)]])
    assert not kl_check(mixed, errs).passed
    exch = [perm_rep(3, p) for p in ["", "(1 2)", "(2 3)"]]
    assert kl_check(mixed, exch).passed
