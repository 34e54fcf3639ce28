import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noiseless.algebra import commutant, generate_algebra, hs_norm, random_hermitian
from noiseless.collective import collective_ops, perm_rep, symmetric_group
from noiseless.symmetry import (GroupRep, check_suppression, close_group, group_algebra,
                                lie_closure, ns_from_group, pauli_group,
                                symmetrized_universality, twirl)
from noiseless.wedderburn import decompose

from conftest import I2, X, Y, Z


@pytest.fixture(scope="module")
def s3():
    return close_group([perm_rep(3, "(1 2)"), perm_rep(3, "(1 2 3)")])


@pytest.fixture(scope="module")
def s3_structure(s3):
    return decompose(group_algebra(s3), seed=0)


def test_group_orders(s3):
    assert len(close_group([perm_rep(2, "(1 2)")])) == 2
    assert len(s3) == 6
    assert len(pauli_group(1)) == 16
    assert len(pauli_group(2)) == 64


def test_xz_group_is_dihedral():
    # <X, Z> = {+-1, +-X, +-Z, +-XZ}; no factor of i appears
    G = close_group([X, Z])
    expected = [s * M for s in (1, -1) for M in (I2, X, Z, X @ Z)]
    assert len(G) == 8
    for M in expected:
        assert G.index(M) is not None
    assert G.index(1j * I2) is None


def test_group_check(s3):
    c = s3.check()
    assert c["unitarity"] < 1e-12 and c["identity"] and c["closed"]


def test_group_round_trip(s3):
    back = GroupRep.from_dict(s3.to_dict())
    assert np.array_equal(back.elements, s3.elements)


def test_infinite_group_overflows():
    R = np.array([[np.cos(1), -np.sin(1)], [np.sin(1), np.cos(1)]])
    with pytest.raises(OverflowError):
        close_group([R], max_order=50)


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        close_group([2 * np.eye(2)])


def test_twirl_examples(s3):
    G = pauli_group(1)
    A = np.array([[1, 2], [3, 4j]])
    assert np.allclose(twirl(A, G), np.trace(A) / 2 * I2, atol=1e-14)
    assert hs_norm(twirl(Z, G)) < 1e-14
    S = collective_ops(3)
    assert hs_norm(twirl(S.Sz, s3) - S.Sz) < 1e-12
    z1 = np.kron(Z, np.eye(4))
    assert np.allclose(twirl(z1, s3), S.Sz / 3, atol=1e-12)


@pytest.mark.parametrize("which", ["pauli", "s3", "swap"])
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_twirl_properties(which, seed):
    G = {"pauli": pauli_group(1), "s3": symmetric_group(3),
         "swap": close_group([perm_rep(2, "(1 2)")])}[which]
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((G.dim, G.dim)) + 1j * rng.standard_normal((G.dim, G.dim))
    T = twirl(A, G)
    assert hs_norm(twirl(T, G) - T) < 1e-10
    assert abs(np.trace(T) - np.trace(A)) < 1e-10
    for g in G.elements:
        assert hs_norm(g @ T - T @ g) < 1e-8
    # orthogonal projection: <B, A - T> = 0 for B in the commutant
    B = twirl(rng.standard_normal((G.dim, G.dim)), G)
    assert abs(np.vdot(B, A - T)) < 1e-9


def test_suppression_pauli():
    rep = check_suppression(np.zeros((2, 2)), [X, Y, Z], pauli_group(1))
    assert rep.verdict and max(rep.coupling_norms) < 1e-12


def test_suppression_not_for_collective_coupling(s3):
    S = collective_ops(3)
    heis = sum(perm_rep(3, p) for p in ["(1 2)", "(2 3)", "(1 3)"])
    rep = check_suppression(heis, [S.Sz], s3)
    assert rep.hamiltonian_invariant and rep.invariance_residual < 1e-10
    assert not rep.verdict
    assert rep.coupling_norms[0] == pytest.approx(hs_norm(S.Sz), abs=1e-10)


def test_suppression_flags_broken_hamiltonian():
    rep = check_suppression(np.kron(X, I2), [], close_group([perm_rep(2, "(1 2)")]))
    assert not rep.hamiltonian_invariant


def test_ns_from_group(s3):
    S = collective_ops(3)
    # span of S_3 is the commutant of A_3; S_z is not inside it
    rep = ns_from_group([perm_rep(3, "(1 2)")], s3)
    assert rep.contained
    assert sorted(rep.structure.dims) == [(2, 2), (4, 1)]
    assert sorted(rep.ns_dims) == [2, 4]
    assert not ns_from_group([S.Sz], s3).contained
    # Pauli group algebra is everything: no protected factor
    rep = ns_from_group([Z], pauli_group(1))
    assert rep.contained and rep.ns_dims == []


def test_lie_closure_su2():
    L = lie_closure([1j * X, 1j * Z])
    assert len(L) == 3
    L = lie_closure([1j * np.kron(X, I2), 1j * np.kron(Z, I2)])
    assert len(L) == 3


def test_universality_examples(s3, s3_structure):
    rng = np.random.default_rng(0)
    H1, H2 = random_hermitian(8, rng), random_hermitian(8, rng)
    half = [s for s in s3_structure.sectors if s.n == 2][0]
    rep = symmetrized_universality(H1, H2, s3, s3_structure, half.label)
    assert rep.projected_dim == 4 and rep.universal_u
    rep = symmetrized_universality(H1, H1, s3, s3_structure, half.label)
    assert rep.projected_dim == 1 and not rep.universal_su


def test_universality_trivial_group():
    G = close_group([np.eye(2)])
    bs = decompose(group_algebra(G))
    rng = np.random.default_rng(1)
    rep = symmetrized_universality(random_hermitian(2, rng), random_hermitian(2, rng),
                                   G, bs, 0)
    assert rep.n == 2 and rep.projected_dim == 4 and rep.lie_dim == 4


@pytest.mark.parametrize("seed", range(3))
def test_symmetrized_pair_commutes_with_group(seed, s3):
    rng = np.random.default_rng(seed)
    K = twirl(random_hermitian(8, rng), s3)
    C = commutant(list(s3.elements))
    assert C.contains(K)
    # commutant of S_3 is the collective algebra
    assert len(C) == len(generate_algebra(list(collective_ops(3).S)))


def test_ns_from_group_swap_examples():
    swap = perm_rep(2, "(1 2)")
    G = close_group([swap])
    rep = ns_from_group([swap], G)
    assert rep.contained
    assert sorted(rep.structure.dims) == [(1, 1), (3, 1)]
    xi = np.kron(X, I2)
    rep = ns_from_group([xi], G)
    assert not rep.contained
    assert rep.residuals[0] == pytest.approx(hs_norm(xi), rel=1e-12)


def test_suppression_condition_i_fails_under_z_conjugation():
    rep = check_suppression(X, [], close_group([Z]))
    assert not rep.hamiltonian_invariant
    assert rep.invariance_residual == pytest.approx(hs_norm(X))


def test_ns_from_lie_generators():
    from noiseless.symmetry import ns_from_lie_generators
    S = collective_ops(3)
    # collective rotations: their algebra is A_3, whose NS is the doublet pair
    rep = ns_from_lie_generators([S.Sz], list(S.S))
    assert rep.contained and rep.ns_dims == [2]
    assert not ns_from_lie_generators([perm_rep(3, "(1 2)")], list(S.S)).contained
