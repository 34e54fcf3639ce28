import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noiseless.algebra import full_algebra, generate_algebra, scalar_algebra
from noiseless.collective import collective_ops, perm_rep
from noiseless.wedderburn import (BlockStructure, Sector, assemble, decompose,
                                  noiseless_subsystems, to_block_basis, verify_structure)

from conftest import Z, I2, kron, random_sector_table, structured_generators


def test_full_and_scalar():
    bs = decompose(full_algebra(3))
    assert bs.dims == [(1, 3)]
    assert noiseless_subsystems(bs) == []
    bs = decompose(scalar_algebra(3))
    assert bs.dims == [(3, 1)]
    ns = noiseless_subsystems(bs)
    assert [(x.ns_dim, x.gauge_dim) for x in ns] == [(3, 1)]


def test_three_qubit_collective(a3):
    bs = decompose(a3.algebra, seed=1)
    assert sorted(bs.dims) == [(1, 4), (2, 2)]
    rep = verify_structure(a3.algebra, bs)
    assert rep.passed
    assert rep.dim_algebra == (20, 20)
    assert rep.dim_commutant == (5, 5)
    ns = noiseless_subsystems(bs)
    assert [(x.ns_dim, x.gauge_dim) for x in ns] == [(2, 2)]
    # encoder columns are orthonormal
    E = ns[0].encoder
    assert np.allclose(E.conj().T @ E, np.eye(2), atol=1e-12)


def test_block_patterns(a3):
    bs = decompose(a3.algebra, seed=0)
    # algebra elements: 1 (x) M inside each sector, zero elsewhere
    Y = to_block_basis(a3.Sx, bs)
    for s in bs.sectors:
        B = Y[s.slice, s.slice].reshape(s.n, s.d, s.n, s.d)
        for a in range(s.n):
            for b in range(s.n):
                if a != b:
                    assert np.abs(B[a, :, b, :]).max() < 1e-10
            assert np.allclose(B[a, :, a, :], B[0, :, 0, :], atol=1e-10)
    # exchange operator: M (x) 1 pattern
    Y = to_block_basis(perm_rep(3, "(1 2)"), bs)
    for s in bs.sectors:
        B = Y[s.slice, s.slice].reshape(s.n, s.d, s.n, s.d)
        for a in range(s.n):
            for b in range(s.n):
                assert np.allclose(B[a, :, b, :], B[a, 0, b, 0] * np.eye(s.d), atol=1e-10)
    mask = np.ones((8, 8), bool)
    for s in bs.sectors:
        mask[s.slice, s.slice] = False
    assert np.abs(Y[mask]).max() < 1e-10


def test_merged_sector_fails_verification(a3):
    bs = decompose(a3.algebra)
    merged = assemble(8, [(1, 8, bs.basis_change)])
    assert not verify_structure(a3.algebra, merged).passed
    wrong = BlockStructure(8, [Sector(0, 2, 2, 0), Sector(1, 1, 4, 4)], np.eye(8))
    assert not verify_structure(a3.algebra, wrong).passed


def test_abelian_gives_pointer_basis():
    gens = [kron(Z, I2), kron(I2, Z)]
    bs = decompose(generate_algebra(gens))
    assert sorted(bs.dims) == [(1, 1)] * 4
    for g in gens:
        D = to_block_basis(g, bs)
        assert np.abs(D - np.diag(np.diag(D))).max() < 1e-12


def test_stabilizer_algebra_dims():
    # algebra generated by the stabilizer Z1Z2, Z2Z3 has 4 sectors of n = 2
    gens = [kron(Z, Z, I2), kron(I2, Z, Z)]
    bs = decompose(generate_algebra(gens))
    assert sorted(bs.dims) == [(2, 1)] * 4


def test_determinism(a3):
    a = decompose(a3.algebra, seed=5)
    b = decompose(a3.algebra, seed=5)
    assert a.dims == b.dims
    assert np.array_equal(a.basis_change, b.basis_change)


def test_json_round_trip(a3):
    bs = decompose(a3.algebra)
    back = BlockStructure.from_dict(bs.to_dict())
    assert back.dims == bs.dims
    assert np.array_equal(back.basis_change, bs.basis_change)
    assert verify_structure(a3.algebra, back).passed


def test_vector_indexing(a3):
    bs = decompose(a3.algebra)
    s = bs.sector(0)
    assert np.array_equal(bs.vector(0, 1, 0), bs.basis_change[:, s.offset + s.d])
    with pytest.raises(IndexError):
        bs.vector(0, s.n, 0)


def test_rejects_non_unital():
    alg = generate_algebra([np.diag([1.0, 0, 0])], unital=False)
    with pytest.raises(ValueError):
        decompose(alg)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 1000))
def test_random_algebras_certify(seed, dseed):
    rng = np.random.default_rng(seed)
    sectors = random_sector_table(rng, 12)
    alg = generate_algebra(structured_generators(rng, sectors))
    bs = decompose(alg, seed=dseed)
    assert sorted(bs.dims) == sorted(sectors)
    assert verify_structure(alg, bs, tol=1e-7).passed


def test_collective_commutant_dimensions():
    # Catalan-like sequence sum_J n_J^2
    for N, want in [(2, 2), (3, 5), (4, 14)]:
        alg = collective_ops(N).algebra
        rep = verify_structure(alg, decompose(alg))
        assert rep.passed and rep.dim_commutant == (want, want)
