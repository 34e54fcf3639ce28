"""Group averaging as a model of fast symmetrizing control.

Averaging over the single-qubit Pauli group wipes out any coupling.
Averaging over qubit permutations keeps collective couplings intact but
makes the remaining Hamiltonians act on the protected factor, and two
generic ones are already universal there.
"""
import numpy as np

from noiseless import (check_suppression, collective_ops, pauli_group, perm_rep,
                       symmetrized_universality, twirl)
from noiseless.collective import symmetric_group
from noiseless.symmetry import group_algebra
from noiseless.wedderburn import decompose
from noiseless.algebra import random_hermitian

P1 = pauli_group(1)
Z = np.diag([1.0, -1.0])
print("Pauli group order", len(P1), " |twirl(Z)| =", np.linalg.norm(twirl(Z, P1)))

S3 = symmetric_group(3)
S = collective_ops(3)
heis = sum(perm_rep(3, p) for p in ["(1 2)", "(2 3)", "(1 3)"])
rep = check_suppression(heis, [S.Sx, S.Sz], S3)
print("exchange Hamiltonian invariant:", rep.hamiltonian_invariant)
print("collective couplings suppressed:", rep.suppressed)

bs = decompose(group_algebra(S3), seed=0)
half = [s for s in bs.sectors if s.n == 2][0]
rng = np.random.default_rng(0)
H1, H2 = random_hermitian(8, rng), random_hermitian(8, rng)
u = symmetrized_universality(H1, H2, S3, bs, half.label)
print("Lie closure dim %d, on the protected qubit %d of %d" % (u.lie_dim, u.projected_dim, u.n ** 2))
u = symmetrized_universality(H1, H1, S3, bs, half.label)
print("with a single Hamiltonian: %d" % u.projected_dim)
