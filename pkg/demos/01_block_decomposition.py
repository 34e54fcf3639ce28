"""Generate an interaction algebra, find its commutant and its block structure.

Three qubits coupled to a common bath through the collective spin operators.
The algebra they generate splits the 8-dimensional space into a spin-3/2
quadruplet and two copies of a spin-1/2 doublet; the two copies form a
protected qubit.
"""
import numpy as np

from noiseless import (collective_ops, commutant, decompose, generate_algebra,
                       noiseless_subsystems, to_block_basis, verify_structure)

S = collective_ops(3)
alg = generate_algebra(list(S.S))
comm = commutant(list(S.S))
print("dim A  =", len(alg))
print("dim A' =", len(comm), " noncommutative:", not comm.is_commutative())

bs = decompose(alg, seed=7)
for s in bs.sectors:
    print("sector %d: n=%d d=%d" % (s.label, s.n, s.d))

rep = verify_structure(alg, bs)
print("certified:", rep.passed, " algebra residual %.1e, commutant residual %.1e"
      % (rep.algebra_residual, rep.commutant_residual))

for ns in noiseless_subsystems(bs):
    print("noiseless subsystem of dimension %d (gauge dimension %d)" % (ns.ns_dim, ns.gauge_dim))

# S_x in the new basis: the same 2x2 block on both doublet copies, one 4x4 block
Y = to_block_basis(S.Sx, bs)
np.set_printoptions(precision=3, suppress=True)
print("copy 1 block eigenvalues", np.linalg.eigvalsh(Y[0:2, 0:2]))
print("copy 2 block eigenvalues", np.linalg.eigvalsh(Y[2:4, 2:4]))
print("copies coupled by S_x: %.1e" % np.abs(Y[0:2, 2:4]).max())
print("quadruplet block eigenvalues", np.linalg.eigvalsh(Y[4:, 4:]))
