"""A logical qubit stored in the three-qubit protected factor.

Collective dephasing leaves it untouched whatever the gauge state; a bare
qubit under the same noise loses coherence, and a qubit-exchange channel
(outside the algebra) corrupts the encoded state.
"""
import numpy as np

from noiseless import (LindbladModel, collective_ops, lindblad_evolve, ns_fidelity_experiment,
                       perm_rep, schur_weyl_decompose)
from noiseless.dynamics import block_coherence, density_matrix, encode

bs = schur_weyl_decompose(3)
deph = LindbladModel(np.zeros((8, 8)), [(collective_ops(3).Sz, 1.0)])
logical = np.array([0.6, 0.8j])

tr = ns_fidelity_experiment(bs, "1/2", deph, logical, t=5.0, samples=6)
print("encoded, collective dephasing:")
print(tr.to_table())

plus = density_matrix(np.array([1, 1]) / np.sqrt(2))
bare = LindbladModel(np.zeros((2, 2)), [(np.diag([1.0, -1.0]), 1.0)])
for t in [0.0, 1.0, 2.0]:
    rho = lindblad_evolve(bare, plus, t, 200) if t else plus
    print("bare qubit t=%.0f  F=%.6f  analytic %.6f" % (t, np.real(rho[0, 1] + 0.5),
                                                          (1 + np.exp(-2 * t)) / 2))

swap = LindbladModel(np.zeros((8, 8)), [(perm_rep(3, "(1 2)"), 1.0)])
tr = ns_fidelity_experiment(bs, "1/2", swap, logical, t=2.0, samples=3)
print("exchange noise: fidelity", np.round(tr.fidelity, 4), "noise in algebra:", tr.noise_in_algebra)

psi = (encode(bs, "1/2", [1, 0]) + encode(bs, "3/2", [1])) / np.sqrt(2)
rho = density_matrix(psi)
for t in [0.0, 0.5, 1.0]:
    r = lindblad_evolve(deph, rho, t, 100) if t else rho
    print("coherence between sectors at t=%.1f: %.4f" % (t, block_coherence(r, bs)))
