"""Sector tables for N qubits under collective noise, and for clusters.

Multiplicities from the dense decomposition are compared with the
closed-form count; larger N uses the spin-ladder construction.
"""
from noiseless import cluster_decompose, predicted_multiplicity, schur_weyl_decompose

for N in range(2, 9):
    bs = schur_weyl_decompose(N)
    row = ", ".join("J=%s: n=%d" % (s.tag, s.n) for s in reversed(bs.sectors))
    ok = all(s.n == predicted_multiplicity(N, s.tag) for s in bs.sectors)
    print("N=%d  %s  %s" % (N, row, "matches formula" if ok else "MISMATCH"))

for sizes in [(2, 2), (3, 2), (3, 3)]:
    rep = cluster_decompose(sizes)
    print("clusters %s: NS dims %s, max %d, matches product rule: %s"
          % (sizes, rep.ns_dims, rep.max_ns_dim, rep.match))
