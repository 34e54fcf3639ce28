"""Codes read off a block structure, and the stabilizer special case.

Holding the gauge index fixed gives a code that corrects every error in
the algebra.  Holding the copy index fixed gives a code for errors in the
commutant, such as qubit exchanges.
"""
import numpy as np

from noiseless import (PairClass, PauliString, classify_error_pair, collective_ops,
                       extract_code, kl_check, perm_rep, schur_weyl_decompose,
                       stabilizer_decompose)

S = collective_ops(3)
bs = schur_weyl_decompose(3, seed=0)

code = extract_code(bs, "1/2", 0, role="multiplicity")
errs = [np.eye(8), S.Sx, S.Sy, S.Sz]
rep = kl_check(code, errs)
print("collective errors on the multiplicity code: passed=%s rank(c)=%d of %d"
      % (rep.passed, rep.c_rank, rep.n_errors))

swap = perm_rep(3, "(1 2)")
print("exchange error on the same code: passed=%s" % kl_check(code, [np.eye(8), swap]).passed)

gauge_code = extract_code(bs, "1/2", 0, role="gauge")
print("exchange errors on the gauge code: passed=%s"
      % kl_check(gauge_code, [np.eye(8), swap, perm_rep(3, "(2 3)")]).passed)

# bit-flip repetition code
gens = [PauliString.parse("ZZI"), PauliString.parse("IZZ")]
sb = stabilizer_decompose(gens)
print("syndrome sectors:", [(s.tag, s.n) for s in sb.sectors])
errors = [PauliString.parse(w) for w in ["III", "XII", "IXI", "IIX", "XXX"]]
for a in errors:
    row = []
    for b in errors:
        c = classify_error_pair(a, b, gens)
        row.append({PairClass.IN_GROUP: "g", PairClass.ANTICOMMUTES: ".",
                    PairClass.UNDETECTABLE: "!"}[c.kind])
    print(str(a), " ".join(row))
print("g: product in the stabilizer, .: detected, !: undetectable logical error")
