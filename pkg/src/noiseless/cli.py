"""
Command-line front end.

Every command prints a text summary and, with ``--out``, writes a report
(JSON by default).  Exit status: 0 success, 2 analysis-negative result
(e.g. a failed KL check), 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import io
from .algebra import commutant, generate_algebra, random_hermitian
from .codes import (GAUGE, MULTIPLICITY, CodeSubspace, PairClass, classify_error_pair,
                    extract_code, kl_check, stabilizer_decompose)
from .collective import (cluster_decompose, perm_rep, predicted_multiplicity,
                         schur_weyl_decompose, symmetric_group)
from .dynamics import KrausMap, LindbladModel, ns_fidelity_experiment
from .pauli import PauliString
from .symmetry import (check_suppression, close_group, ns_from_group, pauli_group,
                       symmetrized_universality, twirl)
from .wedderburn import (BlockStructure, decompose, noiseless_subsystems, trivial_structure,
                         verify_structure)

OK, NEGATIVE, ERROR = 0, 2, 1


class Outcome:
    def __init__(self, result, text, status=OK):
        self.result = result
        self.text = text
        self.status = status


def _sector_dicts(bs: BlockStructure):
    return [{"label": s.label, "tag": s.tag, "n": s.n, "d": s.d, "offset": s.offset}
            for s in bs.sectors]


def _sector_arg(bs, value):
    if value is None:
        return None
    for s in bs.sectors:
        if s.tag and s.tag == value:
            return s.label
    try:
        label = int(value)
    except ValueError:
        raise ValueError("unknown sector %r" % value)
    bs.sector(label)
    return label


def _load_group(spec: str):
    """``pauli:N``, ``sym:N``, ``swap`` or a path to an operator file."""
    if spec.startswith("pauli:"):
        return pauli_group(int(spec.split(":")[1]))
    if spec.startswith("sym:"):
        return symmetric_group(int(spec.split(":")[1]))
    if spec == "swap":
        return close_group([perm_rep(2, "(1 2)")], labels=["swap"])
    opfile = io.parse_operator_file(spec)
    return close_group(opfile.matrices(), labels=[op.name for op in opfile.operators])


def _complex_list(text):
    return np.array([complex(t.replace(" ", "")) for t in text.split(",")])


# -- commands --------------------------------------------------------------

def cmd_decompose(args):
    ops = io.parse_operator_file(args.inp)
    alg = generate_algebra(ops.matrices(), tol=args.tol)
    bs = decompose(alg, seed=args.seed)
    vr = verify_structure(alg, bs)
    ns = noiseless_subsystems(bs)
    res = {"algebra_dim": len(alg), "commutant_dim": vr.dim_commutant[1],
           "sectors": _sector_dicts(bs), "noiseless_subsystems": [
               {"label": d.label, "ns_dim": d.ns_dim, "gauge_dim": d.gauge_dim} for d in ns],
           "verification": vr.to_dict(), "structure": bs.to_dict()}
    return Outcome(res, None, OK if vr.passed else ERROR)


def cmd_commutant(args):
    ops = io.parse_operator_file(args.inp)
    comm = commutant(ops.matrices(), tol=args.tol)
    noncomm = not comm.is_commutative()
    res = {"commutant_dim": len(comm), "noncommutative": noncomm,
           "supports_ns": noncomm, "basis": [io.complex_to_json(B) for B in comm.basis]}
    return Outcome(res, None)


def cmd_codes(args):
    ops = io.parse_operator_file(args.inp)
    alg = generate_algebra(ops.matrices(), tol=args.tol)
    bs = decompose(alg, seed=args.seed)
    labels = [_sector_arg(bs, args.sector)] if args.sector is not None else \
        [s.label for s in bs.sectors if (s.n if args.role == MULTIPLICITY else s.d) >= 2]
    codes = []
    for label in labels:
        s = bs.sector(label)
        count = s.d if args.role == MULTIPLICITY else s.n
        indices = [args.index] if args.index is not None else range(count)
        for k in indices:
            code = extract_code(bs, label, k, args.role)
            errs = alg.generators if args.role == MULTIPLICITY else \
                commutant(alg.generators).generators
            rep = kl_check(code, [np.eye(bs.dim)] + list(errs), args.kl_tol)
            codes.append({"code": code.to_dict(), "kl_passed": rep.passed,
                          "degenerate": rep.degenerate})
    res = {"sectors": _sector_dicts(bs), "role": args.role, "codes": codes}
    status = OK if all(c["kl_passed"] for c in codes) else NEGATIVE
    return Outcome(res, None, status)


def _load_code(path, which):
    data = json.loads(open(path).read())
    if data.get("schema") == io.SCHEMA:
        data = data["result"]["codes"][which]["code"]
    return CodeSubspace.from_dict(data)


def cmd_kl_check(args):
    code = _load_code(args.code, args.which)
    errs = io.parse_operator_file(args.errors)
    rep = kl_check(code, errs.matrices(), args.kl_tol)
    res = {"kl": rep.to_dict(), "errors": [op.name for op in errs.operators]}
    return Outcome(res, None, OK if rep.passed else NEGATIVE)


def cmd_stabilizer(args):
    gens = [PauliString.parse(t) for t in args.gens.split(",") if t.strip()]
    n = gens[0].n if gens else args.n
    bs = stabilizer_decompose(gens, n)
    rows = []
    if args.errors:
        errs = [PauliString.parse(t) for t in args.errors.split(",")]
        for a in errs:
            for b in errs:
                c = classify_error_pair(a, b, gens)
                rows.append({"e_i": str(a), "e_j": str(b), "product": str(c.product),
                             "class": c.kind.value, "phase": c.phase})
    res = {"generators": [str(g) for g in gens], "sectors": _sector_dicts(bs), "pairs": rows,
           "structure": bs.to_dict()}
    bad = any(r["class"] == PairClass.UNDETECTABLE.value for r in rows)
    return Outcome(res, None, NEGATIVE if bad else OK)


def cmd_twirl(args):
    ops = io.parse_operator_file(args.inp)
    G = _load_group(args.group)
    out = []
    for op in ops.operators:
        T = twirl(op.matrix, G)
        out.append({"name": op.name, "norm_in": float(np.linalg.norm(op.matrix)),
                    "norm_out": float(np.linalg.norm(T)), "twirled": io.complex_to_json(T)})
    return Outcome({"group_order": len(G), "operators": out}, None)


def cmd_suppression(args):
    ops = io.parse_operator_file(args.inp)
    G = _load_group(args.group)
    hs = ops.matrices("hamiltonian")
    H = hs[0] if hs else np.zeros((ops.dim, ops.dim))
    couplings = [op for op in ops.operators if op.kind != "hamiltonian"]
    rep = check_suppression(H, [op.matrix for op in couplings], G, args.tol)
    res = rep.to_dict()
    res["couplings"] = [op.name for op in couplings]
    res["group_order"] = len(G)
    return Outcome(res, None, OK if rep.verdict else NEGATIVE)


def cmd_universality(args):
    G = _load_group(args.group)
    cg = ns_from_group([], G, seed=args.seed)
    bs = cg.structure
    if args.group.startswith("sym:"):
        # span of S_N: the multiplicity factor is the spin-J irrep, n = 2J + 1
        for s in bs.sectors:
            s.tag = str(Fraction(s.n - 1, 2))
    label = _sector_arg(bs, args.sector) if args.sector is not None else \
        max(bs.sectors, key=lambda s: s.n).label
    if args.inp:
        ops = io.parse_operator_file(args.inp)
        hs = ops.matrices("hamiltonian") or ops.matrices()
        pairs = [(None, hs[0], hs[1])]
    else:
        pairs = []
        for k in range(args.retries + 1):
            rng = np.random.default_rng(args.seed + k)
            pairs.append((args.seed + k, random_hermitian(G.dim, rng), random_hermitian(G.dim, rng)))
    tried = []
    for seed, H1, H2 in pairs:
        rep = symmetrized_universality(H1, H2, G, bs, label)
        tried.append({"seed": seed, **rep.to_dict()})
        if rep.universal_u:
            break
    res = {"group_order": len(G), "sectors": _sector_dicts(bs), "attempts": tried,
           "universal": tried[-1]["universal_u"]}
    return Outcome(res, None, OK if res["universal"] else NEGATIVE)


def cmd_collective(args):
    bs = schur_weyl_decompose(args.n, seed=args.seed, method=args.method)
    rows = []
    for s in bs.sectors:
        J = Fraction(s.d - 1, 2)
        rows.append({"label": s.label, "tag": s.tag, "J": str(J), "n": s.n, "d": s.d,
                     "offset": s.offset, "predicted_n": predicted_multiplicity(args.n, J)})
    res = {"N": args.n, "sectors": rows, "ns_dims": sorted(r["n"] for r in rows if r["n"] >= 2)}
    if args.with_basis:
        res["structure"] = bs.to_dict()
    return Outcome(res, None)


def cmd_clusters(args):
    sizes = [int(c) for c in args.clusters.split(",")]
    rep = cluster_decompose(sizes, seed=args.seed)
    return Outcome(rep.to_dict(), None, OK if rep.match else NEGATIVE)


def cmd_simulate(args):
    ops = io.parse_operator_file(args.inp)
    if args.n is not None:
        bs = schur_weyl_decompose(args.n, seed=args.seed)
    elif args.algebra:
        alg = generate_algebra(io.parse_operator_file(args.algebra).matrices())
        bs = decompose(alg, seed=args.seed)
    else:
        bs = trivial_structure(ops.dim)
    label = _sector_arg(bs, args.sector) if args.sector is not None else \
        max(bs.sectors, key=lambda s: s.n).label
    s = bs.sector(label)
    if args.logical:
        logical = _complex_list(args.logical)
    else:
        rng = np.random.default_rng(args.seed)
        logical = rng.standard_normal(s.n) + 1j * rng.standard_normal(s.n)
    gauge = _complex_list(args.gauge) if args.gauge else None

    kraus = ops.matrices("kraus")
    if kraus:
        noise = [KrausMap(kraus)] * args.repeat
    else:
        hs = ops.matrices("hamiltonian")
        H = hs[0] if hs else np.zeros((ops.dim, ops.dim))
        noise = LindbladModel(H, [(op.matrix, op.rate) for op in ops.of_kind("lindblad")])
    trace = ns_fidelity_experiment(bs, label, noise, logical, gauge, t=args.t,
                                   samples=args.samples, dt=args.t / args.steps)
    worst = float(1 - trace.fidelity.min())
    res = {"sector": {"label": s.label, "tag": s.tag, "n": s.n, "d": s.d},
           "logical": io.complex_to_json(np.asarray(logical)[None]),
           "max_infidelity": worst, "trace": trace.to_dict()}
    return Outcome(res, None, OK if worst < args.tol else NEGATIVE)


COMMANDS = {
    "decompose": cmd_decompose, "commutant": cmd_commutant, "codes": cmd_codes,
    "kl-check": cmd_kl_check, "stabilizer": cmd_stabilizer, "twirl": cmd_twirl,
    "suppression": cmd_suppression, "universality": cmd_universality,
    "collective": cmd_collective, "clusters": cmd_clusters, "simulate": cmd_simulate,
}

DEFAULT_TOL = {"simulate": 1e-6}


def build_parser():
    p = argparse.ArgumentParser(prog="noiseless", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--out", help="report path")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=None)
        return sp

    sp = add("decompose", "block decomposition of the generated algebra")
    sp.add_argument("--in", dest="inp", required=True)
    sp = add("commutant", "commutant of a set of operators")
    sp.add_argument("--in", dest="inp", required=True)
    sp = add("codes", "extract codes from sectors and KL-check them")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--sector")
    sp.add_argument("--role", choices=[MULTIPLICITY, GAUGE], default=MULTIPLICITY)
    sp.add_argument("--index", type=int)
    sp.add_argument("--kl-tol", type=float, default=1e-8)
    sp = add("kl-check", "Knill-Laflamme test of a code against errors")
    sp.add_argument("--code", required=True, help="code JSON or a 'codes' report")
    sp.add_argument("--which", type=int, default=0)
    sp.add_argument("--errors", required=True)
    sp.add_argument("--kl-tol", type=float, default=1e-8)
    sp = add("stabilizer", "stabilizer sectors and error-pair classes")
    sp.add_argument("--gens", required=True, help="comma separated Pauli strings")
    sp.add_argument("--errors", help="comma separated Pauli strings")
    sp.add_argument("--n", type=int)
    sp = add("twirl", "group-average operators")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--group", required=True, help="pauli:N, sym:N, swap or operator file")
    sp = add("suppression", "check that symmetrization removes the couplings")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--group", required=True)
    sp = add("universality", "Lie closure of a symmetrized Hamiltonian pair")
    sp.add_argument("--in", dest="inp")
    sp.add_argument("--group", required=True)
    sp.add_argument("--sector")
    sp.add_argument("--retries", type=int, default=3)
    sp = add("collective", "collective-decoherence sectors of N qubits")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=["auto", "dense", "ladder"], default="auto")
    sp.add_argument("--with-basis", action="store_true")
    sp = add("clusters", "independent collective clusters")
    sp.add_argument("--clusters", required=True, help="e.g. 3,3")
    sp = add("simulate", "noiseless-subsystem fidelity under Lindblad or Kraus noise")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--n", type=int, help="use the collective structure of N qubits")
    sp.add_argument("--algebra", help="operator file whose generated algebra fixes the sectors")
    sp.add_argument("--sector")
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--samples", type=int, default=11)
    sp.add_argument("--repeat", type=int, default=1)
    sp.add_argument("--logical")
    sp.add_argument("--gauge")
    return p


def run_command(argv=None, stdout=None, timestamp=True):
    """Parse ``argv``, run, write the report.  Returns (status, envelope)."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for negative results
        return (OK if exc.code in (0, None) else ERROR), None
    if args.tol is None:
        args.tol = DEFAULT_TOL.get(args.command, 1e-10)
    try:
        out = COMMANDS[args.command](args)
    except (ValueError, KeyError, IndexError, RuntimeError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return ERROR, None
    params = {k: v for k, v in vars(args).items()
              if k not in ("out", "format", "seed", "tol", "command")}
    env = io.envelope(args.command, out.result, args.seed, args.tol, params, timestamp)
    env["status"] = out.status
    text = io.render_text(env)
    if out.text:
        text += out.text
    print(text, end="", file=stdout)
    if args.out:
        try:
            io.emit_report(env, args.format, args.out, text)
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return ERROR, env
    return out.status, env


def main(argv=None):
    status, _ = run_command(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
