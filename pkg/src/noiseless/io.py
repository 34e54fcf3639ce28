"""
Operator files and analysis reports.

Operator file (JSON)::

    {"dim": 8,                      # or "n_qubits": 3
     "operators": [
        {"name": "Sz", "kind": "lindblad", "rate": 1.0, "re": [[...]], "im": [[...]]},
        {"name": "zz", "kind": "pauli-string", "pauli": "ZZI"},
        {"name": "p12", "kind": "permutation", "cycles": "(1 2)"}]}

``kind`` is one of operator (default), hamiltonian, lindblad, kraus,
group-element, pauli-string, permutation.  A matrix comes from ``re``/``im``,
``pauli`` or ``cycles``.

Reports wrap a result dict in an envelope carrying the schema version, tool
version, command, seed and tolerance.  Only the ``timestamp`` field varies
between identical runs.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__

SCHEMA = "noiseless-report"
SCHEMA_VERSION = 1

KINDS = ("operator", "hamiltonian", "lindblad", "kraus", "group-element",
         "pauli-string", "permutation")


class OperatorFileError(ValueError):
    pass


@dataclass
class NamedOperator:
    name: str
    kind: str
    matrix: np.ndarray = field(repr=False)
    rate: float | None = None


@dataclass
class OperatorFile:
    dim: int
    operators: list

    def of_kind(self, *kinds) -> list:
        return [op for op in self.operators if op.kind in kinds]

    def matrices(self, *kinds) -> list:
        ops = self.of_kind(*kinds) if kinds else self.operators
        return [op.matrix for op in ops]

    def to_dict(self):
        out = []
        for op in self.operators:
            entry = {"name": op.name, "kind": op.kind,
                     "re": op.matrix.real.tolist(), "im": op.matrix.imag.tolist()}
            if op.rate is not None:
                entry["rate"] = op.rate
            out.append(entry)
        return {"dim": self.dim, "operators": out}


def complex_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"re": M.real.tolist(), "im": M.imag.tolist()}


def complex_from_json(d) -> np.ndarray:
    re = np.asarray(d["re"], dtype=float)
    im = np.asarray(d.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise ValueError("re and im arrays differ in shape")
    return re + 1j * im


def _matrix_entry(entry, where, dim, n_qubits):
    from .collective import perm_rep
    from .pauli import PauliString

    if "pauli" in entry:
        p = PauliString.parse(entry["pauli"])
        M = p.to_matrix()
    elif "cycles" in entry:
        if n_qubits is None:
            raise OperatorFileError("%s: permutation needs 'n_qubits' or a power-of-two 'dim'" % where)
        M = perm_rep(n_qubits, entry["cycles"])
    elif "re" in entry:
        try:
            re = np.array(entry["re"], dtype=float)
            im = np.array(entry.get("im", np.zeros_like(re)), dtype=float)
        except ValueError:
            raise OperatorFileError("%s: 're'/'im' must be rectangular numeric arrays" % where)
        if re.ndim != 2 or re.shape != im.shape:
            raise OperatorFileError("%s: 're' and 'im' must be matching 2-d arrays, got %s and %s"
                                    % (where, re.shape, im.shape))
        M = re + 1j * im
    else:
        raise OperatorFileError("%s: needs one of 're', 'pauli', 'cycles'" % where)
    if M.shape != (dim, dim):
        raise OperatorFileError("%s: shape %s does not match dim %d" % (where, M.shape, dim))
    if not np.all(np.isfinite(M)):
        raise OperatorFileError("%s: non-finite entries" % where)
    return M


def parse_operator_data(data: dict, source: str = "<data>") -> OperatorFile:
    if not isinstance(data, dict) or "operators" not in data:
        raise OperatorFileError("%s: top level must be an object with 'operators'" % source)
    n_qubits = data.get("n_qubits")
    dim = data.get("dim")
    if dim is None and n_qubits is None:
        # infer from the first explicit entry
        for e in data["operators"]:
            if "pauli" in e:
                dim = 2 ** len(e["pauli"].strip().lstrip("+-i"))
                break
            if "re" in e:
                dim = len(e["re"])
                break
    if dim is None:
        dim = 2 ** int(n_qubits)
    dim = int(dim)
    if n_qubits is None and dim & (dim - 1) == 0:
        n_qubits = dim.bit_length() - 1
    ops = []
    for i, entry in enumerate(data["operators"]):
        name = entry.get("name", "op%d" % i)
        where = "%s: operators[%d] '%s'" % (source, i, name)
        kind = entry.get("kind", "operator")
        if kind not in KINDS:
            raise OperatorFileError("%s: unknown kind %r" % (where, kind))
        try:
            M = _matrix_entry(entry, where, dim, n_qubits)
        except OperatorFileError:
            raise
        except ValueError as exc:
            raise OperatorFileError("%s: %s" % (where, exc))
        rate = entry.get("rate")
        if kind == "hamiltonian" and np.linalg.norm(M - M.conj().T) > 1e-10 * max(np.linalg.norm(M), 1):
            raise OperatorFileError("%s: hamiltonian is not hermitian" % where)
        if kind == "lindblad":
            rate = 1.0 if rate is None else float(rate)
            if rate < 0:
                raise OperatorFileError("%s: negative rate" % where)
        ops.append(NamedOperator(name, kind, M, rate))
    return OperatorFile(dim, ops)


def parse_operator_file(path) -> OperatorFile:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise OperatorFileError("%s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg))
    return parse_operator_data(data, str(path))


def write_operator_file(opfile: OperatorFile, path):
    Path(path).write_text(json.dumps(opfile.to_dict(), indent=1) + "\n")


# -- reports ---------------------------------------------------------------

def to_jsonable(obj):
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return complex_to_json(obj)
        return obj.tolist()
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def envelope(command: str, result, seed=None, tol=None, args=None, timestamp=True) -> dict:
    env = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "seed": seed,
        "tol": tol,
        "args": to_jsonable(args or {}),
        "result": to_jsonable(result),
    }
    if timestamp:
        env["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return env


def dumps_report(env: dict) -> str:
    return json.dumps(env, indent=1, allow_nan=True) + "\n"


def emit_report(env: dict, fmt: str = "json", path=None, text: str | None = None) -> str:
    """Render a report envelope as JSON or text; write it if ``path`` is given."""
    if fmt == "json":
        out = dumps_report(env)
    elif fmt == "text":
        out = text if text is not None else render_text(env)
    else:
        raise ValueError("format must be 'json' or 'text'")
    if path is not None:
        try:
            Path(path).write_text(out)
        except OSError as exc:
            raise OSError("cannot write report to %s: %s" % (path, exc))
    return out


def load_report(path) -> dict:
    env = json.loads(Path(path).read_text())
    if env.get("schema") != SCHEMA:
        raise ValueError("%s is not a report" % path)
    return env


# -- text rendering --------------------------------------------------------

def table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def sector_table(sectors) -> str:
    rows = [(s["label"], s.get("tag", ""), s["n"], s["d"], s["n"] * s["d"],
             "NS" if s["n"] >= 2 else "") for s in sectors]
    return table(["label", "tag", "n", "d", "n*d", ""], rows)


def kl_table(res: dict) -> str:
    c = complex_from_json(res["c"])
    rows = []
    for i in range(c.shape[0]):
        rows.append([i] + ["%.6g%+.6gj" % (z.real, z.imag) for z in c[i]])
    head = ["i\\j"] + [str(j) for j in range(c.shape[1])]
    return (table(head, rows) + "\nrank %d of %d, degenerate=%s, passed=%s "
            "(off-diagonal %.2e, spread %.2e)\n"
            % (res["c_rank"], res["n_errors"], res["degenerate"], res["passed"],
               res["off_diagonal"], res["diagonal_spread"]))


def fidelity_table(res: dict) -> str:
    lines = ["# time fidelity"]
    lines += ["%.12g %.15g" % (t, f) for t, f in zip(res["times"], res["fidelity"])]
    return "\n".join(lines) + "\n"


def render_text(env: dict) -> str:
    head = "# %s  (tool %s, schema %d, seed %s, tol %s)\n" % (
        env["command"], env["tool_version"], env["schema_version"], env["seed"], env["tol"])
    res = env["result"]
    body = []
    if isinstance(res, dict):
        if "trace" in res:
            body.append(fidelity_table(res["trace"]))
        if "kl" in res:
            body.append(kl_table(res["kl"]))
        if "sectors" in res and res["sectors"] and isinstance(res["sectors"][0], dict):
            body.append(sector_table(res["sectors"]) + "\n")
        for k, v in res.items():
            if k in ("trace", "kl", "sectors", "structure", "basis"):
                continue
            if isinstance(v, (dict, list)) and len(json.dumps(v)) > 200:
                continue
            body.append("%s: %s\n" % (k, json.dumps(v)))
    return head + "".join(body)
