"""
Open-system dynamics: Lindblad evolution, Kraus maps and NS fidelity runs.

Density matrices are plain complex arrays.  The master equation is

    drho/dt = -i[H, rho] + sum_mu rate_mu (L rho L^dagger - {L^dagger L, rho}/2)

integrated by fixed-step RK4 on the row-major vectorized Liouvillian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import as_operator, dagger, hs_norm
from .wedderburn import BlockStructure, algebra_form_residual, off_block

POSITIVITY_FLOOR = 1e-6


class PositivityError(RuntimeError):
    """Evolved state is not positive; the step size is too coarse."""


@dataclass
class LindbladModel:
    H: np.ndarray
    channels: list = field(default_factory=list)  # (L, rate) pairs

    def __post_init__(self):
        self.H = as_operator(self.H)
        if hs_norm(self.H - dagger(self.H)) > 1e-12 * max(hs_norm(self.H), 1.0):
            raise ValueError("Hamiltonian is not hermitian")
        chans = []
        for L, rate in self.channels:
            if rate < 0:
                raise ValueError("negative rate %g" % rate)
            chans.append((as_operator(L, self.dim), float(rate)))
        self.channels = chans

    @property
    def dim(self):
        return self.H.shape[0]

    @property
    def operators(self):
        return [self.H] + [L for L, _ in self.channels]

    def liouvillian(self) -> np.ndarray:
        d = self.dim
        eye = np.eye(d)
        # vec(A X B) = (A kron B^T) vec(X), row-major
        Lv = -1j * (np.kron(self.H, eye) - np.kron(eye, self.H.T))
        for L, rate in self.channels:
            LdL = dagger(L) @ L
            Lv += rate * (np.kron(L, L.conj())
                          - 0.5 * np.kron(LdL, eye) - 0.5 * np.kron(eye, LdL.T))
        return Lv


@dataclass
class KrausMap:
    operators: list

    def __post_init__(self):
        self.operators = [as_operator(e) for e in self.operators]
        d = self.operators[0].shape[0]
        for e in self.operators:
            as_operator(e, d)

    @property
    def dim(self):
        return self.operators[0].shape[0]

    def completeness_residual(self) -> float:
        S = sum(dagger(e) @ e for e in self.operators)
        return hs_norm(S - np.eye(self.dim))


def density_matrix(state) -> np.ndarray:
    """|psi><psi| (normalized) for a vector, or a validated copy of a matrix."""
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        a = a / np.linalg.norm(a)
        return np.outer(a, a.conj())
    return check_density(a)


def check_density(rho, tol: float = 1e-10) -> np.ndarray:
    rho = as_operator(rho)
    if hs_norm(rho - dagger(rho)) > tol:
        raise ValueError("density matrix is not hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError("density matrix has trace %s" % np.trace(rho))
    if np.linalg.eigvalsh((rho + dagger(rho)) / 2)[0] < -tol:
        raise ValueError("density matrix is not positive")
    return rho


def _rk4(Lv, v, h, steps):
    for _ in range(steps):
        k1 = Lv @ v
        k2 = Lv @ (v + 0.5 * h * k1)
        k3 = Lv @ (v + 0.5 * h * k2)
        k4 = Lv @ (v + h * k3)
        v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        d = int(round(np.sqrt(v.size)))
        M = v.reshape(d, d)
        v = ((M + dagger(M)) / 2).ravel()
    return v


def lindblad_evolve(model: LindbladModel, rho0, t: float, steps: int,
                    Lv: np.ndarray | None = None) -> np.ndarray:
    """rho(t) by ``steps`` RK4 steps of size t/steps."""
    rho0 = as_operator(rho0, model.dim)
    if t < 0 or steps < 1:
        raise ValueError("need t >= 0 and steps >= 1")
    if Lv is None:
        Lv = model.liouvillian()
    d = model.dim
    v = _rk4(Lv, rho0.ravel().copy(), t / steps, steps)
    rho = v.reshape(d, d)
    lo = np.linalg.eigvalsh(rho)[0]
    if lo < -POSITIVITY_FLOOR:
        raise PositivityError("min eigenvalue %.3e; use more steps" % lo)
    return rho


def apply_kraus(kmap: KrausMap, rho) -> np.ndarray:
    if kmap.completeness_residual() > 1e-8:
        raise ValueError("Kraus operators are not trace preserving (residual %.2e)"
                         % kmap.completeness_residual())
    rho = as_operator(rho, kmap.dim)
    return sum(e @ rho @ dagger(e) for e in kmap.operators)


def depolarizing(p: float) -> KrausMap:
    from .pauli import PAULI
    return KrausMap([np.sqrt(1 - p) * PAULI["I"]] +
                    [np.sqrt(p / 3) * PAULI[a] for a in "XYZ"])


# -- noiseless subsystem experiments --------------------------------------

@dataclass
class FidelityTrace:
    times: np.ndarray
    fidelity: np.ndarray
    leakage: np.ndarray
    label: int
    noise_in_algebra: bool
    algebra_residual: float

    def to_dict(self):
        return {"label": self.label, "times": list(map(float, self.times)),
                "fidelity": list(map(float, self.fidelity)),
                "leakage": list(map(float, self.leakage)),
                "noise_in_algebra": self.noise_in_algebra,
                "algebra_residual": self.algebra_residual}

    @classmethod
    def from_dict(cls, data):
        return cls(np.asarray(data["times"], dtype=float), np.asarray(data["fidelity"], dtype=float),
                   np.asarray(data["leakage"], dtype=float), data["label"],
                   data["noise_in_algebra"], data["algebra_residual"])

    def to_table(self) -> str:
        lines = ["# time fidelity"]
        lines += ["%.12g %.15g" % (t, f) for t, f in zip(self.times, self.fidelity)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_table(cls, text: str) -> tuple:
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        arr = np.array(rows, dtype=float).reshape(-1, 2)
        return arr[:, 0], arr[:, 1]


def encode(bs: BlockStructure, label, logical, gauge=None) -> np.ndarray:
    """State vector sum_{lam, mu} logical_lam gauge_mu |J lam mu>."""
    s = bs.sector(label)
    logical = np.asarray(logical, dtype=complex)
    if logical.shape != (s.n,):
        raise ValueError("logical state must have length n_J = %d" % s.n)
    if gauge is None:
        gauge = np.eye(s.d, dtype=complex)[0]
    gauge = np.asarray(gauge, dtype=complex)
    if gauge.shape != (s.d,):
        raise ValueError("gauge state must have length d_J = %d" % s.d)
    v = np.kron(logical / np.linalg.norm(logical), gauge / np.linalg.norm(gauge))
    return bs.isometry(label) @ v


def decode(rho, bs: BlockStructure, label) -> np.ndarray:
    """Sector-J block of rho with the gauge factor traced out (unnormalized)."""
    s = bs.sector(label)
    V = bs.isometry(label)
    B = dagger(V) @ rho @ V
    return np.einsum("aibi->ab", B.reshape(s.n, s.d, s.n, s.d))


def ns_fidelity_experiment(bs: BlockStructure, label, noise, logical, gauge=None,
                           t: float = 1.0, samples: int = 11, dt: float = 0.01) -> FidelityTrace:
    """Encode into the NS of sector ``label``, evolve, decode, compare.

    ``noise`` is a LindbladModel (sampled at ``samples`` equispaced times in
    [0, t], RK4 with step at most ``dt``) or a sequence of KrausMaps (sampled
    after each map; ``t`` and ``samples`` are ignored).  Noise outside the
    algebra of ``bs`` is allowed and flagged.
    """
    logical = np.asarray(logical, dtype=complex)
    logical = logical / np.linalg.norm(logical)
    rho = density_matrix(encode(bs, label, logical, gauge))
    Q = bs.projector(label)

    if isinstance(noise, LindbladModel):
        ops = noise.operators
    else:
        noise = list(noise)
        ops = [e for m in noise for e in m.operators]
    res = max(algebra_form_residual(X, bs) / max(hs_norm(X), 1.0) for X in ops)

    def measure(r):
        f = float(np.real(logical.conj() @ decode(r, bs, label) @ logical))
        return f, float(1 - np.real(np.trace(Q @ r)))

    times, fids, leaks = [], [], []
    if isinstance(noise, LindbladModel):
        Lv = noise.liouvillian()
        grid = np.linspace(0.0, t, samples)
        prev = 0.0
        for tk in grid:
            span = tk - prev
            if span > 0:
                steps = max(1, int(np.ceil(span / dt - 1e-9)))
                rho = lindblad_evolve(noise, rho, span, steps, Lv)
            prev = tk
            f, lk = measure(rho)
            times.append(tk), fids.append(f), leaks.append(lk)
    else:
        f, lk = measure(rho)
        times.append(0.0), fids.append(f), leaks.append(lk)
        for k, m in enumerate(noise, 1):
            rho = apply_kraus(m, rho)
            f, lk = measure(rho)
            times.append(float(k)), fids.append(f), leaks.append(lk)
    return FidelityTrace(np.array(times), np.array(fids), np.array(leaks),
                         bs.sector(label).label, bool(res < 1e-8), float(res))


def block_coherence(rho, bs: BlockStructure) -> float:
    """HS norm of the part of U^dagger rho U connecting different sectors."""
    rho = as_operator(rho, bs.dim)
    U = bs.basis_change
    return hs_norm(off_block(dagger(U) @ rho @ U, bs.sectors))
