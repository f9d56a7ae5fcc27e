"""Von Neumann entropies and global quantum discord of the atomic register.

The discord is computed on the reduced atomic state (field traced out),
minimizing over local projective measurements parametrized per qubit by a
rotation about an equatorial Bloch axis:

    R_j(theta_j, phi_j) = cos(theta_j) 1 + i sin(theta_j) (cos(phi_j) sigma_y
                                                           + sin(phi_j) sigma_x)

which reaches every single-qubit projective basis. Minimization is a
deterministic multistart Nelder-Mead over the 2N angles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .linalg import kron, partial_trace

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)

EIGVAL_FLOOR = 1e-12  # eigenvalues/probabilities below this contribute 0 to entropies

# one (theta_j, phi_j) pair per qubit
MeasurementAngles = Sequence[tuple[float, float]]


@dataclass(frozen=True)
class GqdOptions:
    """Multistart optimizer settings; deterministic for a fixed seed."""

    n_random_starts: int = 8
    max_lattice_starts: int = 32
    seed: int = 42
    fatol: float = 1e-8
    xatol: float = 1e-6
    maxfev: int = 2000


@dataclass(frozen=True)
class GqdResult:
    value: float
    optimal_angles: tuple[tuple[float, float], ...]
    n_starts: int
    converged: bool


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits; eigenvalues below the floor are dropped."""
    evals = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    evals = evals[evals > EIGVAL_FLOOR]
    return float(-np.sum(evals * np.log2(evals)))


def _shannon_bits(probs: np.ndarray) -> float:
    p = probs[probs > EIGVAL_FLOOR]
    return float(-np.sum(p * np.log2(p)))


def single_qubit_rotation(theta: float, phi: float) -> np.ndarray:
    return (math.cos(theta) * np.eye(2, dtype=complex)
            + 1j * math.sin(theta) * (math.cos(phi) * SIGMA_Y + math.sin(phi) * SIGMA_X))


def rotation_operator(angles) -> np.ndarray:
    """Tensor product of per-qubit rotations; unitary on the 2^N atomic space."""
    return kron([single_qubit_rotation(th, ph) for th, ph in angles])


def _measured_diagonal(rho: np.ndarray, r: np.ndarray) -> np.ndarray:
    d = np.real(np.einsum("ij,jk,ki->i", r.conj().T, rho, r))
    return np.clip(d, 0.0, None)


def _n_qubits(rho_atoms: np.ndarray) -> int:
    dim = rho_atoms.shape[0]
    n = int(round(math.log2(dim)))
    if 2 ** n != dim:
        raise ValueError(f"atomic state dimension {dim} is not a power of 2")
    return n


def _marginals(rho_atoms: np.ndarray, n: int) -> list[np.ndarray]:
    dims = (2,) * n
    return [partial_trace(rho_atoms, dims, {j}) for j in range(n)]


def gqd_objective(rho_atoms: np.ndarray, angles) -> float:
    """Discord objective at fixed measurement angles (not yet minimized)."""
    rho_atoms = np.asarray(rho_atoms, dtype=complex)
    if abs(np.trace(rho_atoms) - 1.0) > 1e-9:
        raise ValueError(f"atomic state trace {np.trace(rho_atoms)} is not 1")
    n = _n_qubits(rho_atoms)
    angles = list(angles)
    if len(angles) != n:
        raise ValueError(f"expected {n} angle pairs, got {len(angles)}")
    obj = _make_objective(rho_atoms, _marginals(rho_atoms, n))
    return obj(np.array([a for pair in angles for a in pair], dtype=float))


def _make_objective(rho, marginals):
    """Closure evaluating the discord objective; constants hoisted out of the hot loop."""
    n = len(marginals)
    s_const = sum(von_neumann_entropy(m) for m in marginals) - von_neumann_entropy(rho)
    # marginal entries as python complex for cheap scalar arithmetic
    margs = [(m[0, 0].real, m[1, 1].real, complex(m[0, 1])) for m in marginals]
    dim = rho.shape[0]

    def objective(x):
        val = s_const
        rs = []
        for j in range(n):
            ct = math.cos(x[2 * j])
            st = math.sin(x[2 * j])
            cp = math.cos(x[2 * j + 1])
            sp = math.sin(x[2 * j + 1])
            r01 = st * (cp + 1j * sp)
            r10 = st * (-cp + 1j * sp)
            rs.append(np.array([[ct, r01], [r10, ct]]))
            m00, m11, m01 = margs[j]
            p0 = (ct * ct) * m00 + abs(r10) ** 2 * m11 + 2.0 * (ct * (m01 * r10)).real
            p1 = abs(r01) ** 2 * m00 + (ct * ct) * m11 + 2.0 * ((r01.conjugate() * m01) * ct).real
            if p0 > EIGVAL_FLOOR:
                val += p0 * math.log2(p0)
            if p1 > EIGVAL_FLOOR:
                val += p1 * math.log2(p1)
        r_total = rs[0]
        for r in rs[1:]:
            d0 = r_total.shape[0]
            r_total = (r_total[:, None, :, None] * r[None, :, None, :]).reshape(2 * d0, 2 * d0)
        probs = np.real(np.sum(r_total.conj() * (rho @ r_total), axis=0))
        probs = probs[probs > EIGVAL_FLOOR]
        val -= float(np.sum(probs * np.log2(probs)))
        return val

    return objective


def _lattice_starts(n: int, cap: int) -> list[np.ndarray]:
    per_qubit = [(th, ph) for th in (0.0, math.pi / 4) for ph in (0.0, math.pi / 2)]
    starts = []
    for combo in itertools.product(per_qubit, repeat=n):
        starts.append(np.array([a for pair in combo for a in pair]))
        if len(starts) >= cap:
            break
    return starts


def _fold_angles(x: np.ndarray, n: int) -> tuple[tuple[float, float], ...]:
    # Map back into the fundamental domain theta in [0, pi/2], phi in [0, pi).
    out = []
    for j in range(n):
        th = math.fmod(x[2 * j], math.pi)
        if th < 0:
            th += math.pi
        if th > math.pi / 2:
            th = math.pi - th
        ph = math.fmod(x[2 * j + 1], math.pi)
        if ph < 0:
            ph += math.pi
        out.append((th, ph))
    return tuple(out)


def gqd(rho_atoms: np.ndarray, opts: GqdOptions | None = None,
        extra_starts=()) -> GqdResult:
    """Global quantum discord of the atomic state, in bits.

    ``extra_starts`` accepts additional angle sequences (e.g. the optimum
    from a neighboring time point) appended to the standard start set.
    """
    if opts is None:
        opts = GqdOptions()
    rho_atoms = np.asarray(rho_atoms, dtype=complex)
    if abs(np.trace(rho_atoms) - 1.0) > 1e-9:
        raise ValueError(f"atomic state trace {np.trace(rho_atoms)} is not 1")
    n = _n_qubits(rho_atoms)

    objective = _make_objective(rho_atoms, _marginals(rho_atoms, n))

    starts = _lattice_starts(n, opts.max_lattice_starts)
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.n_random_starts):
        th = rng.uniform(0.0, math.pi / 2, size=n)
        ph = rng.uniform(0.0, math.pi, size=n)
        starts.append(np.column_stack([th, ph]).ravel())
    for extra in extra_starts:
        starts.append(np.array([a for pair in extra for a in pair], dtype=float))

    best_val = math.inf
    best_x = starts[0]
    converged = False
    for x0 in starts:
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"fatol": opts.fatol, "xatol": opts.xatol,
                                "maxfev": opts.maxfev})
        converged = converged or bool(res.success)
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = res.x
    return GqdResult(value=max(best_val, 0.0),
                     optimal_angles=_fold_angles(best_x, n),
                     n_starts=len(starts),
                     converged=converged)
