"""Dense complex linear algebra on the composite atoms-field Hilbert space.

Everything here operates on plain numpy complex arrays. Subsystem ordering
is fixed throughout the package: atoms first (one qubit per atom), field
mode last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

# Artifact-wide default tolerances. Functions expose these as keyword
# arguments so callers can override per invocation.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-9
MIN_EIGVAL_TOL = -1e-8


@dataclass(frozen=True)
class HilbertLayout:
    """Subsystem bookkeeping for N qubits followed by one truncated field mode."""

    n_atoms: int
    n_cutoff: int

    def __post_init__(self):
        if not 1 <= self.n_atoms <= 4:
            raise ValueError(f"n_atoms must be in [1, 4], got {self.n_atoms}")
        if self.n_cutoff < 1:
            raise ValueError(f"n_cutoff must be >= 1, got {self.n_cutoff}")

    @property
    def dims(self) -> tuple[int, ...]:
        return (2,) * self.n_atoms + (self.n_cutoff + 1,)

    @property
    def field_dim(self) -> int:
        return self.n_cutoff + 1

    @property
    def field_index(self) -> int:
        """Position of the field factor in ``dims`` (0-based)."""
        return self.n_atoms

    @property
    def total_dim(self) -> int:
        return 2 ** self.n_atoms * (self.n_cutoff + 1)

    @property
    def atom_indices(self) -> tuple[int, ...]:
        return tuple(range(self.n_atoms))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def kron(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of an ordered list of matrices (atoms-first ordering)."""
    if len(factors) == 0:
        raise ValueError("kron requires at least one factor")
    return reduce(np.kron, [np.asarray(f, dtype=complex) for f in factors])


def partial_trace(rho: np.ndarray, dims: Sequence[int] | HilbertLayout,
                  keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep`` (0-based indices into dims).

    Kept subsystems retain their original relative order.
    """
    if isinstance(dims, HilbertLayout):
        dims = dims.dims
    dims = tuple(int(d) for d in dims)
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if not keep:
        raise ValueError("keep must be a non-empty subset of subsystem indices")
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    total = int(np.prod(dims))
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (total, total):
        raise ValueError(f"rho has shape {rho.shape}, expected {(total, total)}")

    traced = [i for i in range(n) if i not in keep]
    t = rho.reshape(dims + dims)
    # Contract each traced subsystem's row index with its column index.
    for count, i in enumerate(traced):
        axis1 = i - count
        axis2 = axis1 + (n - count)
        t = np.trace(t, axis1=axis1, axis2=axis2)
    d_keep = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d_keep, d_keep)


def trace_out_field(rho: np.ndarray, layout: HilbertLayout) -> np.ndarray:
    """Reduced atomic state: partial trace over the field mode."""
    return partial_trace(rho, layout, layout.atom_indices)


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def eig_hermitian(h: np.ndarray, hermiticity_tol: float = HERMITICITY_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix with deterministic phases.

    Eigenvalues come back ascending. Each eigenvector's phase is fixed by
    making its largest-magnitude component real and positive, so repeated
    calls on identical input give identical output.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    res = hermiticity_residual(h)
    if res > hermiticity_tol:
        raise ValueError(f"matrix is not Hermitian (residual {res:.3e} > {hermiticity_tol:.1e})")
    evals, evecs = np.linalg.eigh(h)
    for i in range(evecs.shape[1]):
        col = evecs[:, i]
        j = int(np.argmax(np.abs(col)))
        phase = col[j] / abs(col[j])
        evecs[:, i] = col / phase
    return Spectrum(eigenvalues=evals, eigenvectors=evecs)


def check_density_matrix(rho: np.ndarray,
                         trace_tol: float = TRACE_TOL,
                         herm_tol: float = TRACE_TOL,
                         min_eig: float = MIN_EIGVAL_TOL) -> None:
    """Raise ValueError unless rho is a valid density matrix within tolerances."""
    rho = np.asarray(rho, dtype=complex)
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 by more than {trace_tol:.1e}")
    res = hermiticity_residual(rho)
    if res > herm_tol:
        raise ValueError(f"Hermiticity residual {res:.3e} exceeds {herm_tol:.1e}")
    lam_min = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    if lam_min < min_eig:
        raise ValueError(f"minimum eigenvalue {lam_min:.3e} below {min_eig:.1e}")
