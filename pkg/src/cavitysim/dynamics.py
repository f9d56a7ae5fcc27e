"""Time evolution under intrinsic (Milburn) decoherence.

The production path is the closed-form eigenbasis kernel: each element of
rho in the Hamiltonian eigenbasis gets multiplied by
exp[-(gamma t / 2)(E_i - E_j)^2 - i (E_i - E_j) t]. The operator-series
solution is kept as an independent diagnostic oracle.

The printed closed form restricts the double sum to i != j; the diagonal
(kernel identically 1) is included here, since dropping it would destroy
trace preservation and the series solution produces the full sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import HERMITICITY_TOL, Spectrum, eig_hermitian, hermiticity_residual


@dataclass(frozen=True)
class Propagator:
    """Cached spectral data for evolving one fixed initial state."""

    spectrum: Spectrum
    gamma: float
    rho0_eigenbasis: np.ndarray  # V^dag rho(0) V


def make_propagator(h: np.ndarray, rho0: np.ndarray, gamma: float,
                    hermiticity_tol: float = HERMITICITY_TOL) -> Propagator:
    """Diagonalize H once and cache rho(0) in its eigenbasis."""
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    h = np.asarray(h, dtype=complex)
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != h.shape:
        raise ValueError(f"dimension mismatch: H {h.shape} vs rho0 {rho0.shape}")
    spectrum = eig_hermitian(h, hermiticity_tol=hermiticity_tol)
    v = spectrum.eigenvectors
    return Propagator(spectrum=spectrum, gamma=gamma,
                      rho0_eigenbasis=v.conj().T @ rho0 @ v)


def decoherence_kernel(spectrum: Spectrum, gamma: float, t: float) -> np.ndarray:
    """Elementwise eigenbasis kernel exp[-(gamma t/2) dE^2 - i dE t]."""
    e = spectrum.eigenvalues
    de = e[:, None] - e[None, :]
    return np.exp(-0.5 * gamma * t * de ** 2 - 1j * de * t)


def apply_kernel(spectrum: Spectrum, x_eigenbasis: np.ndarray, gamma: float,
                 t: float) -> np.ndarray:
    """Evolve an eigenbasis matrix through the Milburn channel, back to the original basis.

    The channel is linear, so this applies equally to density matrices and
    to their parameter derivatives.
    """
    v = spectrum.eigenvectors
    k = decoherence_kernel(spectrum, gamma, t)
    return v @ (k * x_eigenbasis) @ v.conj().T


def evolve(prop: Propagator, t: float) -> np.ndarray:
    """rho(t) in the computational basis."""
    if not np.isfinite(t) or t < 0:
        raise ValueError(f"t must be finite and >= 0, got {t}")
    return apply_kernel(prop.spectrum, prop.rho0_eigenbasis, prop.gamma, t)


def evolve_series_oracle(h: np.ndarray, rho0: np.ndarray, gamma: float, t: float,
                         k_max: int) -> np.ndarray:
    """Truncated operator-series solution, computed spectrally. Diagnostic only.

    Term k applies M^k = H^k exp(-iHt) exp(-gamma t H^2 / 2) on both sides
    with weight (gamma t)^k / k!. In the eigenbasis this reduces to the
    scalar partial sum of exp(gamma t E_i E_j) times the k=0 phase/damping
    factors.
    """
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    if k_max > 60:
        raise ValueError(f"k_max capped at 60, got {k_max}")
    spectrum = eig_hermitian(np.asarray(h, dtype=complex))
    v = spectrum.eigenvectors
    e = spectrum.eigenvalues
    rho0e = v.conj().T @ np.asarray(rho0, dtype=complex) @ v

    # f_i = exp(-i E_i t - gamma t E_i^2 / 2); M^k in the eigenbasis is diag(E^k f).
    f = np.exp(-1j * e * t - 0.5 * gamma * t * e ** 2)
    x = gamma * t * np.outer(e, e)   # per-element series argument
    partial = np.zeros_like(x)
    term = np.ones_like(x)
    partial += term
    for k in range(1, k_max + 1):
        term = term * x / k
        partial += term
    rho_te = partial * np.outer(f, f.conj()) * rho0e
    return v @ rho_te @ v.conj().T


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))
