"""System Hamiltonian and initial state construction.

Per-qubit basis ordering is (excited, ground), so sigma_z = diag(1, -1) and
the global atomic basis is lexicographic: |e...e> first, |g...g> last.
Field operators are truncated at the photon cutoff before any composition,
so e.g. the squared number operator is exactly diag(n^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import HilbertLayout, kron

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)   # sigma+ |g> = |e>
SIGMA_MINUS = SIGMA_PLUS.conj().T

_PAULIS = {"z": SIGMA_Z, "plus": SIGMA_PLUS, "minus": SIGMA_MINUS}


@dataclass(frozen=True)
class SystemParams:
    """Model constants in scaled-time units."""

    n_atoms: int
    n_cutoff: int
    omega0: float = 1.0   # atomic transition frequency
    omega: float = 1.0    # field mode frequency
    g: float = 1.0        # atom-field coupling
    chi: float = 0.0      # Kerr strength
    kappa: float = 0.0    # parametric pump amplitude
    gamma: float = 0.0    # intrinsic decoherence rate

    def __post_init__(self):
        if not 1 <= self.n_atoms <= 4:
            raise ValueError(f"n_atoms must be in [1, 4], got {self.n_atoms}")
        if self.n_cutoff < 1:
            raise ValueError(f"n_cutoff must be >= 1, got {self.n_cutoff}")
        for name in ("omega0", "omega", "g", "chi", "kappa", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        for name in ("chi", "kappa", "gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def layout(self) -> HilbertLayout:
        return HilbertLayout(self.n_atoms, self.n_cutoff)


@dataclass(frozen=True)
class InitialStateParams:
    """Mixedness p and superposition angle theta of the initial atomic state."""

    p: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")


def annihilation_op(n_cutoff: int) -> np.ndarray:
    """Truncated field annihilation operator, a[n-1, n] = sqrt(n)."""
    if n_cutoff < 1:
        raise ValueError(f"n_cutoff must be >= 1, got {n_cutoff}")
    d = n_cutoff + 1
    a = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        a[n - 1, n] = math.sqrt(n)
    return a


def field_op(op: np.ndarray, layout: HilbertLayout) -> np.ndarray:
    """Embed a field-only operator into the full atoms+field space."""
    return kron([np.eye(2 ** layout.n_atoms, dtype=complex), op])


def atom_op(pauli: str, atom_index: int, layout: HilbertLayout) -> np.ndarray:
    """Single-atom Pauli operator embedded into the full space (atom_index is 1-based)."""
    if pauli not in _PAULIS:
        raise ValueError(f"pauli must be one of {sorted(_PAULIS)}, got {pauli!r}")
    if not 1 <= atom_index <= layout.n_atoms:
        raise ValueError(f"atom_index {atom_index} out of range [1, {layout.n_atoms}]")
    factors = [np.eye(2, dtype=complex)] * layout.n_atoms + [np.eye(layout.field_dim, dtype=complex)]
    factors[atom_index - 1] = _PAULIS[pauli]
    return kron(factors)


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """Total Hamiltonian: free atoms + free field + RWA coupling + Kerr + parametric pump."""
    lay = params.layout
    a = annihilation_op(params.n_cutoff)
    ad = a.conj().T
    n_op = ad @ a

    h = params.omega * field_op(n_op, lay)
    h = h + params.chi * field_op(n_op @ n_op, lay)
    # degenerate parametric amplification, -i(kappa/2)(a^2 - a^dag^2)
    h = h + field_op(-0.5j * params.kappa * (a @ a - ad @ ad), lay)
    a_full = field_op(a, lay)
    ad_full = field_op(ad, lay)
    for i in range(1, params.n_atoms + 1):
        h = h + 0.5 * params.omega0 * atom_op("z", i, lay)
        h = h + params.g * (a_full @ atom_op("plus", i, lay)
                            + ad_full @ atom_op("minus", i, lay))
    return h


def _ground_index(n_atoms: int) -> int:
    return 2 ** n_atoms - 1  # |g...g> in the (e, g) lexicographic ordering


def _atomic_superposition(theta: float, n_atoms: int) -> np.ndarray:
    psi = np.zeros(2 ** n_atoms, dtype=complex)
    psi[_ground_index(n_atoms)] = math.cos(theta)
    psi[0] = math.sin(theta)  # |e...e>
    return psi


def maximally_mixed_field(layout: HilbertLayout) -> np.ndarray:
    return np.eye(layout.field_dim, dtype=complex) / layout.field_dim


def build_initial_state(isp: InitialStateParams, layout: HilbertLayout) -> np.ndarray:
    """rho(0) = [(1-p)|psi><psi| + p|g...g><g...g|] tensor (maximally mixed field)."""
    n = layout.n_atoms
    psi = _atomic_superposition(isp.theta, n)
    rho_atoms = (1.0 - isp.p) * np.outer(psi, psi.conj())
    gi = _ground_index(n)
    rho_atoms[gi, gi] += isp.p
    return kron([rho_atoms, maximally_mixed_field(layout)])


def initial_state_theta_derivative(isp: InitialStateParams, layout: HilbertLayout) -> np.ndarray:
    """Analytic d rho(0) / d theta; traceless and Hermitian."""
    n = layout.n_atoms
    psi = _atomic_superposition(isp.theta, n)
    dpsi = np.zeros(2 ** n, dtype=complex)
    dpsi[_ground_index(n)] = -math.sin(isp.theta)
    dpsi[0] = math.cos(isp.theta)
    d_atoms = (1.0 - isp.p) * (np.outer(dpsi, psi.conj()) + np.outer(psi, dpsi.conj()))
    return kron([d_atoms, maximally_mixed_field(layout)])
