"""Built-in property/oracle checks, runnable without the test suite installed."""

from __future__ import annotations

import math

import numpy as np

from .discord import gqd
from .dynamics import evolve, evolve_series_oracle, make_propagator
from .linalg import eig_hermitian, partial_trace
from .metrology import cfi_diagonal, qfi


def _random_hermitian(rng, dim, scale=1.0):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = 0.5 * (m + m.conj().T)
    return scale * h / max(1.0, np.max(np.abs(np.linalg.eigvalsh(h))))

def _random_density(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def _check_unitary_limit() -> float:
    rng = np.random.default_rng(7)
    dim = 12
    h = _random_hermitian(rng, dim, scale=2.0)
    rho0 = _random_density(rng, dim)
    prop = make_propagator(h, rho0, gamma=0.0)
    t = 1.7
    spec = eig_hermitian(h)
    u = spec.eigenvectors @ np.diag(np.exp(-1j * spec.eigenvalues * t)) @ spec.eigenvectors.conj().T
    return float(np.max(np.abs(evolve(prop, t) - u @ rho0 @ u.conj().T)))


def _check_series() -> float:
    rng = np.random.default_rng(11)
    dim = 8
    h = _random_hermitian(rng, dim, scale=3.0)
    rho0 = _random_density(rng, dim)
    prop = make_propagator(h, rho0, gamma=0.05)
    t = 1.0
    return float(np.max(np.abs(evolve(prop, t)
                               - evolve_series_oracle(h, rho0, 0.05, t, k_max=40))))


def _check_gqd() -> float:
    bell = np.zeros((4, 4), dtype=complex)
    for i in (0, 3):
        for j in (0, 3):
            bell[i, j] = 0.5
    err_bell = abs(gqd(bell).value - 1.0)
    product = np.diag([0.28, 0.12, 0.42, 0.18]).astype(complex)
    err_prod = abs(gqd(product).value)
    return max(err_bell, err_prod)


def _check_qfi() -> float:
    theta = 0.25
    err1 = abs(cfi_diagonal([theta, 1 - theta], [1.0, -1.0]) - 16.0 / 3.0)
    rho = np.diag([theta, 1 - theta]).astype(complex)
    drho = np.diag([1.0, -1.0]).astype(complex)
    err2 = abs(qfi(rho, drho) - 16.0 / 3.0)
    psi = np.array([math.cos(0.3), 0, 0, math.sin(0.3)], dtype=complex)
    dpsi = np.array([-math.sin(0.3), 0, 0, math.cos(0.3)], dtype=complex)
    rho_p = np.outer(psi, psi.conj())
    drho_p = np.outer(dpsi, psi.conj()) + np.outer(psi, dpsi.conj())
    err3 = abs(qfi(rho_p, drho_p) - 4.0)
    return max(err1, err2, err3)


def _check_partial_trace() -> float:
    rng = np.random.default_rng(3)
    rho = _random_density(rng, 12)
    dims = (2, 2, 3)
    red = partial_trace(rho, dims, {0, 1})
    brute = np.zeros((4, 4), dtype=complex)
    t = rho.reshape(dims + dims)
    for i in range(4):
        for j in range(4):
            for n in range(3):
                brute[i, j] += t[i // 2, i % 2, n, j // 2, j % 2, n]
    return float(np.max(np.abs(red - brute)))


CHECKS = [
    ("unitary-limit (gamma=0 vs spectral exponential)", _check_unitary_limit, 1e-10),
    ("series-vs-kernel equivalence", _check_series, 1e-8),
    ("gqd oracle values (Bell, product)", _check_gqd, 1e-3),
    ("qfi oracle values (classical, pure family)", _check_qfi, 1e-8),
    ("partial trace brute-force", _check_partial_trace, 1e-12),
]


def run_selftest() -> int:
    failures = 0
    for name, fn, tol in CHECKS:
        try:
            err = fn()
            ok = err <= tol
        except Exception as exc:  # noqa: BLE001 - report, don't crash the suite
            print(f"FAIL {name}: raised {exc!r}")
            failures += 1
            continue
        print(f"{'PASS' if ok else 'FAIL'} {name}: residual {err:.3e} (tol {tol:.1e})")
        if not ok:
            failures += 1
    return failures
