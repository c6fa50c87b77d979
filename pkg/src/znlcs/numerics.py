"""Dense complex matrix kernel.

Hermitian eigendecomposition (cyclic complex Jacobi), partial trace,
Dirichlet kernel, and seeded random generalized observables. All operators
are plain complex128 ndarrays; helpers validate shape and Hermiticity at the
boundary.

Randomness uses numpy's PCG64 generator: two calls with the same seed
produce the same stream, so every "random" test object is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import njit

DEFAULT_TOL = 1e-9
JACOBI_MAX_SWEEPS = 100


def rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator used for all randomized constructions."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def frob(M: np.ndarray) -> float:
    return float(np.linalg.norm(M))


def adjoint(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def hermitian_defect(M: np.ndarray) -> float:
    return frob(M - adjoint(M))


def require_square(M: np.ndarray, name: str = "matrix") -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    return M.shape[0]


def require_hermitian(M: np.ndarray, tol: float, name: str = "matrix") -> None:
    defect = hermitian_defect(M)
    scale = max(frob(M), 1.0)
    if defect > tol * scale:
        raise ValueError(
            f"{name} is not Hermitian: defect norm {defect:.3e} "
            f"exceeds {tol:.1e} * {scale:.3e}"
        )


@dataclass(frozen=True)
class HermitianEig:
    """Eigendecomposition M = V diag(w) V* with w ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@njit(cache=True)
def _jacobi_kernel(A, V, tol_off, max_sweeps):
    """Cyclic complex Jacobi sweeps on Hermitian A, accumulating V.

    Mutates A towards diagonal and V towards the eigenvector matrix.
    Returns the number of sweeps performed.
    """
    n = A.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(A[p, q]) ** 2
        if math.sqrt(2.0 * off) <= tol_off:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                # Phase factor making the pivot entry real, then a standard
                # real Jacobi rotation on the 2x2 block.
                ph = np.conj(apq) / r
                tau = (aqq - app) / (2.0 * r)
                if abs(tau) > 1e150:
                    # tau*tau would overflow; use the asymptotic rotation.
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = A[i, p]
                    aiq = A[i, q]
                    A[i, p] = c * aip - s * ph * aiq
                    A[i, q] = s * aip + c * ph * aiq
                    A[p, i] = np.conj(A[i, p])
                    A[q, i] = np.conj(A[i, q])
                A[p, p] = app - t * r
                A[q, q] = aqq + t * r
                A[p, q] = 0.0
                A[q, p] = 0.0
                for i in range(n):
                    vip = V[i, p]
                    viq = V[i, q]
                    V[i, p] = c * vip - s * ph * viq
                    V[i, q] = s * vip + c * ph * viq
    return max_sweeps


def hermitian_eig(M: np.ndarray, tol: float = DEFAULT_TOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Converges when the off-diagonal Frobenius mass drops below tol * ||M||_F
    (at most 100 sweeps). Eigenvalues are returned ascending; eigenvectors
    are the matching columns of a unitary matrix.
    """
    n = require_square(M, "hermitian_eig input")
    require_hermitian(M, tol, "hermitian_eig input")
    A = np.array(M, dtype=np.complex128)
    V = np.eye(n, dtype=np.complex128)
    norm = frob(A)
    _jacobi_kernel(A, V, tol * max(norm, 1e-300), JACOBI_MAX_SWEEPS)
    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return HermitianEig(eigenvalues=w[order], eigenvectors=V[:, order])


def partial_trace_B(rho: np.ndarray, dimA: int, dimB: int,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """Trace out the second tensor factor of a density matrix on A (x) B."""
    d = require_square(rho, "density matrix")
    if d != dimA * dimB:
        raise ValueError(
            f"density matrix has dimension {d}, expected dimA*dimB = {dimA * dimB}"
        )
    require_hermitian(rho, tol, "density matrix")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"density matrix has trace {tr}, expected 1")
    r = rho.reshape(dimA, dimB, dimA, dimB)
    return np.einsum("ikjk->ij", r)


def partial_trace_A(rho: np.ndarray, dimA: int, dimB: int,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """Trace out the first tensor factor of a density matrix on A (x) B."""
    d = require_square(rho, "density matrix")
    if d != dimA * dimB:
        raise ValueError(
            f"density matrix has dimension {d}, expected dimA*dimB = {dimA * dimB}"
        )
    require_hermitian(rho, tol, "density matrix")
    r = rho.reshape(dimA, dimB, dimA, dimB)
    return np.einsum("kikj->ij", r)


def dirichlet_kernel(m: int, x: float) -> float:
    """(1/2pi) sum_{k=-m..m} e^{ikx}, via the closed sine-quotient form.

    At x = 0 mod 2pi the closed form is singular and the limit value
    (2m+1)/(2pi) is returned instead.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    half = math.sin(x / 2.0)
    if abs(half) < 1e-12:
        return (2 * m + 1) / (2.0 * math.pi)
    return math.sin((m + 0.5) * x) / (2.0 * math.pi * half)


def random_unitary(dim: int, gen: np.random.Generator) -> np.ndarray:
    """Haar-ish unitary from QR of a complex Gaussian matrix."""
    G = gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    # Fix the phase convention so the result is determined by the stream.
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_order_n_observable(order: int, dim: int, seed: int) -> np.ndarray:
    """Random generalized observable U with U^order = I, deterministic in seed.

    U = V diag(omega^e) V* with uniform eigenvalue exponents e and V a
    seeded random unitary.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    gen = rng(seed)
    exps = gen.integers(0, order, size=dim)
    V = random_unitary(dim, gen)
    omega = np.exp(2j * np.pi / order)
    return (V * (omega ** exps)) @ adjoint(V)


def random_state(dim: int, gen: np.random.Generator) -> np.ndarray:
    """Random unit vector with complex Gaussian entries."""
    v = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
    return v / np.linalg.norm(v)
