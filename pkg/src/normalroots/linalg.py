"""Dense complex linear algebra primitives.

Everything downstream (root construction, theorem checking, the CLI) works on
plain numpy complex arrays.  This module owns the spectral machinery: a cyclic
Jacobi eigensolver for complex Hermitian matrices, eigendecomposition of
normal matrices by simultaneous diagonalization of the Cartesian parts, psd
nth roots, polar decomposition of normal matrices, and the unitary
exponential/logarithm pair with the principal branch fixed to (-pi, pi].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "LinalgError",
    "NotHermitianError",
    "NotNormalError",
    "NotUnitaryError",
    "IndefiniteError",
    "ConvergenceError",
    "HermitianEigen",
    "CartesianPair",
    "PolarForm",
    "MatrixFlags",
    "as_matrix",
    "fro",
    "cartesian_parts",
    "recompose",
    "hermitian_eigen",
    "psd_root",
    "abs_op",
    "normal_eigen",
    "expi",
    "unitary_log",
    "polar_normal",
    "operator_norm",
    "classify",
]


class LinalgError(ValueError):
    """A precondition on a matrix argument was violated."""


class NotHermitianError(LinalgError):
    pass


class NotNormalError(LinalgError):
    pass


class NotUnitaryError(LinalgError):
    pass


class IndefiniteError(LinalgError):
    """Input has eigenvalues of both signs where a sign-definite matrix was required."""


class ConvergenceError(RuntimeError):
    """The Jacobi sweep limit was reached; input is numerically pathological."""


@dataclass(frozen=True)
class Tolerances:
    """Scaled tolerances used by every structural and residual test.

    structural: Hermitian/normal/psd/unitary membership tests.
    residual:   reconstruction and root-power residuals.
    sweep:      Jacobi off-diagonal termination threshold.
    """

    structural: float = 1e-10
    residual: float = 1e-9
    sweep: float = 1e-13

    def __post_init__(self) -> None:
        for name in ("structural", "residual", "sweep"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"tolerance {name!r} must be strictly positive")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class HermitianEigen:
    """Eigenvalues (real, ascending) and a unitary eigenvector matrix."""

    eigenvalues: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class CartesianPair:
    """Hermitian parts (re, im) with T = re + 1j*im."""

    re: np.ndarray
    im: np.ndarray


@dataclass(frozen=True)
class PolarForm:
    """Commuting polar factors of a normal matrix: unitary @ positive."""

    unitary: np.ndarray
    positive: np.ndarray


@dataclass(frozen=True)
class MatrixFlags:
    hermitian: bool
    normal: bool
    psd: bool
    nsd: bool
    unitary: bool
    zero: bool

    def to_dict(self) -> dict:
        return {
            "hermitian": self.hermitian,
            "normal": self.normal,
            "psd": self.psd,
            "nsd": self.nsd,
            "unitary": self.unitary,
            "zero": self.zero,
        }


def fro(M: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(M))


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and return a square, finite complex matrix."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise LinalgError(f"{name} must be a nonempty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise LinalgError(f"{name} contains non-finite entries")
    return A


def _adj(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def hermitian_defect(M: np.ndarray) -> float:
    return fro(M - _adj(M))


def normality_defect(M: np.ndarray) -> float:
    """Scaled commutation defect of M with its adjoint."""
    M = np.asarray(M, dtype=complex)
    return fro(_adj(M) @ M - M @ _adj(M)) / (1.0 + fro(M) ** 2)


def is_hermitian(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    return hermitian_defect(M) <= tol.structural * (1.0 + fro(M))


def is_normal(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    return fro(_adj(M) @ M - M @ _adj(M)) <= tol.structural * (1.0 + fro(M) ** 2)


def require_hermitian(M: np.ndarray, tol: Tolerances, name: str = "matrix") -> np.ndarray:
    if not is_hermitian(M, tol):
        raise NotHermitianError(
            f"{name} is not Hermitian: defect {hermitian_defect(M):.3e}"
        )
    return 0.5 * (M + _adj(M))


def require_normal(M: np.ndarray, tol: Tolerances, name: str = "matrix") -> np.ndarray:
    if not is_normal(M, tol):
        raise NotNormalError(f"{name} is not normal: defect {normality_defect(M):.3e}")
    return M


def cartesian_parts(T, tol: Tolerances = DEFAULT_TOL) -> CartesianPair:
    """Split T into Hermitian re/im parts: re = (T+T*)/2, im = (T-T*)/(2i)."""
    T = as_matrix(T, "T")
    re = 0.5 * (T + _adj(T))
    im = (T - _adj(T)) / 2j
    return CartesianPair(re=re, im=im)


def recompose(pair: CartesianPair, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Inverse of cartesian_parts; rejects non-Hermitian parts."""
    re = as_matrix(pair.re, "re part")
    im = as_matrix(pair.im, "im part")
    require_hermitian(re, tol, "re part")
    require_hermitian(im, tol, "im part")
    return re + 1j * im


def _offdiag_norm(A: np.ndarray) -> float:
    return fro(A - np.diag(np.diag(A)))


def hermitian_eigen(
    H, tol: Tolerances = DEFAULT_TOL, max_sweeps: int = 64
) -> HermitianEigen:
    """Full eigendecomposition of a complex Hermitian matrix.

    Cyclic Jacobi rotations; each rotation zeroes one off-diagonal entry via a
    phased plane rotation.  Terminates when the off-diagonal Frobenius norm
    drops below sweep * (1 + ||H||_F).  Eigenvalues returned ascending with
    columns of the unitary factor permuted to match.
    """
    H = as_matrix(H, "H")
    A = require_hermitian(H, tol, "H").copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = 1.0 + fro(A)
    threshold = tol.sweep * scale
    # Rotations on entries this small cannot push the off-diagonal mass
    # above threshold/4, so skipping them is safe and speeds the last sweeps.
    skip = threshold / (4.0 * n)
    converged = n == 1
    for _ in range(max_sweeps):
        if _offdiag_norm(A) <= threshold:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                u = apq / mag
                theta = 0.5 * np.arctan2(2.0 * mag, float((A[q, q] - A[p, p]).real))
                c = np.cos(theta)
                s = np.sin(theta)
                Ap = A[:, p].copy()
                Aq = A[:, q].copy()
                A[:, p] = c * Ap - s * np.conj(u) * Aq
                A[:, q] = s * u * Ap + c * Aq
                Rp = A[p, :].copy()
                Rq = A[q, :].copy()
                A[p, :] = c * Rp - s * u * Rq
                A[q, :] = s * np.conj(u) * Rp + c * Rq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                Vp = V[:, p].copy()
                Vq = V[:, q].copy()
                V[:, p] = c * Vp - s * np.conj(u) * Vq
                V[:, q] = s * u * Vp + c * Vq
    else:
        converged = _offdiag_norm(A) <= threshold
    if not converged:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    lam = np.diag(A).real.copy()
    order = np.argsort(lam, kind="stable")
    return HermitianEigen(eigenvalues=lam[order], vectors=V[:, order])


def psd_root(P, n: int = 2, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Unique positive semidefinite nth root of a psd matrix.

    Eigenvalues in [-structural*(1+||P||_F), 0) are treated as rounding noise
    and clamped to 0; anything more negative raises IndefiniteError.
    """
    P = as_matrix(P, "P")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("root order n must be a positive integer")
    eig = hermitian_eigen(P, tol)
    scale = 1.0 + fro(P)
    lam_min = float(eig.eigenvalues[0])
    if lam_min < -tol.structural * scale:
        raise IndefiniteError(f"matrix is not psd: lambda_min = {lam_min:.3e}")
    lam = np.clip(eig.eigenvalues, 0.0, None)
    roots = lam ** (1.0 / n)
    V = eig.vectors
    R = (V * roots) @ _adj(V)
    return 0.5 * (R + _adj(R))


def abs_op(T, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """|T| = psd square root of T*T."""
    T = as_matrix(T, "T")
    G = _adj(T) @ T
    return psd_root(0.5 * (G + _adj(G)), 2, tol)


def _clusters(values: np.ndarray, gap: float) -> list:
    """Split ascending values into runs whose consecutive gaps are <= gap."""
    groups = []
    start = 0
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > gap:
            groups.append((start, i))
            start = i
    groups.append((start, len(values)))
    return groups


# Relative gap below which two eigenvalues of Re N are treated as equal when
# simultaneously diagonalizing the Cartesian parts.
CLUSTER_FACTOR = 1e-8


def normal_eigen(N, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition (mu, V) of a normal matrix with V unitary.

    Diagonalizes Re N, then diagonalizes Im N inside each cluster of equal
    Re-eigenvalues; valid because normality makes the Cartesian parts commute.
    """
    N = as_matrix(N, "N")
    require_normal(N, tol, "N")
    parts = cartesian_parts(N, tol)
    eig = hermitian_eigen(parts.re, tol)
    lam, V = eig.eigenvalues, eig.vectors.copy()
    n = N.shape[0]
    spread = float(lam[-1] - lam[0]) if n > 1 else 0.0
    gap = CLUSTER_FACTOR * (1.0 + spread)
    B = _adj(V) @ parts.im @ V
    for lo, hi in _clusters(lam, gap):
        if hi - lo < 2:
            continue
        block = B[lo:hi, lo:hi]
        block = 0.5 * (block + _adj(block))
        sub = hermitian_eigen(block, tol)
        V[:, lo:hi] = V[:, lo:hi] @ sub.vectors
    mu = np.diag(_adj(V) @ N @ V).copy()
    return mu, V


def expi(A, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Unitary exponential e^{iA} of a Hermitian matrix."""
    A = as_matrix(A, "A")
    eig = hermitian_eigen(A, tol)
    V = eig.vectors
    return (V * np.exp(1j * eig.eigenvalues)) @ _adj(V)


def unitary_log(U, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Hermitian A with e^{iA} = U, eigenvalues of A in the principal
    branch (-pi, pi]; arg(-1) = pi by convention."""
    U = as_matrix(U, "U")
    n = U.shape[0]
    if fro(_adj(U) @ U - np.eye(n)) > tol.structural * n:
        raise NotUnitaryError("input is not unitary within tolerance")
    mu, V = normal_eigen(U, tol)
    # Unit-modulus eigenvalues; np.angle already lands in (-pi, pi].
    A = (V * np.angle(mu)) @ _adj(V)
    return 0.5 * (A + _adj(A))


def polar_normal(N, tol: Tolerances = DEFAULT_TOL) -> PolarForm:
    """Commuting polar decomposition N = U P = P U of a normal matrix.

    Zero eigenvalues of N map to unitary eigenvalue 1 (canonical completion
    of U on the kernel of P).
    """
    N = as_matrix(N, "N")
    mu, V = normal_eigen(N, tol)
    P = abs_op(N, tol)
    zero_thr = tol.structural * (1.0 + fro(N))
    mods = np.abs(mu)
    phases = np.where(mods > zero_thr, mu / np.where(mods > zero_thr, mods, 1.0), 1.0)
    U = (V * phases) @ _adj(V)
    return PolarForm(unitary=U, positive=P)


def operator_norm(M, tol: Tolerances = DEFAULT_TOL) -> float:
    """Spectral norm sqrt(lambda_max(M* M))."""
    M = as_matrix(M, "M")
    G = _adj(M) @ M
    eig = hermitian_eigen(0.5 * (G + _adj(G)), tol)
    return float(np.sqrt(max(float(eig.eigenvalues[-1]), 0.0)))


def classify(M, tol: Tolerances = DEFAULT_TOL) -> MatrixFlags:
    """Structural flags decided by scaled Frobenius tests."""
    M = as_matrix(M, "M")
    n = M.shape[0]
    norm = fro(M)
    herm = is_hermitian(M, tol)
    normal = is_normal(M, tol)
    psd = nsd = False
    if herm:
        eig = hermitian_eigen(0.5 * (M + _adj(M)), tol)
        band = tol.structural * (1.0 + norm)
        psd = float(eig.eigenvalues[0]) >= -band
        nsd = float(eig.eigenvalues[-1]) <= band
    unitary = fro(_adj(M) @ M - np.eye(n)) <= tol.structural * n
    zero = norm <= tol.structural
    return MatrixFlags(
        hermitian=herm, normal=normal, psd=psd, nsd=nsd, unitary=unitary, zero=zero
    )
