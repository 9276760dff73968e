"""Constructive roots of normal matrices.

Three constructions, plus a spectral oracle:

* sqrt_signdef -- explicit normal square root of N = C + iD when the
  imaginary part D is sign-definite, built from psd roots of (|N| +- C)/2.
* root_pow2n   -- 2^n-th root by iterating sqrt_signdef; every intermediate
  has a sign-definite imaginary part by construction.
* nth_root     -- nth root of any normal N via the commuting polar form,
  |N|^{1/n} e^{i(A + 2k pi I)/n}, one root per branch integer k.
* spectral_sqrt -- principal square root applied eigenvalue-wise; serves as
  an independent oracle for sqrt_signdef.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    IndefiniteError,
    Tolerances,
    abs_op,
    as_matrix,
    cartesian_parts,
    expi,
    fro,
    hermitian_eigen,
    normal_eigen,
    polar_normal,
    psd_root,
    require_normal,
    unitary_log,
)

__all__ = [
    "RootCertificate",
    "sign_case",
    "sqrt_signdef",
    "root_pow2n",
    "nth_root",
    "spectral_sqrt",
    "verify_root",
]


@dataclass(frozen=True)
class RootCertificate:
    """A computed root together with its quality metrics.

    power_residual   = ||root^order - target||_F / (1 + ||target||_F)
    normality_defect = ||root* root - root root*||_F / (1 + ||root||_F^2)
    branch is the integer k of the nth-root construction (0 otherwise).
    """

    root: np.ndarray
    order: int
    branch: int
    power_residual: float
    normality_defect: float


def verify_root(root, target, order: int) -> RootCertificate:
    """Recompute the certificate metrics for an externally supplied root.

    Out-of-tolerance values are reported, never raised.
    """
    root = as_matrix(root, "root")
    target = as_matrix(target, "target")
    if root.shape != target.shape:
        raise ValueError("root and target dimensions differ")
    if not (isinstance(order, (int, np.integer)) and order >= 1):
        raise ValueError("order must be a positive integer")
    power = np.linalg.matrix_power(root, int(order))
    adj = root.conj().T
    return RootCertificate(
        root=root,
        order=int(order),
        branch=0,
        power_residual=fro(power - target) / (1.0 + fro(target)),
        normality_defect=fro(adj @ root - root @ adj) / (1.0 + fro(root) ** 2),
    )


def sign_case(D, tol: Tolerances = DEFAULT_TOL) -> str:
    """Definiteness of a Hermitian matrix: 'nonneg' or 'nonpos'.

    D ~ 0 counts as nonneg (both square-root branches coincide there).
    Raises IndefiniteError when eigenvalues of both signs exceed the band.
    """
    D = as_matrix(D, "D")
    eig = hermitian_eigen(D, tol)
    band = tol.structural * (1.0 + fro(D))
    lam_min = float(eig.eigenvalues[0])
    lam_max = float(eig.eigenvalues[-1])
    if lam_min >= -band:
        return "nonneg"
    if lam_max <= band:
        return "nonpos"
    raise IndefiniteError(
        f"imaginary part is indefinite: lambda_min={lam_min:.3e}, lambda_max={lam_max:.3e}"
    )


def _certify(root: np.ndarray, target: np.ndarray, order: int, branch: int) -> RootCertificate:
    cert = verify_root(root, target, order)
    return RootCertificate(
        root=cert.root,
        order=cert.order,
        branch=branch,
        power_residual=cert.power_residual,
        normality_defect=cert.normality_defect,
    )


def sqrt_signdef(N, tol: Tolerances = DEFAULT_TOL) -> RootCertificate:
    """Normal square root of a normal N whose imaginary part is sign-definite.

    With C = Re N, A = ((|N|+C)/2)^{1/2}, B = ((|N|-C)/2)^{1/2}, the root is
    A + iB when Im N >= 0 and A - iB when Im N <= 0.
    """
    N = as_matrix(N, "N")
    require_normal(N, tol, "N")
    parts = cartesian_parts(N, tol)
    case = sign_case(parts.im, tol)
    absn = abs_op(N, tol)
    A = psd_root(0.5 * (absn + parts.re), 2, tol)
    B = psd_root(0.5 * (absn - parts.re), 2, tol)
    root = A + 1j * B if case == "nonneg" else A - 1j * B
    return _certify(root, N, 2, 0)


def root_pow2n(N, n: int, tol: Tolerances = DEFAULT_TOL) -> RootCertificate:
    """Root of order 2^n by iterated sign-definite square roots.

    Each intermediate has imaginary part +-((|S|-Re S)/2)^{1/2}, which is
    sign-definite by construction; sqrt_signdef re-checks this at every
    stage rather than assuming it.
    """
    N = as_matrix(N, "N")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("n must be a positive integer")
    current = N
    for _ in range(int(n)):
        current = sqrt_signdef(current, tol).root
    return _certify(current, N, 2 ** int(n), 0)


def nth_root(N, n: int, k: int = 0, tol: Tolerances = DEFAULT_TOL) -> RootCertificate:
    """Branch-k nth root |N|^{1/n} e^{i(A + 2k pi I)/n} of a normal matrix.

    (U, P) is the commuting polar form of N and A = -i log U is Hermitian
    with spectrum in (-pi, pi].  Any integer k is accepted; k and k + n give
    the same root up to rounding.
    """
    N = as_matrix(N, "N")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("n must be a positive integer")
    if not isinstance(k, (int, np.integer)):
        raise ValueError("branch k must be an integer")
    form = polar_normal(N, tol)
    A = unitary_log(form.unitary, tol)
    shift = (A + 2.0 * np.pi * int(k) * np.eye(N.shape[0])) / int(n)
    root = psd_root(form.positive, int(n), tol) @ expi(shift, tol)
    return _certify(root, N, int(n), int(k))


def spectral_sqrt(N, tol: Tolerances = DEFAULT_TOL) -> RootCertificate:
    """Square root by the principal scalar branch on the spectrum.

    Eigenvalue-wise sqrt with arg of the result in (-pi/2, pi/2]; the branch
    cut sends negative reals to +i sqrt|mu|.
    """
    N = as_matrix(N, "N")
    mu, V = normal_eigen(N, tol)
    # Snap rounding-level imaginary parts to zero so eigenvalues on the
    # negative real axis land on the +i side of the cut deterministically.
    snap = tol.structural * (1.0 + np.abs(mu))
    mu = np.where(np.abs(mu.imag) <= snap, mu.real.astype(complex), mu)
    root = (V * np.sqrt(mu)) @ V.conj().T
    return _certify(root, N, 2, 0)
