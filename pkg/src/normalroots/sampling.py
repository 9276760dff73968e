"""Seeded generators for test corpora: unitaries, Hermitians, and normal
matrices with controlled eigenvalue arguments.

Everything is deterministic per (seed, dim); generators return plain complex
arrays.  Normal matrices are built as U diag(mu) U*, which makes the intended
spectrum its own oracle.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "random_unitary",
    "random_hermitian",
    "random_psd",
    "random_normal",
    "random_normal_signdef",
]


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-ish unitary from QR orthonormalization of a Gaussian matrix."""
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    # Fix the phase ambiguity so the result is deterministic per seed.
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * 0.5 * (G + G.conj().T)


def random_psd(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (G @ G.conj().T) / dim


def random_normal(
    rng: np.random.Generator,
    dim: int,
    modulus_range: tuple[float, float] = (0.2, 3.0),
    arg_range: tuple[float, float] = (-np.pi, np.pi),
) -> tuple[np.ndarray, np.ndarray]:
    """Normal matrix U diag(mu) U* with moduli and arguments sampled
    uniformly from the given ranges.  Returns (matrix, mu)."""
    r = rng.uniform(*modulus_range, size=dim)
    phi = rng.uniform(*arg_range, size=dim)
    mu = r * np.exp(1j * phi)
    U = random_unitary(rng, dim)
    return (U * mu) @ U.conj().T, mu


def random_normal_signdef(
    rng: np.random.Generator, dim: int, sign: str = "nonneg"
) -> tuple[np.ndarray, np.ndarray]:
    """Normal matrix whose imaginary part is psd ('nonneg') or nsd ('nonpos').

    The nonpos case keeps eigenvalue arguments away from -pi so no eigenvalue
    sits on the negative real axis, where the square-root branch conventions
    legitimately differ.
    """
    if sign == "nonneg":
        arg_range = (0.0, np.pi)
    elif sign == "nonpos":
        arg_range = (-np.pi + 0.1, 0.0)
    else:
        raise ValueError("sign must be 'nonneg' or 'nonpos'")
    return random_normal(rng, dim, arg_range=arg_range)
