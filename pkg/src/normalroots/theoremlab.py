"""Executable checks for the structural results on square roots.

Machinery: a dense Sylvester solver (Kronecker vectorization), spectra
disjointness tests, the root-of-self-adjoint classifier, numerical-range
membership with certified witnesses, the zero-square (nilpotent) checks, the
commutator identities for T and T^2, the normality biconditional under a
sign-definite real part, a discretized Volterra operator, and the periodicity
of e^{iA} under 2k pi shifts.

Verdicts that contradict a proved statement are reported as THEOREM
VIOLATIONS in the returned report objects, never raised as exceptions: the
point of the lab is falsification with evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    LinalgError,
    Tolerances,
    abs_op,
    as_matrix,
    cartesian_parts,
    expi,
    fro,
    hermitian_eigen,
    is_hermitian,
    require_hermitian,
)

__all__ = [
    "SingularSylvesterError",
    "SylvesterProblem",
    "sylvester_solve",
    "spectra_disjoint",
    "ClassificationVerdict",
    "classify_root_of_selfadjoint",
    "RangeCertificate",
    "numerical_range_contains_zero",
    "ZeroSquareReport",
    "check_zero_square",
    "sample_nilpotent",
    "commutator_identities",
    "NormalityReport",
    "normality_equivalence",
    "volterra_matrix",
    "exp_periodicity_residual",
]

# Margins closer to zero than this multiple of the base tolerance are not
# trusted as booleans; they yield "indeterminate" instead.
INDETERMINATE_FACTOR = 10.0

SYLVESTER_MAX_DIM = 32


class SingularSylvesterError(LinalgError):
    """The Sylvester system is singular: the spectra intersect."""


@dataclass(frozen=True)
class SylvesterProblem:
    """Data of the equation a @ X - X @ b = s."""

    a: np.ndarray
    b: np.ndarray
    s: np.ndarray


def spectra_disjoint(a, b, tol: Tolerances = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether two Hermitian matrices have disjoint spectra; returns the
    minimal eigenvalue gap alongside."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    la = hermitian_eigen(a, tol).eigenvalues
    lb = hermitian_eigen(b, tol).eigenvalues
    gap = float(np.min(np.abs(la[:, None] - lb[None, :])))
    gap_tol = tol.structural * (1.0 + fro(a) + fro(b))
    return gap > gap_tol, gap


def sylvester_solve(problem: SylvesterProblem, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Solve a @ X - X @ b = s by dense vectorization.

    The n^2 x n^2 system (I kron a - b^T kron I) vec X = vec s is solved with
    partial-pivoting elimination; capped at dim 32.  A singular or
    numerically singular system (intersecting spectra) raises
    SingularSylvesterError.
    """
    a = as_matrix(problem.a, "a")
    b = as_matrix(problem.b, "b")
    s = as_matrix(problem.s, "s")
    n = a.shape[0]
    if b.shape != a.shape or s.shape != a.shape:
        raise LinalgError("a, b, s must share one square dimension")
    if n > SYLVESTER_MAX_DIM:
        raise LinalgError(f"dense Sylvester solve capped at dim {SYLVESTER_MAX_DIM}")
    if is_hermitian(a, tol) and is_hermitian(b, tol):
        disjoint, gap = spectra_disjoint(a, b, tol)
        if not disjoint:
            raise SingularSylvesterError(
                f"spectra of a and b intersect (min gap {gap:.3e})"
            )
    eye = np.eye(n)
    K = np.kron(eye, a) - np.kron(b.T, eye)
    try:
        x = np.linalg.solve(K, s.flatten(order="F"))
    except np.linalg.LinAlgError as exc:
        raise SingularSylvesterError(f"singular Sylvester system: {exc}") from exc
    X = x.reshape((n, n), order="F")
    residual = fro(a @ X - X @ b - s)
    if residual > tol.residual * (1.0 + fro(s)):
        raise SingularSylvesterError(
            f"Sylvester system numerically singular: residual {residual:.3e}"
        )
    return X


# ---------------------------------------------------------------------------
# Numerical range
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RangeCertificate:
    """Membership of 0 in the numerical range, with a checkable witness.

    When 0 is excluded the witness is an angle theta with
    lambda_min(Re(e^{i theta} M)) = margin > 0.  When 0 is contained the
    witness is a unit vector x with |<Mx, x>| = witness_value ~ 0.
    """

    contains_zero: bool
    margin: float
    witness_angle: float | None = None
    witness_vector: np.ndarray | None = None
    witness_value: float | None = None
    indeterminate: bool = False


def _rotated_min(M: np.ndarray, theta: float, tol: Tolerances):
    H = 0.5 * (np.exp(1j * theta) * M + np.exp(-1j * theta) * M.conj().T)
    eig = hermitian_eigen(H, tol)
    x = eig.vectors[:, 0]
    return float(eig.eigenvalues[0]), x


def _quadratic_form(M: np.ndarray, x: np.ndarray) -> complex:
    return complex(x.conj() @ (M @ x))


def _hermitian_zero_witness(eig, tol: Tolerances) -> np.ndarray:
    lam = eig.eigenvalues
    V = eig.vectors
    i = int(np.argmin(np.abs(lam)))
    if abs(lam[i]) <= tol.structural:
        return V[:, i]
    lo, hi = float(lam[0]), float(lam[-1])
    # Mix extreme eigenvectors so the form's value interpolates to zero.
    t = np.clip(hi / (hi - lo), 0.0, 1.0) if hi > lo else 1.0
    return np.sqrt(t) * V[:, 0] + np.sqrt(1.0 - t) * V[:, -1]


def _pair_zero_witness(M: np.ndarray, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """Minimize |<My, y>| over unit y in span{x1, x2} by nested grid search.

    The compression of M to the span has a convex numerical range containing
    the form values at x1 and x2, so when the segment between them passes
    through 0 a zero of the form exists in the span.
    """
    u = x1 / np.linalg.norm(x1)
    v = x2 - (u.conj() @ x2) * u
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        return u
    v = v / nv
    muu = _quadratic_form(M, u)
    mvv = _quadratic_form(M, v)
    muv = complex(u.conj() @ (M @ v))
    mvu = complex(v.conj() @ (M @ u))

    a_lo, a_hi = 0.0, 0.5 * np.pi
    p_lo, p_hi = 0.0, 2.0 * np.pi
    best = (0.0, 0.0)
    for _ in range(12):
        alphas = np.linspace(a_lo, a_hi, 64)
        phis = np.linspace(p_lo, p_hi, 64)
        A, P = np.meshgrid(alphas, phis, indexing="ij")
        c, s = np.cos(A), np.sin(A)
        q = c * c * muu + s * s * mvv + c * s * (np.exp(1j * P) * muv + np.exp(-1j * P) * mvu)
        idx = np.unravel_index(np.argmin(np.abs(q)), q.shape)
        best = (float(A[idx]), float(P[idx]))
        da = (a_hi - a_lo) / 16.0
        dp = (p_hi - p_lo) / 16.0
        a_lo, a_hi = best[0] - da, best[0] + da
        p_lo, p_hi = best[1] - dp, best[1] + dp
    alpha, phi = best
    y = np.cos(alpha) * u + np.sin(alpha) * np.exp(1j * phi) * v
    return y / np.linalg.norm(y)


def numerical_range_contains_zero(
    M,
    tol: Tolerances = DEFAULT_TOL,
    grid: int = 720,
    refine_steps: int = 30,
) -> RangeCertificate:
    """Decide 0 in W(M) using convexity of the numerical range.

    0 is outside W(M) iff some rotation angle theta gives
    lambda_min(Re(e^{i theta} M)) > 0; the angle is found by a uniform sweep
    plus ternary refinement.  Hermitian input short-circuits to the interval
    test on the spectrum.  Best margins within the indeterminate band of zero
    are flagged rather than trusted.
    """
    M = as_matrix(M, "M")
    n = M.shape[0]
    band = tol.structural * (1.0 + fro(M))

    if is_hermitian(M, tol):
        eig = hermitian_eigen(0.5 * (M + M.conj().T), tol)
        lo, hi = float(eig.eigenvalues[0]), float(eig.eigenvalues[-1])
        margin = max(lo, -hi)  # distance by which the interval avoids 0
        if margin > band:
            theta = 0.0 if lo > 0 else np.pi
            return RangeCertificate(False, margin, witness_angle=theta)
        x = _hermitian_zero_witness(eig, tol)
        val = abs(_quadratic_form(M, x))
        return RangeCertificate(
            margin <= 0.0, margin, witness_vector=x, witness_value=val,
            indeterminate=abs(margin) <= band,
        )

    if n == 1:
        val = abs(complex(M[0, 0]))
        if val > band:
            theta = -np.angle(complex(M[0, 0]))
            return RangeCertificate(False, val, witness_angle=float(theta))
        return RangeCertificate(
            True, -val, witness_vector=np.ones(1, dtype=complex), witness_value=val
        )

    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    margins = np.empty(grid)
    vectors = np.empty((grid, n), dtype=complex)
    for j, th in enumerate(thetas):
        margins[j], vectors[j] = _rotated_min(M, float(th), tol)
    j_best = int(np.argmax(margins))

    # Ternary refinement of the best angle.
    step = 2.0 * np.pi / grid
    lo_t, hi_t = thetas[j_best] - step, thetas[j_best] + step
    best_theta, best_margin = float(thetas[j_best]), float(margins[j_best])
    for _ in range(refine_steps):
        t1 = lo_t + (hi_t - lo_t) / 3.0
        t2 = hi_t - (hi_t - lo_t) / 3.0
        m1, _ = _rotated_min(M, t1, tol)
        m2, _ = _rotated_min(M, t2, tol)
        if m1 >= m2:
            hi_t = t2
            if m1 > best_margin:
                best_theta, best_margin = t1, m1
        else:
            lo_t = t1
            if m2 > best_margin:
                best_theta, best_margin = t2, m2

    if best_margin > band:
        return RangeCertificate(False, best_margin, witness_angle=best_theta % (2 * np.pi))

    # 0 lies in (or on the boundary of) W(M): produce a vector witness from
    # the pair of boundary points whose chord passes closest to 0.
    w = np.array([_quadratic_form(M, vectors[j]) for j in range(grid)])
    d = w[:, None] - w[None, :]
    denom = np.abs(d) ** 2
    denom[denom == 0.0] = 1.0
    t = np.clip((w[:, None].conj() * d).real / denom, 0.0, 1.0)
    seg = np.abs(w[:, None] - t * d)
    a, b = np.unravel_index(int(np.argmin(seg)), seg.shape)
    x = _pair_zero_witness(M, vectors[a], vectors[b])
    val = abs(_quadratic_form(M, x))
    return RangeCertificate(
        best_margin <= 0.0,
        best_margin,
        witness_vector=x,
        witness_value=val,
        indeterminate=abs(best_margin) <= band,
    )


# ---------------------------------------------------------------------------
# Classifier for roots of self-adjoint matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationVerdict:
    """Outcome of the root classifier for T with T^2 Hermitian.

    case: selfadjoint_invertible | skew_invertible | inconclusive.
    evidence names the hypothesis that fired.  residual is the norm of the
    part the conclusion forces to vanish (Im T or Re T).  violation is set
    when a hypothesis held but the proved conclusion failed numerically.
    """

    case: str
    evidence: str
    residual: float | None
    system_residuals: tuple[float, float]
    violation: str | None = None


def classify_root_of_selfadjoint(
    T, C, tol: Tolerances = DEFAULT_TOL
) -> ClassificationVerdict:
    """Classify a square root T of a Hermitian matrix C.

    Checks, in order: disjointness of the spectra of Re T and -Re T (forces
    T self-adjoint and invertible), the dual on Im T (forces T skew), then
    the numerical-range hypotheses 0 not in W(Re T) / W(Im T).
    """
    T = as_matrix(T, "T")
    C = as_matrix(C, "C")
    require_hermitian(C, tol, "C")
    if fro(T @ T - C) > tol.residual * (1.0 + fro(C)):
        raise LinalgError("precondition T^2 = C fails beyond residual tolerance")
    parts = cartesian_parts(T, tol)
    A, B = parts.re, parts.im
    sys_res = (
        fro(A @ A - B @ B - C),
        fro(A @ B + B @ A),
    )
    scale = 1.0 + fro(T)
    small = tol.residual * scale
    inv_band = tol.structural * scale

    def invertible() -> bool:
        smin = hermitian_eigen(abs_op(T, tol), tol).eigenvalues[0]
        return float(smin) > inv_band

    disjoint_a, _ = spectra_disjoint(A, -A, tol)
    if disjoint_a:
        ok = fro(B) <= small and invertible()
        return ClassificationVerdict(
            case="selfadjoint_invertible",
            evidence="spectra_disjoint_re",
            residual=fro(B),
            system_residuals=sys_res,
            violation=None if ok else (
                "THEOREM VIOLATION: spectra of Re T and -Re T disjoint but "
                f"T is not a self-adjoint invertible root (||Im T|| = {fro(B):.3e})"
            ),
        )
    disjoint_b, _ = spectra_disjoint(B, -B, tol)
    if disjoint_b:
        ok = fro(A) <= small and invertible()
        return ClassificationVerdict(
            case="skew_invertible",
            evidence="spectra_disjoint_im",
            residual=fro(A),
            system_residuals=sys_res,
            violation=None if ok else (
                "THEOREM VIOLATION: spectra of Im T and -Im T disjoint but "
                f"T is not a skew invertible root (||Re T|| = {fro(A):.3e})"
            ),
        )
    rc_a = numerical_range_contains_zero(A, tol)
    if not rc_a.contains_zero and not rc_a.indeterminate:
        ok = fro(B) <= small
        return ClassificationVerdict(
            case="selfadjoint_invertible",
            evidence="numerical_range_re",
            residual=fro(B),
            system_residuals=sys_res,
            violation=None if ok else (
                "THEOREM VIOLATION: 0 not in W(Re T) but "
                f"||Im T|| = {fro(B):.3e} is not negligible"
            ),
        )
    rc_b = numerical_range_contains_zero(B, tol)
    if not rc_b.contains_zero and not rc_b.indeterminate:
        # Conclusion here is T = i Im T; reported as the skew case.
        ok = fro(A) <= small
        return ClassificationVerdict(
            case="skew_invertible",
            evidence="numerical_range_im",
            residual=fro(A),
            system_residuals=sys_res,
            violation=None if ok else (
                "THEOREM VIOLATION: 0 not in W(Im T) but "
                f"||Re T|| = {fro(A):.3e} is not negligible"
            ),
        )
    return ClassificationVerdict(
        case="inconclusive",
        evidence="none",
        residual=None,
        system_residuals=sys_res,
    )


# ---------------------------------------------------------------------------
# Nilpotents of order two
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroSquareReport:
    """Evidence collected for one matrix with T^2 = 0.

    hypotheses maps the four sign conditions on the Cartesian parts to
    'holds' / 'fails' / 'indeterminate'.  If any of them holds, T must be
    zero; otherwise a nonzero T must have indefinite Re and Im spectra.
    """

    norm_t: float
    square_norm: float
    system_residuals: tuple[float, float]
    hypotheses: dict
    conclusion_zero: bool
    re_margins: tuple[float, float]
    im_margins: tuple[float, float]
    re_indefinite: bool
    im_indefinite: bool
    violation: str | None = None


def _sign_status(lam_min: float, lam_max: float, band: float, mode: str) -> str:
    ind = INDETERMINATE_FACTOR * band
    value = lam_min if mode == "psd" else -lam_max
    if value >= -band:
        return "holds"
    if value >= -ind:
        return "indeterminate"
    return "fails"


def check_zero_square(T, tol: Tolerances = DEFAULT_TOL) -> ZeroSquareReport:
    """Check the nilpotent (T^2 = 0) consequences on one instance."""
    T = as_matrix(T, "T")
    square = T @ T
    scale2 = 1.0 + fro(T) ** 2
    square_norm = fro(square)
    if square_norm > tol.residual * scale2:
        raise LinalgError("precondition T^2 = 0 fails beyond residual tolerance")
    parts = cartesian_parts(T, tol)
    A, B = parts.re, parts.im
    sys_res = (fro(A @ A - B @ B), fro(A @ B + B @ A))
    la = hermitian_eigen(A, tol).eigenvalues
    lb = hermitian_eigen(B, tol).eigenvalues
    re_margins = (float(la[0]), float(la[-1]))
    im_margins = (float(lb[0]), float(lb[-1]))
    band = tol.structural * (1.0 + fro(T))
    ind = INDETERMINATE_FACTOR * band
    hypotheses = {
        "re_psd": _sign_status(*re_margins, band, "psd"),
        "re_nsd": _sign_status(*re_margins, band, "nsd"),
        "im_psd": _sign_status(*im_margins, band, "psd"),
        "im_nsd": _sign_status(*im_margins, band, "nsd"),
    }
    norm_t = fro(T)
    conclusion_zero = norm_t <= ind
    violation = None
    if any(v == "holds" for v in hypotheses.values()) and not conclusion_zero:
        violation = (
            "THEOREM VIOLATION: a sign hypothesis holds on a nonzero nilpotent "
            f"(||T|| = {norm_t:.3e}, hypotheses = {hypotheses})"
        )
    re_indefinite = re_margins[0] < -ind and re_margins[1] > ind
    im_indefinite = im_margins[0] < -ind and im_margins[1] > ind
    return ZeroSquareReport(
        norm_t=norm_t,
        square_norm=square_norm,
        system_residuals=sys_res,
        hypotheses=hypotheses,
        conclusion_zero=conclusion_zero,
        re_margins=re_margins,
        im_margins=im_margins,
        re_indefinite=re_indefinite,
        im_indefinite=im_indefinite,
        violation=violation,
    )


def sample_nilpotent(dim: int, seed: int = 0, canonical: bool = False) -> np.ndarray:
    """Deterministic order-two nilpotent: a strictly block upper-triangular
    2x2 block matrix conjugated by a random unitary.

    canonical=True skips the random rotation and uses an identity block
    (dim 2 gives [[0, 1], [0, 0]]).  dim 1 has only the zero nilpotent.
    """
    if not (isinstance(dim, (int, np.integer)) and dim >= 1):
        raise ValueError("dim must be a positive integer")
    if dim == 1:
        return np.zeros((1, 1), dtype=complex)
    k = (dim + 1) // 2
    m = dim // 2
    base = np.zeros((dim, dim), dtype=complex)
    if canonical:
        base[:k, k:] = np.eye(k, m)
        return base
    rng = np.random.default_rng(seed)
    base[:k, k:] = rng.standard_normal((k, m)) + 1j * rng.standard_normal((k, m))
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, _ = np.linalg.qr(G)
    return Q @ base @ Q.conj().T


def commutator_identities(T, tol: Tolerances = DEFAULT_TOL) -> tuple[float, float]:
    """Residuals of [C, B] = [A, D] and [A, C] = [B, D] where (A, B) are the
    Cartesian parts of T and (C, D) those of T^2.  Both vanish identically:
    expanding T^2 gives C = A^2 - B^2 and D = AB + BA, and substituting
    A^2 = B^2 + C (resp. B^2 = A^2 - C) into A^2 B - B A^2 = AD - DA yields
    the two brackets.  In particular BC = CB iff AD = DA, and AC = CA iff
    BD = DB."""
    T = as_matrix(T, "T")
    ab = cartesian_parts(T, tol)
    cd = cartesian_parts(T @ T, tol)
    A, B, C, D = ab.re, ab.im, cd.re, cd.im

    def comm(X, Y):
        return X @ Y - Y @ X

    return (
        fro(comm(C, B) - comm(A, D)),
        fro(comm(A, C) - comm(B, D)),
    )


# ---------------------------------------------------------------------------
# Normality biconditional under a sign-definite part
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalityReport:
    """Both sides of 'T normal iff AD = DA' (or the Im-part dual).

    applicable is 're', 'im', or None when neither Cartesian part of T is
    sign-definite.  agree is None when the instance is not applicable or
    either side sits in the indeterminate band.
    """

    applicable: str | None
    defect: float
    normal: bool
    commutation_residual: float | None
    commutes: bool | None
    agree: bool | None
    indeterminate: bool
    selfadjoint_clause_checked: bool
    violation: str | None = None


def _definite(lam: np.ndarray, band: float) -> bool:
    return float(lam[0]) >= -band or float(lam[-1]) <= band


def normality_equivalence(T, tol: Tolerances = DEFAULT_TOL) -> NormalityReport:
    """Evaluate the biconditional between normality of T and commutation of
    the sign-definite Cartesian part with Im T^2."""
    T = as_matrix(T, "T")
    parts = cartesian_parts(T, tol)
    A, B = parts.re, parts.im
    S = T @ T
    D = cartesian_parts(S, tol).im
    band = tol.structural * (1.0 + fro(T))
    la = hermitian_eigen(A, tol).eigenvalues
    lb = hermitian_eigen(B, tol).eigenvalues
    if _definite(la, band):
        applicable, part = "re", A
    elif _definite(lb, band):
        applicable, part = "im", B
    else:
        applicable, part = None, None

    adj = T.conj().T
    defect = fro(adj @ T - T @ adj)
    thr_n = tol.structural * (1.0 + fro(T) ** 2)
    normal = defect <= thr_n
    if applicable is None:
        return NormalityReport(
            applicable=None,
            defect=defect,
            normal=normal,
            commutation_residual=None,
            commutes=None,
            agree=None,
            indeterminate=False,
            selfadjoint_clause_checked=False,
        )

    cres = fro(part @ D - D @ part)
    thr_c = tol.structural * (1.0 + fro(T) ** 3)
    commutes = cres <= thr_c
    in_band = (
        thr_n < defect <= INDETERMINATE_FACTOR * thr_n
        or thr_c < cres <= INDETERMINATE_FACTOR * thr_c
    )
    agree = None if in_band else (normal == commutes)
    violation = None
    if agree is False:
        violation = (
            "THEOREM VIOLATION: normality and commutation disagree "
            f"(defect {defect:.3e}, [part, Im T^2] residual {cres:.3e})"
        )
    # Final clause: Hermitian T^2 plus a sign-definite part forces normality.
    clause_checked = fro(D) <= tol.structural * (1.0 + fro(S))
    if clause_checked and not normal and violation is None:
        violation = (
            "THEOREM VIOLATION: T^2 self-adjoint and a Cartesian part "
            f"sign-definite, yet T is not normal (defect {defect:.3e})"
        )
    return NormalityReport(
        applicable=applicable,
        defect=defect,
        normal=normal,
        commutation_residual=cres,
        commutes=commutes,
        agree=agree,
        indeterminate=in_band,
        selfadjoint_clause_checked=clause_checked,
        violation=violation,
    )


# ---------------------------------------------------------------------------
# Volterra discretization and exponential periodicity
# ---------------------------------------------------------------------------


def volterra_matrix(n: int) -> np.ndarray:
    """Trapezoid-consistent n x n discretization of (Vf)(x) = integral_0^x f.

    Entries 1/n below the diagonal and 1/(2n) on it.  Triangularity makes
    the spectral radius exactly 1/(2n); the real part is (1/(2n)) times the
    all-ones matrix, which is psd of rank one.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("n must be a positive integer")
    V = np.tril(np.full((n, n), 1.0 / n), -1)
    np.fill_diagonal(V, 1.0 / (2.0 * n))
    return V.astype(complex)


def exp_periodicity_residual(A, k: int, tol: Tolerances = DEFAULT_TOL) -> float:
    """|| e^{i(A + 2k pi I)} - e^{iA} ||_F for Hermitian A; zero in exact
    arithmetic for every integer k."""
    A = as_matrix(A, "A")
    if not isinstance(k, (int, np.integer)):
        raise ValueError("k must be an integer")
    shifted = A + 2.0 * np.pi * int(k) * np.eye(A.shape[0])
    return fro(expi(shifted, tol) - expi(A, tol))
