"""State-space realizations, transfer-function evaluation and structure-preserving projection.

Second-order systems are quintuples (M, D, K, B, C) with transfer function
``H(s) = C (s^2 M + s D + K)^{-1} B``; first-order systems are quadruples
(E, A, B, C) with ``H(s) = C (s E - A)^{-1} B``.  All realizations are
complex-valued; real systems are the special case of zero imaginary parts.
Values are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_column, as_complex_matrix, as_row, as_square_matrix
from .exceptions import DataError, RankDeficiencyWarning, SingularPencilError

#: Condition-number cap above which a pencil counts as numerically singular.
COND_LIMIT = 1.0 / np.finfo(float).eps

_RAYLEIGH_RTOL = 1e-12


@dataclass(frozen=True)
class DampingParams:
    """Proportional-damping coefficients: the damping matrix is ``alpha*M + beta*K``.

    ``alpha`` has dimension 1/time, ``beta`` has dimension time; both must be
    nonnegative.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        alpha = float(self.alpha)
        beta = float(self.beta)
        if not (np.isfinite(alpha) and np.isfinite(beta)):
            raise DataError("damping parameters must be finite")
        if alpha < 0.0 or beta < 0.0:
            raise DataError(f"damping parameters must be nonnegative, got ({alpha}, {beta})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class SecondOrderSystem:
    """Realization (M, D, K, B, C) of a SISO second-order system.

    When ``rayleigh`` is given, D must equal ``alpha*M + beta*K`` up to a
    relative Frobenius tolerance of 1e-12.
    """

    M: np.ndarray
    D: np.ndarray
    K: np.ndarray
    B: np.ndarray
    C: np.ndarray
    rayleigh: DampingParams | None = None

    def __post_init__(self):
        M = as_square_matrix(self.M, "M")
        D = as_square_matrix(self.D, "D")
        K = as_square_matrix(self.K, "K")
        B = as_column(self.B, "B")
        C = as_row(self.C, "C")
        n = M.shape[0]
        if n < 1:
            raise DataError("system order must be at least 1")
        if D.shape[0] != n or K.shape[0] != n or B.shape[0] != n or C.shape[1] != n:
            raise DataError(
                f"inconsistent dimensions: M is {M.shape}, D is {D.shape}, "
                f"K is {K.shape}, B is {B.shape}, C is {C.shape}"
            )
        if self.rayleigh is not None:
            p = self.rayleigh
            defect = np.linalg.norm(D - p.alpha * M - p.beta * K)
            if defect > _RAYLEIGH_RTOL * (np.linalg.norm(D) + 1.0):
                raise DataError(
                    f"damping matrix violates the proportional hypothesis: defect {defect:.3e}"
                )
        for field, value in (("M", M), ("D", D), ("K", K), ("B", B), ("C", C)):
            object.__setattr__(self, field, value)

    @property
    def order(self) -> int:
        return self.M.shape[0]


@dataclass(frozen=True)
class FirstOrderSystem:
    """Realization (E, A, B, C) of a SISO first-order descriptor system."""

    E: np.ndarray
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        E = as_square_matrix(self.E, "E")
        A = as_square_matrix(self.A, "A")
        B = as_column(self.B, "B")
        C = as_row(self.C, "C")
        n = E.shape[0]
        if n < 1:
            raise DataError("system order must be at least 1")
        if A.shape[0] != n or B.shape[0] != n or C.shape[1] != n:
            raise DataError(
                f"inconsistent dimensions: E is {E.shape}, A is {A.shape}, "
                f"B is {B.shape}, C is {C.shape}"
            )
        for field, value in (("E", E), ("A", A), ("B", B), ("C", C)):
            object.__setattr__(self, field, value)

    @property
    def order(self) -> int:
        return self.E.shape[0]


@dataclass(frozen=True)
class ProjectionBasis:
    """Two-sided projection matrices (V, W) used by Petrov-Galerkin reduction."""

    V: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        V = as_complex_matrix(self.V, "V")
        W = as_complex_matrix(self.W, "W")
        if V.shape != W.shape:
            raise DataError(f"V and W must have equal shapes, got {V.shape} and {W.shape}")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "W", W)


def rayleigh_damping(M, K, params: DampingParams) -> np.ndarray:
    """Return the proportional damping matrix ``alpha*M + beta*K``."""
    M = as_square_matrix(M, "M")
    K = as_square_matrix(K, "K")
    if M.shape != K.shape:
        raise DataError(f"M and K must have equal shapes, got {M.shape} and {K.shape}")
    return params.alpha * M + params.beta * K


def _solve_checked(P: np.ndarray, rhs: np.ndarray, s: complex, what: str) -> np.ndarray:
    cond = np.linalg.cond(P)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularPencilError(f"{what} is numerically singular at s={s} (cond={cond:.3e})")
    return np.linalg.solve(P, rhs)


def eval_so(sys: SecondOrderSystem, s: complex) -> complex:
    """Evaluate ``C (s^2 M + s D + K)^{-1} B`` by a direct solve."""
    s = complex(s)
    P = s * s * sys.M + s * sys.D + sys.K
    x = _solve_checked(P, sys.B, s, "second-order pencil")
    return complex((sys.C @ x).item())


def eval_fo(sys: FirstOrderSystem, s: complex) -> complex:
    """Evaluate ``C (s E - A)^{-1} B`` by a direct solve."""
    s = complex(s)
    P = s * sys.E - sys.A
    x = _solve_checked(P, sys.B, s, "first-order pencil")
    return complex((sys.C @ x).item())


def so_to_fo(sys: SecondOrderSystem) -> FirstOrderSystem:
    """Embed a second-order system into the equivalent block first-order form.

    The embedding doubles the order:
    ``E = [[I, 0], [0, M]]``, ``A = [[0, I], [-K, -D]]``, ``B = [0; B]``,
    ``C = [C, 0]``; its transfer function coincides with the second-order one
    at every non-pole point.
    """
    n = sys.order
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    E = np.block([[eye, zero], [zero, sys.M]])
    A = np.block([[zero, eye], [-sys.K, -sys.D]])
    B = np.vstack([np.zeros((n, 1), dtype=complex), sys.B])
    C = np.hstack([sys.C, np.zeros((1, n), dtype=complex)])
    return FirstOrderSystem(E, A, B, C)


def structure_preserving_project(
    sys: SecondOrderSystem,
    lambdas,
    mus,
) -> tuple[SecondOrderSystem, ProjectionBasis]:
    """Reduce ``sys`` by two-sided projection interpolating at the given points.

    The columns of V solve ``(l^2 M + l D + K) v = B`` for each right point
    ``l``, the columns of W solve the transposed pencils at the left points,
    and the reduced matrices are ``W^T M V`` etc. (plain transpose).  The
    reduced transfer function matches the original at every ``lambda`` and
    ``mu``.

    Parameters
    ----------
    sys : SecondOrderSystem
        Full-order system; this is the intrusive route that needs matrices.
    lambdas, mus : sequences of complex
        Right and left interpolation points, equal length, none a system pole.

    Returns
    -------
    (SecondOrderSystem, ProjectionBasis)
        The reduced system of order ``len(lambdas)`` and the basis used.
    """
    lams = np.atleast_1d(np.asarray(lambdas, dtype=complex))
    mus_ = np.atleast_1d(np.asarray(mus, dtype=complex))
    if lams.size != mus_.size:
        raise DataError(f"need equally many left and right points, got {lams.size} and {mus_.size}")
    if lams.size == 0:
        raise DataError("at least one interpolation point is required")

    n, ell = sys.order, lams.size
    V = np.empty((n, ell), dtype=complex)
    W = np.empty((n, ell), dtype=complex)
    for j, lam in enumerate(lams):
        P = lam * lam * sys.M + lam * sys.D + sys.K
        V[:, j] = _solve_checked(P, sys.B, lam, "second-order pencil")[:, 0]
    for j, mu in enumerate(mus_):
        P = (mu * mu * sys.M + mu * sys.D + sys.K).T
        W[:, j] = _solve_checked(P, sys.C.T, mu, "transposed second-order pencil")[:, 0]

    for name, basis in (("V", V), ("W", W)):
        svals = np.linalg.svd(basis, compute_uv=False)
        if svals[0] == 0.0 or svals[-1] <= 1e-13 * svals[0]:
            warnings.warn(f"projection basis {name} is numerically rank deficient",
                          RankDeficiencyWarning, stacklevel=2)

    Mh = W.T @ sys.M @ V
    Dh = W.T @ sys.D @ V
    Kh = W.T @ sys.K @ V
    Bh = W.T @ sys.B
    Ch = sys.C @ V
    reduced = SecondOrderSystem(Mh, Dh, Kh, Bh, Ch, rayleigh=sys.rayleigh)
    return reduced, ProjectionBasis(V, W)
