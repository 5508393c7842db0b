"""Classical (first-order) Loewner pencil: construction, verification and identification.

Given partitioned data with right pairs ``(lam_j, w_j)`` and left pairs
``(mu_i, v_i)``, the Loewner matrix and its shifted companion are the divided
differences

    L[i, j]  = (v_i - w_j) / (mu_i - lam_j)
    Ls[i, j] = (mu_i v_i - lam_j w_j) / (mu_i - lam_j)

and ``(-L, -Ls, V, W)`` realizes a minimal interpolant when the pencil is
regular.  Redundant data is removed by a two-sided SVD truncation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_complex_matrix
from .exceptions import (
    CollisionError,
    DataError,
    NumericalError,
    RankDeficiencyWarning,
    SingularPencilError,
)
from .sampling import PartitionedData
from .systems import COND_LIMIT, FirstOrderSystem


@dataclass(frozen=True)
class LoewnerPair:
    """Loewner pencil (L, Ls) with the input/output data vectors V and W."""

    L: np.ndarray
    Ls: np.ndarray
    V: np.ndarray
    W: np.ndarray
    source: PartitionedData

    @property
    def size(self) -> int:
        return self.L.shape[0]


def build_fo_loewner(data: PartitionedData) -> LoewnerPair:
    """Assemble the classical Loewner pencil from partitioned data."""
    lam, w = data.lam, data.h_lam
    mu, v = data.mu, data.h_mu
    denom = mu[:, None] - lam[None, :]
    zero = np.argwhere(denom == 0.0)
    if zero.size:
        i, j = zero[0]
        raise CollisionError(f"left point mu[{i}] equals right point lam[{j}]: {mu[i]}")
    L = (v[:, None] - w[None, :]) / denom
    Ls = ((mu * v)[:, None] - (lam * w)[None, :]) / denom
    return LoewnerPair(L=L, Ls=Ls, V=v.reshape(-1, 1), W=w.reshape(1, -1), source=data)


def fo_sylvester_residuals(pair: LoewnerPair) -> tuple[float, float]:
    """Relative Frobenius residuals of the two Sylvester identities the pencil solves.

    The first couples L with the point matrices, the second couples Ls; both
    vanish identically for an exactly assembled pencil.  Each residual is
    normalized by the right-hand-side norm plus one.
    """
    d = pair.source
    Lam, Mu = d.Lambda, d.Mu
    one = d.ones
    HLt = d.h_lam.reshape(1, -1)
    HM = d.h_mu.reshape(-1, 1)
    rhs1 = HM @ one.T - one @ HLt
    rhs2 = Mu @ HM @ one.T - one @ HLt @ Lam
    r1 = Mu @ pair.L - pair.L @ Lam - rhs1
    r2 = Mu @ pair.Ls - pair.Ls @ Lam - rhs2
    return (
        float(np.linalg.norm(r1) / (np.linalg.norm(rhs1) + 1.0)),
        float(np.linalg.norm(r2) / (np.linalg.norm(rhs2) + 1.0)),
    )


def numerical_rank(A, tau: float) -> int:
    """Number of singular values exceeding ``tau`` times the largest one.

    The zero matrix has rank 0.  ``tau`` must lie strictly between 0 and 1.
    """
    if not 0.0 < tau < 1.0:
        raise DataError(f"relative rank tolerance must lie in (0, 1), got {tau}")
    A = as_complex_matrix(A, "A")
    svals = np.linalg.svd(A, compute_uv=False)
    if svals.size == 0 or svals[0] == 0.0:
        return 0
    return int(np.count_nonzero(svals > tau * svals[0]))


def estimate_so_order(pair: LoewnerPair, tau: float = 1e-10) -> int:
    """Half the numerical rank of L: the order of a second-order model fitting the data."""
    rank = numerical_rank(pair.L, tau)
    if rank % 2:
        raise NumericalError(
            f"Loewner rank {rank} is odd, inconsistent with second-order structure"
        )
    return rank // 2


def _truncation_bases(L: np.ndarray, Ls: np.ndarray, order: int | None, tol: float | None):
    """Shared SVD recipe: Y spans the columns of [L Ls], X the rows of [L; Ls]."""
    row = np.hstack([L, Ls])
    col = np.vstack([L, Ls])
    U1, s_row, _ = np.linalg.svd(row, full_matrices=False)
    _, s_col, V2h = np.linalg.svd(col, full_matrices=False)
    ell = L.shape[0]
    if order is not None:
        r = int(order)
        if not 1 <= r <= ell:
            raise DataError(f"truncation order must lie in [1, {ell}], got {r}")
    else:
        if not 0.0 < tol < 1.0:
            raise DataError(f"relative rank tolerance must lie in (0, 1), got {tol}")
        if s_row[0] == 0.0:
            raise NumericalError("cannot truncate a zero pencil")
        r_row = int(np.count_nonzero(s_row > tol * s_row[0]))
        r_col = int(np.count_nonzero(s_col > tol * s_col[0]))
        r = min(r_row, r_col)
        if r_row != r_col:
            warnings.warn(
                f"row rank {r_row} and column rank {r_col} disagree at tolerance {tol}; "
                f"truncating to {r}",
                RankDeficiencyWarning, stacklevel=3,
            )
        if r == 0:
            raise NumericalError("pencil has numerical rank 0 at the given tolerance")
    Y = U1[:, :r]
    X = V2h[:r, :].conj().T
    return Y, X, s_row[:r], s_col[:r], r


def identify_fo(pair: LoewnerPair, order: int | None = None, tol: float | None = None) -> FirstOrderSystem:
    """Identify a first-order interpolant from the Loewner pencil.

    With neither ``order`` nor ``tol`` the exact square realization
    ``(-L, -Ls, V, W)`` is returned after checking that ``Ls - s L`` is
    invertible at every data point.  Otherwise the pencil is compressed by
    the two-sided SVD truncation: to ``order`` columns, or to the numerical
    rank at relative tolerance ``tol``; with the exact rank the result still
    interpolates, with a smaller order it approximates.
    """
    if order is not None and tol is not None:
        raise DataError("pass at most one of order and tol")
    L, Ls = pair.L, pair.Ls
    if order is None and tol is None:
        points = np.concatenate([pair.source.lam, pair.source.mu])
        for s in points:
            P = Ls - s * L
            cond = np.linalg.cond(P)
            if not np.isfinite(cond) or cond > COND_LIMIT:
                raise SingularPencilError(
                    f"Loewner pencil is singular at data point s={s} (cond={cond:.3e})"
                )
        return FirstOrderSystem(E=-L, A=-Ls, B=pair.V, C=pair.W)

    Y, X, _, _, _ = _truncation_bases(L, Ls, order, tol)
    Yh = Y.conj().T
    return FirstOrderSystem(
        E=-(Yh @ L @ X),
        A=-(Yh @ Ls @ X),
        B=Yh @ pair.V,
        C=pair.W @ X,
    )
