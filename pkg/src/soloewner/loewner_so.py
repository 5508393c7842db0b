"""Second-order Loewner pencil for Rayleigh-damped systems.

For known damping coefficients (alpha, beta) define the scalar maps

    d(s) = 1 + beta*s,   n(s) = s^2 + alpha*s,   f(s) = n(s) / d(s).

The second-order Loewner matrix and its shifted companion are

    Lso[i, j]   = (d(mu_i) v_i - d(lam_j) w_j) / (f(mu_i) - f(lam_j))
    Lso_s[i, j] = (n(mu_i) v_i - n(lam_j) w_j) / (f(mu_i) - f(lam_j))

with input/output vectors ``Bso = d(mu) * v`` and ``Cso = w * d(lam)``.
The realization ``(-Lso, -alpha*Lso + beta*Lso_s, Lso_s, Bso, Cso)`` then
interpolates all data, and redundant data is removed by the same two-sided
SVD truncation as in the classical framework.  Since f is two-to-one,
distinct points may still collide through f; construction checks for that.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    CollisionError,
    DataError,
    NumericalError,
    SingularPencilError,
)
from .loewner_fo import _truncation_bases, numerical_rank
from .sampling import PartitionedData
from .systems import COND_LIMIT, DampingParams, SecondOrderSystem

#: Relative threshold below which two f-images count as colliding.
F_COLLISION_RTOL = 1e-12


def scalar_maps(params: DampingParams, s: complex) -> tuple[complex, complex, complex]:
    """Evaluate ``(d(s), n(s), f(s))`` at a single point.

    Raises when ``s`` is the pole ``-1/beta`` of f.
    """
    s = complex(s)
    d = 1.0 + params.beta * s
    n = s * s + params.alpha * s
    if d == 0.0:
        raise NumericalError(f"point s={s} is the pole -1/beta of the frequency map f")
    return d, n, n / d


def _maps_vec(params: DampingParams, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    d = 1.0 + params.beta * pts
    n = pts * pts + params.alpha * pts
    bad = np.argwhere(d == 0.0)
    if bad.size:
        i = int(bad[0][0])
        raise NumericalError(f"point {pts[i]} is the pole -1/beta of the frequency map f")
    return d, n, n / d


@dataclass(frozen=True)
class SoLoewnerData:
    """Second-order Loewner pencil (Lso, Lso_s) with vectors Bso, Cso and its parameters."""

    Lso: np.ndarray
    Lso_s: np.ndarray
    Bso: np.ndarray
    Cso: np.ndarray
    params: DampingParams
    source: PartitionedData

    @property
    def size(self) -> int:
        return self.Lso.shape[0]


@dataclass(frozen=True)
class SvdTruncation:
    """Orthonormal truncation bases and the retained singular values."""

    Y: np.ndarray
    X: np.ndarray
    sigmas_row: np.ndarray
    sigmas_col: np.ndarray
    r: int


def build_so_loewner(data: PartitionedData, params: DampingParams) -> SoLoewnerData:
    """Assemble the second-order Loewner pencil for the given damping parameters.

    Besides requiring ``mu_i != lam_j``, the images under f must be separated:
    ``|f(mu_i) - f(lam_j)| > 1e-12 * (1 + |f(mu_i)|)``.  Purely imaginary
    conjugate pairs collide exactly when alpha = beta = 0, so the check is a
    hard precondition, not a numerical guard.
    """
    lam, w = data.lam, data.h_lam
    mu, v = data.mu, data.h_mu
    d_lam, n_lam, f_lam = _maps_vec(params, lam)
    d_mu, n_mu, f_mu = _maps_vec(params, mu)

    denom = f_mu[:, None] - f_lam[None, :]
    bad = np.argwhere(np.abs(denom) <= F_COLLISION_RTOL * (1.0 + np.abs(f_mu)[:, None]))
    if bad.size:
        i, j = bad[0]
        raise CollisionError(
            f"f-image collision between left point mu[{i}]={mu[i]} and "
            f"right point lam[{j}]={lam[j]}: f-values {f_mu[i]} and {f_lam[j]}"
        )

    Lso = ((d_mu * v)[:, None] - (d_lam * w)[None, :]) / denom
    Lso_s = ((n_mu * v)[:, None] - (n_lam * w)[None, :]) / denom
    Bso = (d_mu * v).reshape(-1, 1)
    Cso = (w * d_lam).reshape(1, -1)
    return SoLoewnerData(Lso=Lso, Lso_s=Lso_s, Bso=Bso, Cso=Cso, params=params, source=data)


def so_sylvester_residuals(sd: SoLoewnerData) -> tuple[float, float]:
    """Relative Frobenius residuals of the Sylvester-type identities of the pencil.

    With F, D, N denoting the diagonal matrices obtained by applying f, d, n
    to the point matrices, the construction satisfies

        Lso   F(Lam) - F(Mu) Lso   = 1 h_lam^T D(Lam) - D(Mu) h_mu 1^T
        Lso_s F(Lam) - F(Mu) Lso_s = 1 h_lam^T N(Lam) - N(Mu) h_mu 1^T

    identically; residuals are normalized by the right-hand-side norm plus one.
    """
    d = sd.source
    p = sd.params
    d_lam, n_lam, f_lam = _maps_vec(p, d.lam)
    d_mu, n_mu, f_mu = _maps_vec(p, d.mu)
    one = d.ones
    HLt = d.h_lam.reshape(1, -1)
    HM = d.h_mu.reshape(-1, 1)
    FL, FM = np.diag(f_lam), np.diag(f_mu)
    rhs1 = one @ HLt @ np.diag(d_lam) - np.diag(d_mu) @ HM @ one.T
    rhs2 = one @ HLt @ np.diag(n_lam) - np.diag(n_mu) @ HM @ one.T
    r1 = sd.Lso @ FL - FM @ sd.Lso - rhs1
    r2 = sd.Lso_s @ FL - FM @ sd.Lso_s - rhs2
    return (
        float(np.linalg.norm(r1) / (np.linalg.norm(rhs1) + 1.0)),
        float(np.linalg.norm(r2) / (np.linalg.norm(rhs2) + 1.0)),
    )


def _check_regular(sd: SoLoewnerData) -> None:
    """Require the evaluation pencil ``d(s) Lso_s - n(s) Lso`` to be invertible at all data points."""
    points = np.concatenate([sd.source.lam, sd.source.mu])
    for s in points:
        d, n, _ = scalar_maps(sd.params, s)
        P = d * sd.Lso_s - n * sd.Lso
        cond = np.linalg.cond(P)
        if not np.isfinite(cond) or cond > COND_LIMIT:
            raise SingularPencilError(
                f"second-order Loewner pencil is singular at data point s={s} (cond={cond:.3e})"
            )


def identify_so_exact(sd: SoLoewnerData) -> SecondOrderSystem:
    """Square (order = data size) Rayleigh-damped realization interpolating all data.

    Returns ``M = -Lso``, ``K = Lso_s``, ``D = alpha*M + beta*K``, ``B = Bso``,
    ``C = Cso``.  Requires the pencil to be regular at every data point, which
    fails when the data carries redundancy; truncate instead in that case.
    """
    _check_regular(sd)
    p = sd.params
    M = -sd.Lso
    K = sd.Lso_s
    D = p.alpha * M + p.beta * K
    return SecondOrderSystem(M, D, K, sd.Bso, sd.Cso, rayleigh=p)


def identify_so_reduced(
    sd: SoLoewnerData,
    order: int | None = None,
    tol: float | None = None,
) -> tuple[SecondOrderSystem, SvdTruncation]:
    """SVD-truncated Rayleigh-damped realization from redundant data.

    Y is taken from the compact SVD of ``[Lso  Lso_s]`` and X from that of
    ``[Lso; Lso_s]``; the model is ``M = -Y^H Lso X``, ``K = Y^H Lso_s X``,
    ``D = alpha*M + beta*K``, ``B = Y^H Bso``, ``C = Cso X``.  Exactly one of
    ``order`` (target dimension) and ``tol`` (relative rank tolerance) must
    be given.  At the exact rank the model interpolates the data; below it,
    it approximates.  If the row and column ranks disagree at ``tol``, the
    smaller is used and a warning is emitted.
    """
    if (order is None) == (tol is None):
        raise DataError("pass exactly one of order and tol")
    Y, X, s_row, s_col, r = _truncation_bases(sd.Lso, sd.Lso_s, order, tol)
    Yh = Y.conj().T
    p = sd.params
    M = -(Yh @ sd.Lso @ X)
    K = Yh @ sd.Lso_s @ X
    D = p.alpha * M + p.beta * K
    B = Yh @ sd.Bso
    C = sd.Cso @ X
    system = SecondOrderSystem(M, D, K, B, C, rayleigh=p)
    return system, SvdTruncation(Y=Y, X=X, sigmas_row=s_row, sigmas_col=s_col, r=r)


def estimate_order(sd: SoLoewnerData, tau: float = 1e-10) -> int:
    """Numerical rank of Lso: the order of the minimal Rayleigh interpolant."""
    return numerical_rank(sd.Lso, tau)


def _pair_transform(points: np.ndarray) -> np.ndarray:
    """Block-unitary matrix sending each conjugate pair {x, conj(x)} to sqrt(2)*(Re x, Im x).

    Real points map to themselves.  Raises when some nonreal point lacks its
    conjugate partner.
    """
    ell = points.size
    T = np.zeros((ell, ell), dtype=complex)
    inv = 1.0 / np.sqrt(2.0)
    index = {complex(p): i for i, p in enumerate(points)}
    done: set[int] = set()
    for i, p in enumerate(points):
        if i in done:
            continue
        p = complex(p)
        if p.imag == 0.0:
            T[i, i] = 1.0
            done.add(i)
            continue
        j = index.get(complex(np.conj(p)))
        if j is None or j in done:
            raise DataError(f"point {p} has no conjugate partner: data is not conjugate closed")
        T[i, i] = inv
        T[i, j] = inv
        T[j, i] = -1j * inv
        T[j, j] = 1j * inv
        done.update((i, j))
    return T


def _drop_imag(A: np.ndarray, name: str) -> np.ndarray:
    imag = np.linalg.norm(A.imag)
    if imag > 1e-9 * (1.0 + np.linalg.norm(A)):
        raise NumericalError(
            f"residual imaginary part of {name} after realification is too large ({imag:.3e})"
        )
    return A.real


def realify(sys: SecondOrderSystem, data: PartitionedData) -> SecondOrderSystem:
    """Turn a data-sized complex realization into an equivalent real one.

    Applies the conjugate-pair transform built from the left points to the
    rows and the one built from the right points to the columns; the transfer
    function is unchanged.  Requires conjugate-closed data with the pairs of
    each side co-located in that side, and a system whose dimension equals
    the per-side point count (the square realization of
    :func:`identify_so_exact`).
    """
    if sys.order != data.size:
        raise DataError(
            f"system order {sys.order} does not match the data size {data.size}; "
            "realification applies to the square data-sized realization"
        )
    T_mu = _pair_transform(data.mu)
    T_lam_h = _pair_transform(data.lam).conj().T
    M = _drop_imag(T_mu @ sys.M @ T_lam_h, "M")
    K = _drop_imag(T_mu @ sys.K @ T_lam_h, "K")
    B = _drop_imag(T_mu @ sys.B, "B")
    C = _drop_imag(sys.C @ T_lam_h, "C")
    if sys.rayleigh is not None:
        D = sys.rayleigh.alpha * M + sys.rayleigh.beta * K
    else:
        D = _drop_imag(T_mu @ sys.D @ T_lam_h, "D")
    return SecondOrderSystem(M, D, K, B, C, rayleigh=sys.rayleigh)


def realify_pencil(sd: SoLoewnerData) -> SoLoewnerData:
    """Realify the pencil itself so that truncated models come out real.

    Applies the same conjugate-pair transforms to Lso, Lso_s, Bso and Cso.
    Downstream SVD truncation of the transformed (real) pencil yields real
    reduced models directly.
    """
    T_mu = _pair_transform(sd.source.mu)
    T_lam_h = _pair_transform(sd.source.lam).conj().T
    return SoLoewnerData(
        Lso=_drop_imag(T_mu @ sd.Lso @ T_lam_h, "Lso"),
        Lso_s=_drop_imag(T_mu @ sd.Lso_s @ T_lam_h, "Lso_s"),
        Bso=_drop_imag(T_mu @ sd.Bso, "Bso"),
        Cso=_drop_imag(sd.Cso @ T_lam_h, "Cso"),
        params=sd.params,
        source=sd.source,
    )
