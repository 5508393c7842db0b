"""Reference systems for tests and benchmarks.

Provides the small fixed demo system used throughout the test suite and two
seeded random generators: a dense random proportionally-damped system with
controlled conditioning, and a modal generator with log-spaced resonances
whose peak heights can be shaped, standing in for larger mechanical models
whose matrices are not shipped here.  All randomness comes from
``numpy.random.default_rng`` (PCG64), so fixed seeds reproduce bit-identical
systems across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DataError, NumericalError
from .systems import DampingParams, SecondOrderSystem, rayleigh_damping

_MAX_REDRAWS = 100
_EIG_GAP_RTOL = 1e-4


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a random proportionally-damped system.

    ``mass_range`` bounds the diagonal mass entries, ``stiffness_range`` the
    stiffness spectrum; both must stay at least 1e-3 away from zero so the
    generated pencils remain comfortably conditioned.
    """

    order: int
    params: DampingParams
    seed: int
    mass_range: tuple[float, float] = (0.5, 2.0)
    stiffness_range: tuple[float, float] = (0.25, 64.0)

    def __post_init__(self):
        if int(self.order) < 1:
            raise DataError(f"order must be at least 1, got {self.order}")
        object.__setattr__(self, "order", int(self.order))
        for name in ("mass_range", "stiffness_range"):
            lo, hi = getattr(self, name)
            lo, hi = float(lo), float(hi)
            if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
                raise DataError(f"{name} must be an increasing interval, got ({lo}, {hi})")
            if lo < 1e-3:
                raise DataError(f"{name} must stay above 1e-3, got lower bound {lo}")
            object.__setattr__(self, name, (lo, hi))


def demo_system() -> SecondOrderSystem:
    """Order-2 reference system: M = I, K = diag(1, 2), proportional damping (0.01, 0.02).

    Input and output vectors are ``B^T = C = [2, 3]``; the transfer function
    at s = 0 equals 8.5.
    """
    params = DampingParams(0.01, 0.02)
    M = np.eye(2, dtype=complex)
    K = np.diag([1.0, 2.0]).astype(complex)
    D = rayleigh_damping(M, K, params)
    B = np.array([[2.0], [3.0]], dtype=complex)
    C = np.array([[2.0, 3.0]], dtype=complex)
    return SecondOrderSystem(M, D, K, B, C, rayleigh=params)


def random_rayleigh_system(spec: GeneratorSpec) -> SecondOrderSystem:
    """Draw a dense random proportionally-damped system from the spec.

    M is diagonal SPD with entries in ``mass_range``; K is a random symmetric
    matrix rescaled so its spectrum fills ``stiffness_range``; B and C are
    dense with entries in [-1, 1].  Draws whose generalized (K, M) spectrum
    has near-duplicate eigenvalues are rejected and redrawn so the result is
    minimal; after 100 failed attempts the generator gives up.
    """
    n = spec.order
    lo_k, hi_k = spec.stiffness_range
    rng = np.random.default_rng(spec.seed)
    for _ in range(_MAX_REDRAWS):
        m_diag = rng.uniform(*spec.mass_range, n)
        G = rng.standard_normal((n, n))
        K0 = G.T @ G
        theta = np.linalg.eigvalsh(K0)
        if n > 1:
            scale = (hi_k - lo_k) / (theta[-1] - theta[0])
            K = scale * K0 + (lo_k - scale * theta[0]) * np.eye(n)
        else:
            K = np.array([[lo_k]])
        M = np.diag(m_diag)
        B = rng.uniform(-1.0, 1.0, (n, 1))
        C = rng.uniform(-1.0, 1.0, (1, n))
        if n > 1:
            # minimality needs distinct natural frequencies: check eig(K, M)
            inv_sqrt_m = np.diag(1.0 / np.sqrt(m_diag))
            freqs = np.linalg.eigvalsh(inv_sqrt_m @ K @ inv_sqrt_m)
            gaps = np.diff(freqs) / freqs[1:]
            if np.min(gaps) <= _EIG_GAP_RTOL:
                continue
        D = spec.params.alpha * M + spec.params.beta * K
        return SecondOrderSystem(M, D, K, B, C, rayleigh=spec.params)
    raise NumericalError(
        f"could not draw a system with separated natural frequencies in {_MAX_REDRAWS} attempts"
    )


def modal_rayleigh_system(
    order: int,
    params: DampingParams,
    band: tuple[float, float],
    seed: int,
    peak_exponent: float = 0.5,
    jitter: float = 0.02,
) -> SecondOrderSystem:
    """Modal proportionally-damped system with log-spaced resonances in ``band``.

    M is the identity and K is diagonal with natural frequencies log-spaced
    across ``band`` (with a small seeded jitter), so every mode is visible in
    that frequency window.  The modal input/output weights are
    ``(w_k * (alpha + beta * w_k^2)) ** peak_exponent`` with random signs:
    ``peak_exponent=0.5`` equalizes resonance-peak heights across the band,
    smaller values leave high-frequency peaks weaker, larger values boost
    them.  Stands in for large mechanical models whose matrices are not
    available.
    """
    if order < 1:
        raise DataError(f"order must be at least 1, got {order}")
    lo, hi = float(band[0]), float(band[1])
    if not (np.isfinite(lo) and np.isfinite(hi)) or not 0.0 < lo < hi:
        raise DataError(f"band must be an increasing positive interval, got ({lo}, {hi})")
    rng = np.random.default_rng(seed)
    wn = np.exp(np.linspace(np.log(lo), np.log(hi), order))
    if order > 1 and jitter > 0.0:
        wn = np.sort(wn * (1.0 + rng.uniform(-jitter, jitter, order)))
    M = np.eye(order, dtype=complex)
    K = np.diag(wn**2).astype(complex)
    D = params.alpha * M + params.beta * K
    weight = (wn * (params.alpha + params.beta * wn**2)) ** peak_exponent
    B = (rng.choice([-1.0, 1.0], order) * weight).reshape(-1, 1).astype(complex)
    C = (rng.choice([-1.0, 1.0], order) * weight).reshape(1, -1).astype(complex)
    return SecondOrderSystem(M, D, K, B, C, rayleigh=params)
