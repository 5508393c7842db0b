"""Scikit-learn style estimators wrapping the Loewner identification pipeline.

The estimators take complex sample points as ``X`` and complex transfer
values as ``y``; ``fit`` identifies a state-space model and ``predict``
evaluates its transfer function.  They follow the scikit-learn parameter
conventions (``get_params``/``set_params``/``clone`` work), but skip the
real-matrix input validators, which reject complex data.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import as_complex_vector
from .exceptions import DataError
from .loewner_fo import build_fo_loewner, identify_fo
from .loewner_so import build_so_loewner, identify_so_reduced, realify_pencil
from .paramfit import ParamGrid, grid_search
from .sampling import INTERLEAVE, SampleSet, conjugate_close, partition
from .systems import DampingParams, eval_fo, eval_so


def _sample_set(X, y) -> SampleSet:
    points = as_complex_vector(X, "X")
    values = as_complex_vector(y, "y")
    if points.size != values.size:
        raise DataError(f"X has {points.size} points but y has {values.size} values")
    return SampleSet(points, values)


def _check_fitted(estimator, attr: str) -> None:
    if not hasattr(estimator, attr):
        raise NotFittedError(
            f"This {type(estimator).__name__} instance is not fitted yet; call fit first."
        )


class SecondOrderLoewner(BaseEstimator):
    """Identify a Rayleigh-damped second-order model from frequency samples.

    Parameters
    ----------
    alpha, beta : float
        Proportional-damping coefficients of the model family.
    order : int, optional
        Target model order.  Mutually exclusive with ``tol``.
    tol : float, optional
        Relative rank tolerance for the SVD truncation (default 1e-10 when
        ``order`` is not given).
    partition : {"interleave", "half"}
        How samples are split into right/left interpolation sets.
    close_conjugates : bool
        Append missing conjugate samples before partitioning.
    real_output : bool
        Realify the pencil (needs conjugate-closed data with co-located
        pairs) so the identified matrices are real.

    Attributes
    ----------
    system_ : SecondOrderSystem
        The identified realization.
    order_ : int
        Its order.
    singular_values_ : ndarray
        Relative singular values of the row-concatenated pencil.
    data_ : PartitionedData
        The partitioned interpolation data used.
    loewner_ : SoLoewnerData
        The assembled pencil.
    truncation_ : SvdTruncation
        Bases and retained singular values of the truncation.
    """

    def __init__(
        self,
        alpha: float = 0.0,
        beta: float = 0.0,
        order: int | None = None,
        tol: float | None = None,
        partition: str = INTERLEAVE,
        close_conjugates: bool = False,
        real_output: bool = False,
    ):
        self.alpha = alpha
        self.beta = beta
        self.order = order
        self.tol = tol
        self.partition = partition
        self.close_conjugates = close_conjugates
        self.real_output = real_output

    def fit(self, X, y):
        data = _sample_set(X, y)
        if self.close_conjugates:
            data = conjugate_close(data)
        parted = partition(data, self.partition)
        params = DampingParams(self.alpha, self.beta)
        sd = build_so_loewner(parted, params)
        if self.real_output:
            sd = realify_pencil(sd)
        order, tol = self.order, self.tol
        if order is None and tol is None:
            tol = 1e-10
        system, trunc = identify_so_reduced(sd, order=order, tol=tol)
        svals = np.linalg.svd(np.hstack([sd.Lso, sd.Lso_s]), compute_uv=False)
        self.data_ = parted
        self.loewner_ = sd
        self.truncation_ = trunc
        self.system_ = system
        self.order_ = system.order
        self.singular_values_ = svals / svals[0] if svals[0] else svals
        return self

    def predict(self, X) -> np.ndarray:
        _check_fitted(self, "system_")
        points = as_complex_vector(X, "X")
        return np.array([eval_so(self.system_, s) for s in points], dtype=complex)


class FirstOrderLoewner(BaseEstimator):
    """Identify an unstructured first-order model from frequency samples.

    Baseline companion to :class:`SecondOrderLoewner`.  With neither
    ``order`` nor ``tol`` the square exact interpolant is returned; otherwise
    the pencil is SVD-truncated.
    """

    def __init__(
        self,
        order: int | None = None,
        tol: float | None = None,
        partition: str = INTERLEAVE,
        close_conjugates: bool = False,
    ):
        self.order = order
        self.tol = tol
        self.partition = partition
        self.close_conjugates = close_conjugates

    def fit(self, X, y):
        data = _sample_set(X, y)
        if self.close_conjugates:
            data = conjugate_close(data)
        parted = partition(data, self.partition)
        pair = build_fo_loewner(parted)
        system = identify_fo(pair, order=self.order, tol=self.tol)
        svals = np.linalg.svd(np.hstack([pair.L, pair.Ls]), compute_uv=False)
        self.data_ = parted
        self.loewner_ = pair
        self.system_ = system
        self.order_ = system.order
        self.singular_values_ = svals / svals[0] if svals[0] else svals
        return self

    def predict(self, X) -> np.ndarray:
        _check_fitted(self, "system_")
        points = as_complex_vector(X, "X")
        return np.array([eval_fo(self.system_, s) for s in points], dtype=complex)


class RayleighGridSearch(BaseEstimator):
    """Estimate unknown damping parameters by grid search, then refit.

    ``fit`` splits the samples once (ratio ``test_fraction``, seeded), scores
    every (alpha, beta) grid cell by held-out prediction error, and refits a
    :class:`SecondOrderLoewner` on all samples at the winning cell.

    Attributes
    ----------
    best_alpha_, best_beta_ : float
        Grid minimizer.
    best_objective_ : float
        Its held-out squared error.
    sweep_ : SweepResult
        Full surface with per-cell status.
    estimator_ : SecondOrderLoewner
        Final model refitted on all samples.
    """

    def __init__(
        self,
        alpha_range: tuple[float, float] = (1e-3, 10.0),
        beta_range: tuple[float, float] = (1e-5, 1.0),
        grid_shape: tuple[int, int] = (20, 20),
        spacing: str = "auto",
        test_fraction: float = 0.2,
        seed: int = 0,
        order: int | None = None,
        tol: float | None = None,
        partition: str = INTERLEAVE,
        close_conjugates: bool = False,
    ):
        self.alpha_range = alpha_range
        self.beta_range = beta_range
        self.grid_shape = grid_shape
        self.spacing = spacing
        self.test_fraction = test_fraction
        self.seed = seed
        self.order = order
        self.tol = tol
        self.partition = partition
        self.close_conjugates = close_conjugates

    def fit(self, X, y):
        data = _sample_set(X, y)
        if self.close_conjugates:
            data = conjugate_close(data)
        grid = ParamGrid.from_ranges(self.alpha_range, self.beta_range,
                                     shape=self.grid_shape, spacing=self.spacing)
        sweep = grid_search(
            data, grid,
            test_fraction=self.test_fraction,
            seed=self.seed,
            order=self.order,
            tol=self.tol,
            partition_strategy=self.partition,
        )
        final = SecondOrderLoewner(
            alpha=sweep.best_alpha,
            beta=sweep.best_beta,
            order=self.order,
            tol=self.tol,
            partition=self.partition,
        )
        final.fit(data.points, data.values)
        self.sweep_ = sweep
        self.best_alpha_ = sweep.best_alpha
        self.best_beta_ = sweep.best_beta
        self.best_objective_ = sweep.best_objective
        self.estimator_ = final
        self.system_ = final.system_
        return self

    def predict(self, X) -> np.ndarray:
        _check_fitted(self, "estimator_")
        return self.estimator_.predict(X)
