"""Input validation helpers used by the public API and the estimators."""

from __future__ import annotations

import numpy as np

from .exceptions import DataError


def as_complex_matrix(A, name: str) -> np.ndarray:
    """Coerce ``A`` to a 2-D read-only complex array, rejecting non-finite entries."""
    arr = np.array(A, dtype=complex, copy=True)
    if arr.ndim != 2:
        raise DataError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_square_matrix(A, name: str) -> np.ndarray:
    arr = as_complex_matrix(A, name)
    if arr.shape[0] != arr.shape[1]:
        raise DataError(f"{name} must be square, got shape {arr.shape}")
    return arr


def as_complex_vector(x, name: str) -> np.ndarray:
    """Coerce ``x`` to a 1-D read-only complex array of finite entries."""
    arr = np.atleast_1d(np.array(x, dtype=complex, copy=True))
    if arr.ndim != 1:
        raise DataError(f"{name} must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_column(x, name: str) -> np.ndarray:
    """Coerce ``x`` to an n-by-1 complex column."""
    arr = np.array(x, dtype=complex, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] != 1:
        raise DataError(f"{name} must be a column vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_row(x, name: str) -> np.ndarray:
    """Coerce ``x`` to a 1-by-n complex row."""
    arr = np.array(x, dtype=complex, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] != 1:
        raise DataError(f"{name} must be a row vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def check_distinct(points: np.ndarray, name: str) -> None:
    """Reject exact duplicates among complex points."""
    if len(np.unique(points)) != len(points):
        raise DataError(f"{name} must be pairwise distinct")


def check_fraction(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 < value < 1.0:
        raise DataError(f"{name} must lie in (0, 1), got {value}")
    return value
