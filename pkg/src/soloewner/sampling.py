"""Frequency-sample containers, partitioning into left/right sets, and sampling helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_complex_vector, check_distinct, check_fraction
from .exceptions import DataError
from .systems import FirstOrderSystem, SecondOrderSystem, eval_fo, eval_so

_CONJ_RTOL = 1e-10

#: Recognized partition strategies.
INTERLEAVE = "interleave"
FIRST_HALF_RIGHT = "half"
STRATEGIES = (INTERLEAVE, FIRST_HALF_RIGHT)


@dataclass(frozen=True)
class FrequencySample:
    """One interpolation pair: a Laplace point and the measured transfer value."""

    point: complex
    value: complex


@dataclass(frozen=True)
class SampleSet:
    """Ordered collection of frequency samples with pairwise-distinct points."""

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        points = as_complex_vector(self.points, "points")
        values = as_complex_vector(self.values, "values")
        if points.size != values.size:
            raise DataError(f"{points.size} points but {values.size} values")
        check_distinct(points, "sample points")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.points.size

    def __iter__(self):
        for p, v in zip(self.points, self.values):
            yield FrequencySample(complex(p), complex(v))

    def __getitem__(self, i: int) -> FrequencySample:
        return FrequencySample(complex(self.points[i]), complex(self.values[i]))

    def subset(self, indices) -> "SampleSet":
        idx = np.asarray(indices, dtype=int)
        return SampleSet(self.points[idx], self.values[idx])

    @classmethod
    def from_pairs(cls, pairs) -> "SampleSet":
        pairs = list(pairs)
        return cls(np.array([p for p, _ in pairs], dtype=complex),
                   np.array([v for _, v in pairs], dtype=complex))


@dataclass(frozen=True)
class PartitionedData:
    """Right set (lam, h_lam) and left set (mu, h_mu) of an even sample split.

    ``lam``/``mu`` are the diagonals of the right/left point matrices; the
    value vectors hold the transfer data at those points.  No right point may
    equal a left point.
    """

    lam: np.ndarray
    h_lam: np.ndarray
    mu: np.ndarray
    h_mu: np.ndarray

    def __post_init__(self):
        lam = as_complex_vector(self.lam, "lam")
        h_lam = as_complex_vector(self.h_lam, "h_lam")
        mu = as_complex_vector(self.mu, "mu")
        h_mu = as_complex_vector(self.h_mu, "h_mu")
        if lam.size != h_lam.size or mu.size != h_mu.size or lam.size != mu.size:
            raise DataError("left and right sets must have equal, consistent sizes")
        if lam.size == 0:
            raise DataError("partition is empty")
        check_distinct(lam, "right points")
        check_distinct(mu, "left points")
        if np.intersect1d(lam, mu).size:
            raise DataError("a right point coincides with a left point")
        for field, value in (("lam", lam), ("h_lam", h_lam), ("mu", mu), ("h_mu", h_mu)):
            object.__setattr__(self, field, value)

    @property
    def size(self) -> int:
        """Number of points per side."""
        return self.lam.size

    @property
    def Lambda(self) -> np.ndarray:
        """Right points as a diagonal matrix."""
        return np.diag(self.lam)

    @property
    def Mu(self) -> np.ndarray:
        """Left points as a diagonal matrix."""
        return np.diag(self.mu)

    @property
    def ones(self) -> np.ndarray:
        return np.ones((self.size, 1), dtype=complex)


def partition(data: SampleSet, strategy: str = INTERLEAVE) -> PartitionedData:
    """Split samples into right/left interpolation sets.

    ``interleave`` sends odd positions (1st, 3rd, ...) to the right set and
    even positions to the left set; ``half`` sends the first half to the
    right set in order.  The sample count must be even.
    """
    if strategy not in STRATEGIES:
        raise DataError(f"unknown partition strategy {strategy!r}; choose from {STRATEGIES}")
    rho = len(data)
    if rho == 0 or rho % 2:
        raise DataError(f"odd sample count {rho}: partitioning needs an even number of samples")
    if strategy == INTERLEAVE:
        right, left = slice(0, rho, 2), slice(1, rho, 2)
    else:
        ell = rho // 2
        right, left = slice(0, ell), slice(ell, rho)
    return PartitionedData(
        lam=data.points[right], h_lam=data.values[right],
        mu=data.points[left], h_mu=data.values[left],
    )


def merge(data: PartitionedData, strategy: str = INTERLEAVE) -> SampleSet:
    """Inverse of :func:`partition`: reassemble the original sample order."""
    ell = data.size
    points = np.empty(2 * ell, dtype=complex)
    values = np.empty(2 * ell, dtype=complex)
    if strategy == INTERLEAVE:
        points[0::2], points[1::2] = data.lam, data.mu
        values[0::2], values[1::2] = data.h_lam, data.h_mu
    elif strategy == FIRST_HALF_RIGHT:
        points[:ell], points[ell:] = data.lam, data.mu
        values[:ell], values[ell:] = data.h_lam, data.h_mu
    else:
        raise DataError(f"unknown partition strategy {strategy!r}")
    return SampleSet(points, values)


def conjugate_close(data: SampleSet) -> SampleSet:
    """Append missing conjugate samples so the set is closed under conjugation.

    For each sample ``(s, v)`` with a nonreal point and no partner at
    ``conj(s)``, the sample ``(conj(s), conj(v))`` is appended after the
    originals.  If a partner is already present its value must agree with
    ``conj(v)`` to 1e-10 relative, otherwise the data is inconsistent.
    The operation is idempotent.
    """
    index = {complex(p): i for i, p in enumerate(data.points)}
    extra_p: list[complex] = []
    extra_v: list[complex] = []
    for p, v in zip(data.points, data.values):
        if p.imag == 0.0:
            continue
        q = complex(np.conj(p))
        j = index.get(q)
        if j is None:
            extra_p.append(q)
            extra_v.append(complex(np.conj(v)))
        else:
            expected = np.conj(v)
            if abs(data.values[j] - expected) > _CONJ_RTOL * (1.0 + abs(expected)):
                raise DataError(
                    f"conjugate-inconsistent data: value at {q} is {data.values[j]}, "
                    f"expected {expected}"
                )
    if not extra_p:
        return data
    return SampleSet(np.concatenate([data.points, extra_p]),
                     np.concatenate([data.values, extra_v]))


def train_test_split(data: SampleSet, test_fraction: float, seed: int) -> tuple[SampleSet, SampleSet]:
    """Deterministic pseudo-random split into training and test sets.

    The permutation is drawn from ``numpy.random.default_rng(seed)`` (PCG64,
    a portable generator with a frozen stream).  If the training count comes
    out odd, the final test sample in permutation order is moved back to
    training.  Both subsets preserve the original sample order.
    """
    check_fraction(test_fraction, "test_fraction")
    rho = len(data)
    if rho < 4:
        raise DataError(f"need at least 4 samples to split, got {rho}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(rho)
    n_test = int(round(test_fraction * rho))
    if (rho - n_test) % 2:
        n_test -= 1
    if n_test < 0:
        n_test = 0
    test_idx = np.sort(perm[:n_test])
    train_idx = np.sort(perm[n_test:])
    return data.subset(train_idx), data.subset(test_idx)


def sample_transfer(sys: SecondOrderSystem | FirstOrderSystem, points) -> SampleSet:
    """Evaluate a system's transfer function at the given points, in order."""
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    check_distinct(pts, "sample points")
    if isinstance(sys, SecondOrderSystem):
        values = [eval_so(sys, s) for s in pts]
    elif isinstance(sys, FirstOrderSystem):
        values = [eval_fo(sys, s) for s in pts]
    else:
        raise DataError(f"cannot sample object of type {type(sys).__name__}")
    return SampleSet(pts, np.asarray(values, dtype=complex))
