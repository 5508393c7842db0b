"""Grid-search estimation of unknown damping parameters from held-out prediction error.

With unknown (alpha, beta) the data is split once into training and test
samples; for every grid cell a reduced model is identified from the training
data alone, and the cell is scored by the summed squared prediction error on
the test samples.  The grid minimizer is reported; cells where identification
fails are recorded with their failure cause and excluded from the argmin.
The non-convex continuous problem is out of scope by design.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import check_fraction
from .exceptions import DataError, NumericalError, RankDeficiencyWarning
from .loewner_so import build_so_loewner, identify_so_reduced
from .sampling import INTERLEAVE, SampleSet, partition, train_test_split
from .systems import DampingParams, eval_so

_DEFAULT_OBJECTIVE_TOL = 1e-8


@dataclass(frozen=True)
class ParamGrid:
    """Rectangular grid of candidate (alpha, beta) values.

    Values on each axis are strictly increasing and nonnegative; ``spacing``
    records how the axes were generated.
    """

    alpha_values: np.ndarray
    beta_values: np.ndarray
    spacing: str = "linear"

    def __post_init__(self):
        for name, vals in (("alpha_values", self.alpha_values), ("beta_values", self.beta_values)):
            arr = np.atleast_1d(np.asarray(vals, dtype=float))
            if arr.size == 0:
                raise DataError(f"{name} is empty")
            if not np.all(np.isfinite(arr)):
                raise DataError(f"{name} contains non-finite entries")
            if np.any(arr < 0.0):
                raise DataError(f"{name} must be nonnegative")
            if arr.size > 1 and not np.all(np.diff(arr) > 0.0):
                raise DataError(f"{name} must be strictly increasing")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.spacing not in ("linear", "log"):
            raise DataError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.alpha_values.size, self.beta_values.size

    @classmethod
    def from_ranges(
        cls,
        alpha_range: tuple[float, float],
        beta_range: tuple[float, float],
        shape: tuple[int, int] = (20, 20),
        spacing: str = "auto",
    ) -> "ParamGrid":
        """Build a grid over two ranges.

        ``spacing='auto'`` picks log spacing when either range spans at least
        two decades (damping coefficients commonly do), linear otherwise.
        Log spacing needs strictly positive endpoints.
        """

        def axis(lo: float, hi: float, count: int, mode: str) -> np.ndarray:
            if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
                raise DataError(f"invalid range ({lo}, {hi})")
            if count < 1:
                raise DataError(f"grid axis needs at least one value, got {count}")
            if count == 1:
                return np.array([lo], dtype=float)
            if mode == "log":
                if lo <= 0.0:
                    raise DataError("log spacing requires strictly positive endpoints")
                return np.logspace(math.log10(lo), math.log10(hi), count)
            return np.linspace(lo, hi, count)

        def pick(lo: float, hi: float) -> str:
            if spacing != "auto":
                return spacing
            return "log" if lo > 0.0 and hi / lo >= 100.0 else "linear"

        mode_a = pick(*alpha_range)
        mode_b = pick(*beta_range)
        # one spacing label for the whole grid; log wins when any axis is log
        mode = "log" if "log" in (mode_a, mode_b) else "linear"
        return cls(
            alpha_values=axis(*alpha_range, shape[0], mode_a),
            beta_values=axis(*beta_range, shape[1], mode_b),
            spacing=mode,
        )


@dataclass(frozen=True)
class SweepCell:
    """One evaluated grid cell: a parameter pair, its score and a status tag."""

    alpha: float
    beta: float
    objective: float
    status: str


@dataclass(frozen=True)
class SweepResult:
    """Outcome of a grid sweep: the minimizer and the full surface, row-major."""

    best_alpha: float
    best_beta: float
    best_objective: float
    surface: tuple[SweepCell, ...]
    split_seed: int


def objective(
    train: SampleSet,
    test: SampleSet,
    params: DampingParams,
    order: int | None = None,
    tol: float | None = None,
    partition_strategy: str = INTERLEAVE,
) -> float:
    """Summed squared test-prediction error of a model identified from training data.

    The training samples are partitioned, the second-order Loewner pencil is
    built at ``params`` and truncated (default: tolerance 1e-8, loose enough
    to tolerate mildly mis-specified parameters), and the identified model is
    evaluated at every test point.  Identification failures propagate as
    :class:`~soloewner.exceptions.NumericalError`.
    """
    if order is None and tol is None:
        tol = _DEFAULT_OBJECTIVE_TOL
    data = partition(train, partition_strategy)
    sd = build_so_loewner(data, params)
    model, _ = identify_so_reduced(sd, order=order, tol=tol)
    return float(sum(abs(eval_so(model, s) - v) ** 2 for s, v in zip(test.points, test.values)))


def grid_search(
    data: SampleSet,
    grid: ParamGrid,
    test_fraction: float = 0.2,
    seed: int = 0,
    order: int | None = None,
    tol: float | None = None,
    partition_strategy: str = INTERLEAVE,
) -> SweepResult:
    """Evaluate the objective over the whole grid and return the minimizer.

    One train/test split (fixed by ``seed``) is shared by all cells.  Cells
    are visited row-major (alpha outer, beta inner); ties keep the first
    minimizer in that order.  Failed cells carry a status tag naming the
    failure and never win the argmin; if every cell fails, the sweep itself
    fails.
    """
    check_fraction(test_fraction, "test_fraction")
    train, test = train_test_split(data, test_fraction, seed)
    cells: list[SweepCell] = []
    best: SweepCell | None = None
    with warnings.catch_warnings():
        # rank disagreements are routine at off-truth cells; the surface
        # already records per-cell outcomes
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        for alpha in grid.alpha_values:
            for beta in grid.beta_values:
                params = DampingParams(float(alpha), float(beta))
                try:
                    value = objective(train, test, params, order=order, tol=tol,
                                      partition_strategy=partition_strategy)
                    cell = SweepCell(params.alpha, params.beta, value, "ok")
                except NumericalError as exc:
                    cell = SweepCell(params.alpha, params.beta, float("nan"),
                                     _status_tag(exc))
                cells.append(cell)
                if cell.status == "ok" and (best is None or cell.objective < best.objective):
                    best = cell
    if best is None:
        raise NumericalError("no feasible grid cell: identification failed everywhere")
    return SweepResult(
        best_alpha=best.alpha,
        best_beta=best.beta,
        best_objective=best.objective,
        surface=tuple(cells),
        split_seed=seed,
    )


def _status_tag(exc: NumericalError) -> str:
    from .exceptions import CollisionError, SingularPencilError

    if isinstance(exc, CollisionError):
        return "collision"
    if isinstance(exc, SingularPencilError):
        return "singular-pencil"
    return "numerical-failure"
