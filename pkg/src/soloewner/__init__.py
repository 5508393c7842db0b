"""Identification of Rayleigh-damped second-order systems from frequency samples.

The package builds classical and second-order Loewner matrix pencils from
transfer-function samples, identifies interpolating state-space realizations
(with SVD truncation for redundant data), and estimates unknown proportional
damping coefficients by grid search.  A scikit-learn style estimator API sits
on top of the functional core, and a CLI ties the pipeline together.
"""

from .benchgen import GeneratorSpec, demo_system, modal_rayleigh_system, random_rayleigh_system
from .estimators import FirstOrderLoewner, RayleighGridSearch, SecondOrderLoewner
from .exceptions import (
    CollisionError,
    DataError,
    NumericalError,
    RankDeficiencyWarning,
    SingularPencilError,
)
from .loewner_fo import (
    LoewnerPair,
    build_fo_loewner,
    estimate_so_order,
    fo_sylvester_residuals,
    identify_fo,
    numerical_rank,
)
from .loewner_so import (
    SoLoewnerData,
    SvdTruncation,
    build_so_loewner,
    estimate_order,
    identify_so_exact,
    identify_so_reduced,
    realify,
    realify_pencil,
    scalar_maps,
    so_sylvester_residuals,
)
from .paramfit import ParamGrid, SweepCell, SweepResult, grid_search, objective
from .sampling import (
    FrequencySample,
    PartitionedData,
    SampleSet,
    conjugate_close,
    partition,
    sample_transfer,
    train_test_split,
)
from .systems import (
    DampingParams,
    FirstOrderSystem,
    ProjectionBasis,
    SecondOrderSystem,
    eval_fo,
    eval_so,
    rayleigh_damping,
    so_to_fo,
    structure_preserving_project,
)

__version__ = "0.1.0"

__all__ = [
    "CollisionError",
    "DampingParams",
    "DataError",
    "FirstOrderLoewner",
    "FirstOrderSystem",
    "FrequencySample",
    "GeneratorSpec",
    "LoewnerPair",
    "NumericalError",
    "ParamGrid",
    "PartitionedData",
    "ProjectionBasis",
    "RankDeficiencyWarning",
    "RayleighGridSearch",
    "SampleSet",
    "SecondOrderLoewner",
    "SecondOrderSystem",
    "SingularPencilError",
    "SoLoewnerData",
    "SvdTruncation",
    "SweepCell",
    "SweepResult",
    "build_fo_loewner",
    "build_so_loewner",
    "conjugate_close",
    "demo_system",
    "estimate_order",
    "estimate_so_order",
    "eval_fo",
    "eval_so",
    "fo_sylvester_residuals",
    "grid_search",
    "identify_fo",
    "identify_so_exact",
    "identify_so_reduced",
    "modal_rayleigh_system",
    "numerical_rank",
    "objective",
    "partition",
    "random_rayleigh_system",
    "rayleigh_damping",
    "realify",
    "realify_pencil",
    "sample_transfer",
    "scalar_maps",
    "so_sylvester_residuals",
    "so_to_fo",
    "structure_preserving_project",
    "train_test_split",
]
