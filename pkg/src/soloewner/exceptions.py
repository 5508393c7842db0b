"""Exception and warning types shared across the package."""


class DataError(ValueError):
    """Invalid input data or configuration (bad sample sets, parse errors, bad flags)."""


class NumericalError(RuntimeError):
    """A computation failed for numerical reasons rather than bad input shape."""


class SingularPencilError(NumericalError):
    """A matrix pencil was singular (or numerically singular) at an evaluation point."""


class CollisionError(NumericalError):
    """Two interpolation points collide, directly or through the frequency map f."""


class RankDeficiencyWarning(UserWarning):
    """A projection basis or pencil lost rank beyond what the data should allow."""
