import numpy as np
import pytest

from soloewner import DampingParams, demo_system, sample_transfer


@pytest.fixture
def demo():
    return demo_system()


@pytest.fixture
def demo_params():
    return DampingParams(0.01, 0.02)


@pytest.fixture
def demo_samples(demo):
    """The 20 reference samples on the positive imaginary axis."""
    return sample_transfer(demo, 1j * np.logspace(-1, 1, 20))


def rel_err(a, b):
    """Relative deviation of a from reference b, guarded near zero."""
    return abs(a - b) / (1.0 + abs(b))
