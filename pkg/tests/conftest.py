import pytest

from lambertscatter import LambertBarrier, PhysicsConfig


@pytest.fixture(scope="session")
def physics():
    """Default units: m = 1/2, hbar = 1, so 2m/hbar^2 = 1 and k = sqrt(E)."""
    return PhysicsConfig()


@pytest.fixture(scope="session")
def barrier211():
    """The workhorse parameter set (E, v0, sigma) = (2, 1, 1) uses this barrier."""
    return LambertBarrier(v0=1.0, sigma=1.0)
