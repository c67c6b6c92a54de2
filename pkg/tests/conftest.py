import numpy as np
import pytest

from esdg.state import PrimitiveState


def random_primitives(rng, n, rho_range=(1e-6, 1e3), p_range=(1e-6, 1e3), umax=0.99):
    """Log-uniform density/pressure, isotropic velocity with |u| <= umax."""
    rho = 10.0 ** rng.uniform(np.log10(rho_range[0]), np.log10(rho_range[1]), n)
    p = 10.0 ** rng.uniform(np.log10(p_range[0]), np.log10(p_range[1]), n)
    speed = umax * rng.uniform(0.0, 1.0, n)
    angle = rng.uniform(0.0, 2.0 * np.pi, n)
    return PrimitiveState(rho=rho, ux=speed * np.cos(angle), uy=speed * np.sin(angle), p=p)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
