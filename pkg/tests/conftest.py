import numpy as np
import pytest

from spinkick import InteractionGeometry, KickSchedule, SingleModeThermal


def random_unit(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_geometry(rng, omega_max: float = 2.5) -> InteractionGeometry:
    return InteractionGeometry(
        h=random_unit(rng), alpha=random_unit(rng), omega=rng.uniform(0.0, omega_max)
    )


def random_schedule(rng, n_kicks: int, t_max: float = 4.0) -> KickSchedule:
    times = np.sort(rng.uniform(0.0, t_max, size=n_kicks))
    while np.any(np.diff(times) < 1e-3):
        times = np.sort(rng.uniform(0.0, t_max, size=n_kicks))
    return KickSchedule(times)


@pytest.fixture
def vacuum():
    return SingleModeThermal(omega=1.0)


@pytest.fixture
def standard_geometry():
    """h along z, coupling along x, unit gap: r(0) = x."""
    return InteractionGeometry(h=[0, 0, 1], alpha=[1, 0, 0], omega=1.0)
