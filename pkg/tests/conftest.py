import numpy as np
import pytest

import relwigner as rw


def normalized_sup(values, oracle):
    """Sup-norm deviation normalized by the sup of the oracle."""
    scale = np.max(np.abs(oracle))
    return float(np.max(np.abs(np.asarray(values) - np.asarray(oracle))) / scale)


@pytest.fixture(scope="session")
def uniform_traj():
    return rw.Trajectory(rw.ConstantProfile(1.0))


@pytest.fixture(scope="session")
def inertial_traj():
    return rw.Trajectory(rw.ConstantProfile(0.0))


@pytest.fixture(scope="session")
def twin_traj():
    return rw.Trajectory(rw.twin_profile(1.0))


@pytest.fixture(scope="session")
def thermal_grid_a1():
    """Vacuum grid for a = 1, shared by several tests."""
    traj = rw.Trajectory(rw.ConstantProfile(1.0))
    job = rw.VacuumJob(traj, np.linspace(-0.3, 0.3, 4), np.linspace(-4.0, 4.0, 64),
                       upsilon_max=36.0, n_upsilon=4096)
    return rw.vacuum_excess_wigner(job)
