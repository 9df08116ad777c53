import math

import pytest

from quiltlab.analysis import PoissonSolution, QuadratureSettings
from quiltlab.catalog import make_acw_quilt, make_maslov1_quilt


@pytest.fixture(scope="session")
def sol_pi4():
    return PoissonSolution(math.pi / 4)


@pytest.fixture(scope="session")
def sol_pi2():
    return PoissonSolution(math.pi / 2)


@pytest.fixture(scope="session")
def sol_pi4_tight():
    return PoissonSolution(math.pi / 4,
                           settings=QuadratureSettings(abs_tol=1e-11))


@pytest.fixture(scope="session")
def acw_plus():
    return make_acw_quilt(+1)


@pytest.fixture(scope="session")
def maslov1_pi4():
    return make_maslov1_quilt(math.pi / 4, 0, +1, +1)
