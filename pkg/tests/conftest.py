from fractions import Fraction

import pytest

from superfock.twisted import MirrorModule, SigmaModule
from superfock.vosa import TensorVosa, Vosa, calibrate_n2


@pytest.fixture(scope="session")
def V4():
    return Vosa(4)


@pytest.fixture(scope="session")
def V5():
    return Vosa(5)


@pytest.fixture(scope="session")
def tensor(V5):
    return TensorVosa(V5, 5)


@pytest.fixture(scope="session")
def n2(tensor):
    return calibrate_n2(tensor)


@pytest.fixture(scope="session")
def sigma(V5):
    return SigmaModule(V5, levels=6)


@pytest.fixture(scope="session")
def mirror(sigma, tensor, n2):
    return MirrorModule(sigma, tensor, n2)


@pytest.fixture(scope="session")
def sigma_deep(V5):
    # deep enough for the complete window-2 mirror bracket table
    return SigmaModule(V5, levels=9)


@pytest.fixture(scope="session")
def mirror_deep(sigma_deep, tensor, n2):
    return MirrorModule(sigma_deep, tensor, n2)
