import hypothesis
import numpy as np
import pytest

from nashfan.a3suite import a3_order, a3_semigroup
from nashfan.coeff import QQ
from nashfan.groebner import buchberger
from nashfan.nash import build_Jn
from nashfan.semigroup import Cone, dual_generators

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long running acceptance checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def a3():
    return a3_semigroup()


@pytest.fixture(scope="session")
def order(a3):
    return a3_order()


@pytest.fixture(scope="session")
def plane():
    return dual_generators(Cone.from_rays([(1, 0), (0, 1)]))


@pytest.fixture(scope="session")
def a1():
    return dual_generators(Cone.from_rays([(0, 1), (2, -1)]))


@pytest.fixture(scope="session")
def j1_basis(a3, order):
    return buchberger(build_Jn(a3, 1, QQ), order)
