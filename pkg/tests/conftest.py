import pytest

from cmlinv.cmfield import CMSetting
from cmlinv.linv import required_digits
from cmlinv.report import compute_bundle

# production runs use 60 digits and q^1000
TEST_PREC = 30
TEST_QMAX = 120


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size oracle or end-to-end runs")


@pytest.fixture(scope="session")
def setting():
    """(D, p, psi) = (39, 43, first order-4 character)"""
    return CMSetting.build(39, 43, (1,), TEST_PREC)


@pytest.fixture(scope="session")
def bundle(setting):
    return compute_bundle(setting, TEST_QMAX)


@pytest.fixture(scope="session")
def inv(bundle):
    return bundle.inv


@pytest.fixture(scope="session")
def need(setting):
    return required_digits(setting)
