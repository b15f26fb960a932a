import pytest

from hyperid.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(digits=30)


@pytest.fixture(scope="session")
def ctx40():
    return PrecisionContext(digits=40)
