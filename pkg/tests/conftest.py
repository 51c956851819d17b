import pytest

from algebra.support_geometry import Direction
from shared.utils.text_io import parse_element

R_SOURCE = "X + 2*X^2*Y^3 + X^3*Y^6"
F_SOURCE = "-X*Y - X^2*Y^4"


@pytest.fixture
def R():
    """R = X + 2X^2Y^3 + X^3Y^6, whose square has mass five."""
    return parse_element(R_SOURCE)


@pytest.fixture
def F():
    return parse_element(F_SOURCE)


@pytest.fixture
def d31():
    return Direction(3, -1)


@pytest.fixture
def client():
    from fastapi.testclient import TestClient

    from main import app

    with TestClient(app) as test_client:
        yield test_client
