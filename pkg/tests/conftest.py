import math

import pytest

from hs_inscribe.ideal_polyhedron import generate_two_circle


@pytest.fixture(scope="session")
def pyramid():
    return generate_two_circle(1, 4, 2.0)


@pytest.fixture(scope="session")
def antiprism():
    return generate_two_circle(3, 3, 2.0, None, [math.pi / 3, math.pi, 5 * math.pi / 3])
