import math

import numpy as np
import pytest

from innerfourier.core import catalog

PI = math.pi


@pytest.fixture(scope="session")
def k64():
    return np.arange(1, 65, dtype=float)


@pytest.fixture(scope="session")
def squarewave():
    return catalog("squarewave")
