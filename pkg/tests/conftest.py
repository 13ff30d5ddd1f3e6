"""Shared fixtures: three hand-analyzed toy systems.

TOY1: B = [[1,0,1],[0,1,0]], columns 1-2 in [-2,2], column 3 in [-1,1].
      Losing column 3: lambda+/- = (2,2), r(C) = r(-C) = 1/3.
TOY2: B = [[1,-1]], column 1 in [-1,3], column 2 in [0,1].
      Losing column 2: lambda+/- = (1,3), r(C) = 1/2, r(-C) = 2/3.
TOY3: B = [[1,0,0.5,0],[0,1,0,0.5]], all columns in [-1,1], lost {3,4} (p=2).
"""

import numpy as np
import pytest

from resil.model import IntegratorSystem, split


@pytest.fixture
def toy1():
    return IntegratorSystem(
        name="TOY1",
        order=1,
        b_bar=np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
        u_min=np.array([-2.0, -2.0, -1.0]),
        u_max=np.array([2.0, 2.0, 1.0]),
    )


@pytest.fixture
def toy1_split(toy1):
    return split(toy1, 2)


@pytest.fixture
def toy2():
    return IntegratorSystem(
        name="TOY2",
        order=1,
        b_bar=np.array([[1.0, -1.0]]),
        u_min=np.array([-1.0, 0.0]),
        u_max=np.array([3.0, 1.0]),
    )


@pytest.fixture
def toy2_split(toy2):
    return split(toy2, 1)


@pytest.fixture
def toy3():
    return IntegratorSystem(
        name="TOY3",
        order=1,
        b_bar=np.array([[1.0, 0.0, 0.5, 0.0], [0.0, 1.0, 0.0, 0.5]]),
        u_min=-np.ones(4),
        u_max=np.ones(4),
    )


@pytest.fixture
def toy3_split(toy3):
    return split(toy3, (2, 3))
