# conftest.py
import os
import random

import pytest

from config import get_settings
from core import validate_polygon
from genbench import gen_random_ortho


def pytest_collection_modifyitems(config, items):
    if os.getenv("OVERLAP_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow suite; set OVERLAP_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def unit_square():
    return validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def l_shape():
    return validate_polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


@pytest.fixture
def square10():
    return validate_polygon([(0, 0), (10, 0), (10, 10), (0, 10)])


@pytest.fixture
def spiral():
    """Corridor winding inward from the bottom-left; monotone in neither direction."""
    return validate_polygon(
        [(0, 0), (6, 0), (6, 6), (0, 6), (0, 2), (4, 2), (4, 4), (3, 4), (3, 3), (1, 3), (1, 5), (5, 5), (5, 1), (0, 1)]
    )


@pytest.fixture
def h_shape():
    return validate_polygon(
        [(0, 0), (1, 0), (1, 1), (2, 1), (2, 0), (3, 0), (3, 3), (2, 3), (2, 2), (1, 2), (1, 3), (0, 3)]
    )


@pytest.fixture
def w_shape():
    """Three prongs on a bar; the left prong hooks over a pocket."""
    return validate_polygon(
        [(0, 0), (5, 0), (5, 4), (4, 4), (4, 1), (3, 1), (3, 2), (2, 2), (2, 1), (1, 1), (1, 3), (2, 3), (2, 4), (0, 4)]
    )


@pytest.fixture
def fresh_settings(monkeypatch):
    """Lets a test change OVERLAP_* variables; the settings cache is rebuilt around it."""
    get_settings.cache_clear()
    yield monkeypatch
    get_settings.cache_clear()


def random_pair(seed: int, n: int = 12, m: int = 8, coord_range: int = 24):
    rng = random.Random(seed)
    P = gen_random_ortho(rng.choice(range(4, n + 1, 2)), seed, coord_range)
    Q = gen_random_ortho(rng.choice(range(4, m + 1, 2)), seed + 7919, coord_range)
    return P, Q
