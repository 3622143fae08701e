import os
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import settings

from knotconc.knotfile import load_knot
from knotconc.knots import Character
from knotconc.twisted import twisted_alexander

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

# reference middle coefficient of the chi_1 polynomial of 8_13, zeta^1 .. zeta^28
REFERENCE_C = [11, 2, 11, 1, 11, 2, 10, 3, 9, 4, 9, 5, 7, 6,
               6, 7, 5, 9, 4, 9, 3, 10, 2, 11, 1, 11, 2, 11]
# the same for chi_12
REFERENCE_C12 = [5, 11, 10, 4, 2, 6, 11, 9, 3, 1, 7, 11, 9, 2,
                 2, 9, 11, 7, 1, 3, 9, 11, 6, 2, 4, 10, 11, 5]


@lru_cache(maxsize=None)
def knot(name):
    return load_knot(DATA / name if name.endswith(".json") else name)


@lru_cache(maxsize=None)
def twisted_813(e, column=None):
    p = knot("8_13.json").group_presentation()
    return twisted_alexander(p, 2, Character(29, (e,), (29,)), column=column)


@pytest.fixture(scope="session")
def k813():
    return knot("8_13.json")


@pytest.fixture(scope="session")
def base813():
    return twisted_813(1)
