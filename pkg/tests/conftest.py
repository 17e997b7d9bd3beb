"""Shared fixtures: canonical small surfaces and a per-session build cache.

Fibrations are pure functions of (construction, genus), so one build per key
is shared across the whole run to keep the suite fast.
"""

import pytest

from lf_forge import ishikawa_fibration, johns_fibration, sphere_planar_fibration
from lf_forge.ribbon import RibbonGraph

_BUILDERS = {
    "johns": johns_fibration,
    "ishikawa": ishikawa_fibration,
    "sphere": lambda genus: sphere_planar_fibration(),
}


@pytest.fixture(scope="session")
def built():
    cache = {}

    def get(construction, genus):
        key = (construction, genus)
        if key not in cache:
            cache[key] = _BUILDERS[construction](genus)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def annulus():
    return RibbonGraph(("v",), ("e",), {"v": (("e", 0), ("e", 1))})


@pytest.fixture(scope="session")
def mobius():
    return RibbonGraph(("v",), ("e",), {"v": (("e", 0), ("e", 1))}, twists=("e",))


@pytest.fixture(scope="session")
def punctured_torus():
    # one vertex, two interleaved loops
    return RibbonGraph(("v",), ("a", "b"), {"v": (("a", 0), ("b", 0), ("a", 1), ("b", 1))})


@pytest.fixture(scope="session")
def pants():
    # two vertices joined by three parallel bands, far end reversed
    return RibbonGraph(
        ("u", "v"),
        ("e", "f", "g"),
        {"u": (("e", 0), ("f", 0), ("g", 0)), "v": (("g", 1), ("f", 1), ("e", 1))},
    )
