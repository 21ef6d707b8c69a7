import pytest

from torus_automata.core_ring import ReprParams
from torus_automata.presentation import Presentation


# Compiled presentations are immutable, so one instance per session is shared.
_CACHE: dict = {}


def presentation(p, q) -> Presentation:
    key = (tuple(p) if not isinstance(p, int) else (p,), q)
    if key not in _CACHE:
        _CACHE[key] = Presentation(ReprParams(p, q))
    return _CACHE[key]


@pytest.fixture(scope="session")
def pres13():
    return presentation(1, 3)


@pytest.fixture(scope="session")
def pres7():
    return presentation(7, -11)


@pytest.fixture(scope="session")
def pres_cubic():
    return presentation((1, 1), 5)
