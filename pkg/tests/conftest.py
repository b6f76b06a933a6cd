import pytest

from bcortho import ExplicitPoly, HallLittlewood, Koornwinder


@pytest.fixture(scope="session")
def character_spec():
    """Both reduced c-functions identically 1 (cutoff degree 0)."""
    return ExplicitPoly((1,), (1,))


@pytest.fixture(scope="session")
def hl_spec():
    return HallLittlewood("1/3", "1/2", "-1/4")


@pytest.fixture(scope="session")
def kw_spec():
    return Koornwinder("1/2", "1/3", "1/2", "-1/3", "1/4", "-1/5")
