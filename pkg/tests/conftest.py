import importlib.resources
from fractions import Fraction

import pytest

from semistoch import load_experiment


def rod_path() -> str:
    return str(importlib.resources.files("semistoch").joinpath("data/rod.json"))


@pytest.fixture(scope="session")
def rod():
    return load_experiment(rod_path())


@pytest.fixture(scope="session")
def rod_f(rod):
    return rod.kernel("f")


@pytest.fixture(scope="session")
def rod_g(rod):
    return rod.kernel("g")


@pytest.fixture(scope="session")
def rod_c(rod):
    return rod.kernel("c")


@pytest.fixture(scope="session")
def rod_m(rod):
    return rod.prior("uniform")


def fr(text) -> Fraction:
    return Fraction(text)
