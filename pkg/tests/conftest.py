import functools
import os

import pytest

from galtower.cli.towerfile import parse_tower
from galtower.correspondence import Analysis, subfield_from_exprs
from galtower.tower import FieldTower

TOWERS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "towers")


def tower_path(name):
    return os.path.join(TOWERS, f"{name}.tower")


@functools.lru_cache(maxsize=None)
def load(name):
    tf = parse_tower(tower_path(name))
    T = FieldTower(tf.spec)
    subs = {n: subfield_from_exprs(T, e) for n, e in tf.subfields}
    return T, subs, Analysis(T)


@pytest.fixture(scope="session")
def mixed():
    return load("mixed")


@pytest.fixture(scope="session")
def nonmodular():
    return load("nonmodular")


@pytest.fixture(scope="session")
def kummer():
    return load("kummer")


@pytest.fixture(scope="session")
def nonnormal():
    return load("nonnormal")


@pytest.fixture(scope="session")
def galois():
    return load("galois")


@pytest.fixture(scope="session")
def pinsep():
    return load("pinsep")
