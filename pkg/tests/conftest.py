import random
from pathlib import Path

import pytest

import config
from motive.scalar import LambdaConvention, default_convention, set_default_convention
from quivers.corpus import load_corpus

DATA_DIR = Path(__file__).with_name("data")
GOLDEN_DIR = Path(__file__).with_name("golden")


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=getattr(config, "TEST_SEED", 20240917),
                     help="seed for the randomized property tests")
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run the large exhaustive enumerations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture(autouse=True)
def restore_convention():
    before = default_convention()
    yield
    set_default_convention(before)


@pytest.fixture
def negative_convention():
    set_default_convention(LambdaConvention.NEGATIVE_HALF_LEFSCHETZ)
    return LambdaConvention.NEGATIVE_HALF_LEFSCHETZ


@pytest.fixture
def quantum():
    return load_corpus("q1_quantum")


@pytest.fixture
def jordan():
    return load_corpus("q1_jordan")


@pytest.fixture
def conifold():
    return load_corpus("conifold")


def golden(name: str) -> str:
    with (GOLDEN_DIR / name).open("r", encoding="utf-8") as file:
        return file.read()
