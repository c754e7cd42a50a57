import json
import random
import sys
from pathlib import Path

import pytest

BACKEND_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(BACKEND_DIR))

from algebra.cluster import a11_seed, a2_seed, markov_seed, rank1_seed  # noqa: E402
from config import settings  # noqa: E402


@pytest.fixture
def a11():
    return a11_seed()


@pytest.fixture
def markov():
    return markov_seed()


@pytest.fixture
def a2():
    return a2_seed()


@pytest.fixture
def rank1():
    return rank1_seed()


@pytest.fixture
def rng():
    return random.Random(settings.random_seed)


@pytest.fixture(scope="session")
def golden():
    return json.loads((BACKEND_DIR / "data" / "golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def seeds_dir():
    return BACKEND_DIR / "data" / "seeds"
