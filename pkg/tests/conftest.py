import random

import pytest

from aepv.group import TOY_PARAMS, generate_params
from aepv.hashing import StubHash


@pytest.fixture(scope="session")
def toy():
    return TOY_PARAMS


@pytest.fixture(scope="session")
def stub():
    """Hand-computable hash double: part-sum mod q, H(v) pinned to 7."""
    return StubHash(zp_star_value=7)


@pytest.fixture(scope="session")
def g512():
    return generate_params(512, 160, random.Random(0x5EED512))


@pytest.fixture(scope="session")
def g1024():
    return generate_params(1024, 160, random.Random(0x5EED1024))


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
