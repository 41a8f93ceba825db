import numpy as np
import pytest

from bchlab.codes import bch_from_cosets
from bchlab.gf2 import BinaryField, CyclicWord
from bchlab.wsearch import CheckSet


@pytest.fixture(scope="session")
def f4():
    return BinaryField(4)


@pytest.fixture(scope="session")
def f6():
    return BinaryField(6)


@pytest.fixture(scope="session")
def code15(f4):
    """The (15,7,5) code with g = x^8+x^7+x^6+x^4+1."""
    return bch_from_cosets(f4, [1, 3])


@pytest.fixture(scope="session")
def check15():
    """Weight-4 check b = x^11+x^3+x^2+1 of the (15,7) code."""
    return CyclicWord.from_support(15, [11, 3, 2, 0])


@pytest.fixture(scope="session")
def checkset15(check15):
    return CheckSet(words=[check15], weights=[4], delta_perp=4, exhaustive=True)


@pytest.fixture(scope="session")
def worked15(code15):
    """Transmitted word, weight-3 error, and received word of the worked chain."""
    c = CyclicWord.from_support(15, [14, 12, 11, 10, 9, 6, 4, 3, 1])
    e = CyclicWord.from_support(15, [14, 2, 0])
    return c, e, c ^ e


@pytest.fixture(scope="session")
def code63_c1(f6):
    """(63,31) code with 5 weight-10 checks."""
    return bch_from_cosets(f6, [5, 9, 11, 13, 21, 23, 27])


@pytest.fixture(scope="session")
def code63_24(f6):
    """(63,24,15) code with 35 weight-8 checks."""
    return bch_from_cosets(f6, [1, 3, 5, 7, 9, 11, 13])


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
