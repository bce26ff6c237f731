from fractions import Fraction

import pytest

from hodgeboundary.gaussq import GaussQ
from hodgeboundary.symplin import SympSpace


@pytest.fixture
def S2():
    return SympSpace.standard(2)


@pytest.fixture
def S1():
    return SympSpace.standard(1)


def gq(re, im=0):
    """Shorthand for exact Gaussian rationals; strings allow 'p/q'."""
    return GaussQ(Fraction(re), Fraction(im))
