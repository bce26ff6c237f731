from fractions import Fraction

from hypothesis import given, strategies as st

from hodgeboundary.gaussq import GaussQ, I

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
gauss = st.builds(GaussQ, rationals, rationals)


def test_i_squared_is_minus_one():
    assert I * I == -1
    assert I ** 4 == 1
    assert I ** -1 == -I


def test_division_oracle():
    # (1 + 2i) / (3 - 4i) = (-5 + 10i) / 25
    assert GaussQ(1, 2) / GaussQ(3, -4) == GaussQ(Fraction(-1, 5), Fraction(2, 5))


def test_mixed_operands():
    assert GaussQ(1, 1) + 1 == GaussQ(2, 1)
    assert 2 * GaussQ(1, 1) == GaussQ(2, 2)
    assert Fraction(1, 2) - GaussQ(0, 1) == GaussQ(Fraction(1, 2), -1)
    assert 1 / GaussQ(0, 2) == GaussQ(0, Fraction(-1, 2))


def test_conjugate_norm_and_bool():
    z = GaussQ(3, -4)
    assert z.conjugate() == GaussQ(3, 4)
    assert z.norm2() == 25
    assert not GaussQ(0, 0)
    assert GaussQ(0, 1)
    assert complex(z) == 3 - 4j


def test_hash_matches_equal_rationals():
    assert hash(GaussQ(Fraction(2, 4))) == hash(GaussQ(Fraction(1, 2)))
    assert GaussQ(2) == 2


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


@given(gauss)
def test_norm_is_z_times_conjugate(z):
    assert z * z.conjugate() == GaussQ(z.norm2())
