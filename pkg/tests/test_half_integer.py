"""Tests for HalfInteger."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import polsphere as ps
from polsphere import HalfInteger
from polsphere.exceptions import PolSphereExceptionBadParameterValue


class TestConstruction:
    """Tests for building half-integers from various inputs."""

    @pytest.mark.parametrize('value, twice', [
        (0, 0), (1, 2), ('3/2', 3), ('1.5', 3), (2.5, 5), (Fraction(7, 2), 7), ('-1/2', -1), (' 2 ', 4),
    ])
    def test_from_value(self, value, twice):
        """Test accepted spellings of half-integers."""
        assert HalfInteger.from_value(value).twice_value == twice

    @pytest.mark.parametrize('value', ['1/3', 0.25, 'abc', True, None, '1/0'])
    def test_rejects_non_half_integers(self, value):
        """Test that values with 2j not integral are rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            HalfInteger.from_value(value)

    def test_spin_rejects_negative(self):
        """Test that spins must be non-negative."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            HalfInteger.spin('-1/2')

    def test_immutable(self):
        """Test that the doubled value cannot be reassigned."""
        spin = HalfInteger(3)
        with pytest.raises(AttributeError):
            spin.twice_value = 5


class TestProperties:
    """Tests for derived values and the projection basis."""

    def test_projections_descending(self):
        """Test that projections run from +S down to -S."""
        assert [str(m) for m in HalfInteger.spin('3/2').projections()] == ['3/2', '1/2', '-1/2', '-3/2']
        assert [str(m) for m in HalfInteger.spin(1).projections()] == ['1', '0', '-1']

    def test_index_of(self):
        """Test the m-descending basis index."""
        spin = HalfInteger.spin(2)
        assert spin.index_of(2) == 0
        assert spin.index_of(0) == 2
        assert spin.index_of(-2) == 4

    @pytest.mark.parametrize('projection', [3, '1/2'])
    def test_index_of_rejects_bad_projection(self, projection):
        """Test that |m| > S and wrong parity are rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            HalfInteger.spin(2).index_of(projection)

    def test_value_and_fraction(self):
        """Test float and exact views of the value."""
        spin = HalfInteger(5)
        assert spin.value == 2.5
        assert spin.fraction == Fraction(5, 2)
        assert spin.dimension == 6
        assert not spin.is_integer
        assert HalfInteger(4).is_integer

    def test_ordering_and_hashing(self):
        """Test comparisons against ints and use as dict keys."""
        assert HalfInteger(2) == 1
        assert HalfInteger(1) < 1
        assert sorted([HalfInteger(4), HalfInteger(1), HalfInteger(3)]) == [HalfInteger(1), HalfInteger(3),
                                                                           HalfInteger(4)]
        assert {HalfInteger(2): 'a'}[HalfInteger.from_value(1)] == 'a'

    @pytest.mark.parametrize('twice, plain', [(0, 0), (2, 1), (-4, -2), (3, Fraction(3, 2)), (-1, Fraction(-1, 2))])
    def test_hash_matches_equal_numbers(self, twice, plain):
        """Test that equal ints and Fractions hash alike, so they find sector keys."""
        value = HalfInteger(twice)
        assert value == plain
        assert hash(value) == hash(plain)
        assert plain in {value: 'sector'}

    def test_int_lookup_in_state_sectors(self):
        """Test `1 in state.sectors` for a spin-1 state."""
        state = ps.fock(1, 1)
        assert 1 in state.sectors
        assert Fraction(1, 2) not in state.sectors


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_arithmetic_matches_doubled_integers(a, b):
    """Test that addition and subtraction act on the doubled values."""
    assert (HalfInteger(a) + HalfInteger(b)).twice_value == a + b
    assert (HalfInteger(a) - HalfInteger(b)).twice_value == a - b
    assert (-HalfInteger(a)).twice_value == -a


@given(st.integers(0, 200))
def test_string_round_trip(twice):
    """Test that str() output parses back to the same value."""
    value = HalfInteger(twice)
    assert HalfInteger.from_value(str(value)) == value
    assert len(value.projections()) == value.dimension
