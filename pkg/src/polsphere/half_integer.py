"""HalfInteger: exact spins and spin projections stored as doubled integers."""
import functools
import numbers
from fractions import Fraction

from .exceptions import PolSphereExceptionBadParameterValue


@functools.total_ordering
class HalfInteger:
    """Exact half-integer value j in {..., -1/2, 0, 1/2, 1, 3/2, ...}.

    The value is stored as twice_value = 2j, so addition, comparison and the
    iteration m = S, S-1, ..., -S never touch floating point.

    Example:
        >>> spin = HalfInteger.from_value('3/2')
        >>> [str(m) for m in spin.projections()]
        ['3/2', '1/2', '-1/2', '-3/2']
    """

    __slots__ = ('twice_value',)

    def __init__(self, twice_value):
        """Initialize from the doubled value.

        Args:
            twice_value: Integer equal to 2j

        Raises:
            PolSphereExceptionBadParameterValue: If twice_value is not an integer
        """
        if isinstance(twice_value, bool) or not isinstance(twice_value, numbers.Integral):
            raise PolSphereExceptionBadParameterValue(
                f'twice_value must be an integer, got {twice_value!r}')
        object.__setattr__(self, 'twice_value', int(twice_value))

    def __setattr__(self, name, value):
        raise AttributeError('HalfInteger is immutable')

    @classmethod
    def from_value(cls, value):
        """Build a HalfInteger from an int, Fraction, float, string or HalfInteger.

        Floats are accepted only when 2*value is an exact integer; strings may be
        written as '3/2', '1.5' or '2'.

        Args:
            value: Value to convert

        Returns:
            HalfInteger

        Raises:
            PolSphereExceptionBadParameterValue: If value is not a half-integer
        """
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, bool):
            raise PolSphereExceptionBadParameterValue(f'not a half-integer: {value!r}')
        if isinstance(value, numbers.Integral):
            return cls(2 * int(value))
        try:
            exact = Fraction(value) if not isinstance(value, str) else Fraction(value.strip())
        except (ValueError, TypeError, ZeroDivisionError, OverflowError) as e:
            raise PolSphereExceptionBadParameterValue(f'not a half-integer: {value!r}') from e
        doubled = 2 * exact
        if doubled.denominator != 1:
            raise PolSphereExceptionBadParameterValue(f'not a half-integer: {value!r}')
        return cls(doubled.numerator)

    @classmethod
    def spin(cls, value):
        """Build a spin magnitude (value >= 0).

        Raises:
            PolSphereExceptionBadParameterValue: If value is negative or not a half-integer
        """
        result = cls.from_value(value)
        if result.twice_value < 0:
            raise PolSphereExceptionBadParameterValue(f'spin must be >= 0, got {result}')
        return result

    @property
    def value(self):
        """Float value (exact for every representable spin)."""
        return self.twice_value / 2

    @property
    def fraction(self):
        """Exact value as a Fraction."""
        return Fraction(self.twice_value, 2)

    @property
    def is_integer(self):
        return self.twice_value % 2 == 0

    @property
    def dimension(self):
        """Dimension 2S+1 of the spin-S representation."""
        return self.twice_value + 1

    def projections(self):
        """Projections m = S, S-1, ..., -S (the sector basis order).

        Returns:
            list[HalfInteger]
        """
        return [HalfInteger(t) for t in range(self.twice_value, -self.twice_value - 1, -2)]

    def index_of(self, projection):
        """Row/column index of the projection m in the m-descending basis.

        Raises:
            PolSphereExceptionBadParameterValue: If |m| > S or m has the wrong parity
        """
        projection = HalfInteger.from_value(projection)
        if abs(projection.twice_value) > self.twice_value or \
                (self.twice_value - projection.twice_value) % 2:
            raise PolSphereExceptionBadParameterValue(
                f'projection {projection} is not allowed for spin {self}')
        return (self.twice_value - projection.twice_value) // 2

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInteger(self.twice_value + other.twice_value)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInteger(self.twice_value - other.twice_value)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInteger(other.twice_value - self.twice_value)

    def __neg__(self):
        return HalfInteger(-self.twice_value)

    def __abs__(self):
        return HalfInteger(abs(self.twice_value))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.twice_value == other.twice_value

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.twice_value < other.twice_value

    def __hash__(self):
        # matches hash(int) and hash(Fraction) for equal values
        return hash(self.fraction)

    def __float__(self):
        return self.value

    def __str__(self):
        if self.is_integer:
            return str(self.twice_value // 2)
        return f'{self.twice_value}/2'

    def __repr__(self):
        return f'HalfInteger({self})'


def _coerce(value):
    if isinstance(value, HalfInteger):
        return value
    if isinstance(value, numbers.Integral) and not isinstance(value, bool):
        return HalfInteger(2 * int(value))
    if isinstance(value, Fraction):
        doubled = 2 * value
        if doubled.denominator == 1:
            return HalfInteger(doubled.numerator)
    return NotImplemented
