"""fock(n_h, n_v)

Two-mode Fock state |n_h, n_v> as the pure sector state |S, m>.

Sectors: single"""
import numpy as np

from ..constants import COMPLEX_TYPE
from ..exceptions import PolSphereExceptionBadParameterValue
from ..half_integer import HalfInteger
from ..state import SectorDensityMatrix, make_state


def get_state_out(n_h, n_v):
    """Build the Fock state |n_h, n_v>.

    The photon numbers map to S = (n_h + n_v) / 2 and m = (n_h - n_v) / 2, so the
    state is the projector onto a single basis vector of one sector.

    Args:
        n_h: Photons in the horizontal mode
        n_v: Photons in the vertical mode

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionBadParameterValue: If a photon number is negative or not an integer

    Example:
        >>> state = ps.fock(1, 1)   # the two-photon state |1, 0>
    """
    for name, value in (('n_h', n_h), ('n_v', n_v)):
        if isinstance(value, bool) or int(value) != value or value < 0:
            raise PolSphereExceptionBadParameterValue(f'{name} must be a non-negative integer, got {value}')

    spin = HalfInteger(int(n_h) + int(n_v))
    projection = HalfInteger(int(n_h) - int(n_v))
    matrix = np.zeros((spin.dimension, spin.dimension), dtype=COMPLEX_TYPE)
    index = spin.index_of(projection)
    matrix[index, index] = 1.0
    return make_state([SectorDensityMatrix(spin, matrix)])
