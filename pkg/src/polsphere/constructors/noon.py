"""noon(n, relative_phase=0.0)

NOON state (|n, 0> + exp(i phase) |0, n>) / sqrt(2) in sector S = n/2.

Sectors: single"""
import cmath
import math

import numpy as np

from ..constants import COMPLEX_TYPE
from ..exceptions import PolSphereExceptionBadParameterValue
from ..half_integer import HalfInteger
from ..state import pure_sector_state


def get_state_out(n, relative_phase=0.0):
    """Build the NOON state, a superposition of m = +S and m = -S.

    Its only coherences connect m = +S and m = -S, so besides the diagonal
    multipoles it carries the q = +-2S components of order K = 2S.

    Args:
        n: Photon number N >= 1
        relative_phase: Phase of the |0, N> component (radians)

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionBadParameterValue: If n is not a positive integer
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise PolSphereExceptionBadParameterValue(f'n must be a positive integer, got {n}')

    spin = HalfInteger(int(n))
    vector = np.zeros(spin.dimension, dtype=COMPLEX_TYPE)
    vector[0] = 1 / math.sqrt(2)
    vector[-1] = cmath.exp(1j * relative_phase) / math.sqrt(2)
    return pure_sector_state(spin, vector)
