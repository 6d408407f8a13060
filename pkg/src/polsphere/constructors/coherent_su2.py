"""coherent_su2(spin, theta=0.0, phi=0.0)

SU(2) coherent state |S; theta, phi> in a single sector.

Sectors: single"""
from ..qfunction import coherent_amplitudes
from ..state import pure_sector_state


def get_state_out(spin, theta=0.0, phi=0.0):
    """Build the SU(2) coherent projector |S; theta, phi><S; theta, phi|.

    The amplitudes are the ones the Q function uses, so Q of this state peaks
    at (theta, phi) with value 1 in its sector.

    Args:
        spin: Spin S
        theta: Polar angle in [0, pi] (default: 0, the state |S, -S>)
        phi: Azimuth in [0, 2 pi)

    Returns:
        PolarizationState
    """
    amplitudes = coherent_amplitudes(spin, theta, phi)
    return pure_sector_state(amplitudes.spin, amplitudes.amps)
