"""mixture(components, weights)

Convex combination of polarization states.

Sectors: multiple"""
from ..state import mix


def get_state_out(components, weights):
    """Mix states with the given probabilities.

    Args:
        components: List of PolarizationState
        weights: Non-negative weights summing to 1

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionBadParameterValue: If the weights are not a distribution
    """
    return mix(components, weights)
