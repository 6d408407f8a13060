"""two_mode_coherent(alpha_h, alpha_v, trunc_eps=1e-12)

Polarization sector of the two-mode coherent state |alpha_h> x |alpha_v>.

Sectors: multiple"""
import cmath
import logging
import math

from ..angular import ln_factorial
from ..constants import DEFAULT_TRUNCATION_EPS, H_POLE_THETA, LN_FACTORIAL_TABLE_SIZE, V_POLE_THETA
from ..exceptions import PolSphereExceptionBadParameterValue
from ..half_integer import HalfInteger
from ..qfunction import coherent_amplitudes
from ..state import SectorDensityMatrix, make_state

logger = logging.getLogger(__name__)


def poisson_weight(n, mean):
    """Poisson probability exp(-mean) mean^n / n!, evaluated in log space."""
    if mean == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(-mean + n * math.log(mean) - ln_factorial(n))


def mode_angles(alpha_h, alpha_v):
    """Poincare-sphere point of the mode ratio.

    theta runs from V_POLE_THETA to H_POLE_THETA as atan2(|alpha_h|, |alpha_v|)
    runs from 0 to pi/2, so horizontal light sits on the m = +S pole.
    phi = arg(-alpha_v / alpha_h) mod 2 pi, or 0 when either amplitude vanishes.

    Returns:
        tuple: (theta, phi)
    """
    fraction = math.atan2(abs(alpha_h), abs(alpha_v)) / (math.pi / 2)
    theta = V_POLE_THETA + (H_POLE_THETA - V_POLE_THETA) * fraction
    if alpha_h == 0 or alpha_v == 0:
        return theta, 0.0
    return theta, cmath.phase(-alpha_v / alpha_h) % (2 * math.pi)


def get_state_out(alpha_h, alpha_v, trunc_eps=DEFAULT_TRUNCATION_EPS):
    """Build the block-diagonal projection of a two-mode coherent state.

    Sector N = 2S has Poisson weight exp(-|alpha|^2) |alpha|^(2N) / N! with
    |alpha|^2 = |alpha_h|^2 + |alpha_v|^2, and inside each sector the state is the
    SU(2) coherent state at mode_angles(alpha_h, alpha_v). Sectors are added until
    the remaining Poisson tail is provably below trunc_eps; the retained state is
    then renormalized and the factor is stored as state.renormalization.

    Args:
        alpha_h: Complex amplitude of the horizontal mode
        alpha_v: Complex amplitude of the vertical mode
        trunc_eps: Bound on the discarded weight, in (0, 1)

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionBadParameterValue: If trunc_eps is outside (0, 1)
    """
    if not 0 < trunc_eps < 1:
        raise PolSphereExceptionBadParameterValue(f'trunc_eps must be in (0, 1), got {trunc_eps}')
    alpha_h, alpha_v = complex(alpha_h), complex(alpha_v)
    mean = abs(alpha_h) ** 2 + abs(alpha_v) ** 2
    theta, phi = mode_angles(alpha_h, alpha_v)

    weights = []
    n = 0
    while True:
        weights.append(poisson_weight(n, mean))
        # tail after n is bounded by a geometric series once the ratio mean/(k+1) < 1
        ratio = mean / (n + 2)
        if ratio < 1:
            tail_bound = poisson_weight(n + 1, mean) / (1 - ratio)
            if tail_bound < trunc_eps:
                break
        n += 1
        if n > LN_FACTORIAL_TABLE_SIZE:
            raise PolSphereExceptionBadParameterValue(
                f'mean photon number {mean} needs more than {LN_FACTORIAL_TABLE_SIZE} sectors')

    kept = math.fsum(weights)
    renormalization = 1.0 / kept
    logger.info('two-mode coherent state: kept N=0..%d, discarded weight %.3g, renormalization %.17g',
                n, max(1.0 - kept, 0.0), renormalization)

    blocks = []
    for photons, weight in enumerate(weights):
        if weight == 0:
            continue
        amplitudes = coherent_amplitudes(HalfInteger(photons), theta, phi)
        blocks.append(SectorDensityMatrix(amplitudes.spin, weight * renormalization * amplitudes.projector))
    return make_state(blocks, renormalization)
