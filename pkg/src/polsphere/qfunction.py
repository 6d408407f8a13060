"""SU(2) Q function of polarization states.

Sector values come from the coherent-state overlap <S; theta, phi| rho^(S) |S; theta, phi>
or, equivalently, from the multipole expansion

    Q^(S) = sqrt(4 pi / (2S+1)) sum_K (-1)^K C^{SS}_{SS,K0} sum_q rho_Kq Y_Kq(theta, phi).

The (-1)^K and the unconjugated Y_Kq follow from the amplitude convention
amps(m) = d^S_{m,-S}(theta) exp(-i (S+m) phi); both routes are checked against
each other in the test suite. The total is Q = sum_S (2S+1)/(4 pi) Q^(S) and
integrates to 1 over the sphere.
"""
import functools
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .angular import cg_stretched, normalized_legendre_table, projection_values, spherical_harmonic_table, \
    wigner_small_d_column
from .constants import COMPLEX_TYPE, Q_CLAMP_TOLERANCE, REAL_TYPE
from .data_series import DataSeries
from .exceptions import PolSphereExceptionBadParameterValue, PolSphereExceptionConsistency, \
    PolSphereGridTooCoarseWarning
from .half_integer import HalfInteger
from .multipole import MultipoleTable, extract_multipoles

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoherentAmplitudes:
    """Components amps[i] = <S, m|S; theta, phi> with m = S - i."""

    spin: HalfInteger
    theta: float
    phi: float
    amps: np.ndarray

    @property
    def projector(self):
        """|S; theta, phi><S; theta, phi| as a complex matrix."""
        return np.outer(self.amps, self.amps.conj())


def coherent_amplitudes(spin, theta, phi):
    """SU(2) coherent state |S; theta, phi> = D(theta, phi) |S, -S>.

    amps(m) = d^S_{m,-S}(theta) exp(-i (S+m) phi). The state sits at theta = 0
    for |S, -S> and its mean Stokes vector is -S n(theta, phi).

    Args:
        spin: Spin S
        theta: Polar angle in [0, pi]
        phi: Azimuth

    Returns:
        CoherentAmplitudes

    Example:
        >>> np.abs(coherent_amplitudes(1, np.pi / 2, 0).amps)
        array([0.5       , 0.70710678, 0.5       ])
    """
    spin = HalfInteger.spin(spin)
    column = wigner_small_d_column(spin, -spin, theta)
    phases = np.exp(-1j * (spin.value + projection_values(spin)) * phi)
    amps = (column * phases).astype(COMPLEX_TYPE)
    amps.flags.writeable = False
    return CoherentAmplitudes(spin=spin, theta=float(theta), phi=float(phi), amps=amps)


def _clamp(value, context):
    """Clamp rounding residues just below zero; anything lower is a bug."""
    if value >= 0:
        return value
    if value > -Q_CLAMP_TOLERANCE:
        return 0.0
    raise PolSphereExceptionConsistency(f'{context} is negative: {value!r}')


def _clamp_array(values, context):
    lowest = float(np.min(values)) if values.size else 0.0
    if lowest <= -Q_CLAMP_TOLERANCE:
        raise PolSphereExceptionConsistency(f'{context} is negative: {lowest!r}')
    return np.maximum(values, 0.0)


def q_sector_direct(state, spin, theta, phi):
    """Sector Q function <S; theta, phi| rho^(S) |S; theta, phi>.

    Args:
        state: PolarizationState
        spin: Sector S (0.0 is returned if the state has no such sector)
        theta: Polar angle (radians)
        phi: Azimuth (radians)

    Returns:
        float
    """
    block = state.sector(spin)
    if block is None:
        return 0.0
    amps = coherent_amplitudes(block.spin, theta, phi).amps
    value = float(np.vdot(amps, block.matrix @ amps).real)
    return _clamp(value, f'Q^({block.spin}) at ({theta}, {phi})')


def q_total(state, theta, phi):
    """Total Q function sum_S (2S+1)/(4 pi) Q^(S)(theta, phi).

    Returns:
        float
    """
    return math.fsum(spin.dimension / (4 * math.pi) * q_sector_direct(state, spin, theta, phi)
                     for spin in state.spins)


def _stretched_weights(spin, rank):
    """(-1)^K C^{SS}_{SS,K0}, the kernel weight of order K in sector S."""
    sign = -1.0 if rank % 2 else 1.0
    return sign * cg_stretched(spin, rank)


def q_sector_via_multipoles(table, spin, theta, phi):
    """Sector Q function from the multipoles of sector S.

    Args:
        table: MultipoleTable covering K = 0..2S for sector S
        spin: Sector S (0.0 if the table has no such sector)
        theta: Polar angle (radians)
        phi: Azimuth (radians)

    Returns:
        float

    Raises:
        PolSphereExceptionIncompleteTable: If sector S is not covered up to 2S
    """
    spin = HalfInteger.spin(spin)
    if spin not in table.k_limits:
        return 0.0
    two_s = spin.twice_value
    table.require(spin, two_s)

    harmonics = spherical_harmonic_table(two_s, theta, phi)
    total = 0j
    for rank in range(two_s + 1):
        row = table.sector_row(spin, rank)
        total += _stretched_weights(spin, rank) * np.dot(row, harmonics[rank, two_s - rank:two_s + rank + 1])
    value = math.sqrt(4 * math.pi / spin.dimension) * total.real
    return _clamp(value, f'Q^({spin}) at ({theta}, {phi})')


def _as_table(source, rank):
    if isinstance(source, MultipoleTable):
        return source
    return extract_multipoles(source, k_max=rank)


def component_coefficients(table, rank):
    """c_q = sum_S sqrt((2S+1)/(4 pi)) (-1)^K C^{SS}_{SS,K0} rho_Kq^(S), q = -K..K."""
    coefficients = np.zeros(2 * rank + 1, dtype=COMPLEX_TYPE)
    for spin in table.spins:
        if spin.twice_value < rank:
            continue
        table.require(spin, rank)
        weight = math.sqrt(spin.dimension / (4 * math.pi)) * _stretched_weights(spin, rank)
        coefficients += weight * table.sector_row(spin, rank)
    return coefficients


def q_component(source, rank, theta, phi):
    """Component Q_K of the total Q function; sum_K Q_K = Q.

    Args:
        source: PolarizationState or MultipoleTable
        rank: Multipole order K >= 0
        theta: Polar angle (radians)
        phi: Azimuth (radians)

    Returns:
        float: Q_K(theta, phi) (may be negative for K > 0)

    Raises:
        PolSphereExceptionBadParameterValue: If K < 0
        PolSphereExceptionIncompleteTable: If a table misses order K of a sector with 2S >= K
    """
    if isinstance(rank, bool) or int(rank) != rank or rank < 0:
        raise PolSphereExceptionBadParameterValue(f'K must be a non-negative integer, got {rank}')
    rank = int(rank)
    table = _as_table(source, rank)
    coefficients = component_coefficients(table, rank)
    harmonics = spherical_harmonic_table(rank, theta, phi)[rank]
    return float(np.dot(coefficients, harmonics).real)


class QField(DataSeries):
    """Q function and its components Q_0..Q_Kmax sampled on a SphereGrid.

    Columns: theta, phi, weight, Q_total, Q_0, ..., Q_Kmax (one row per node).
    """

    def __init__(self, grid, k_max, metadata=None, **columns):
        self._k_max = int(k_max)
        self._grid = grid
        super().__init__(metadata=metadata, **columns)

    def column_types(self):
        types = {'theta': np.float64, 'phi': np.float64, 'weight': np.float64, 'Q_total': np.float64}
        types.update({f'Q_{rank}': np.float64 for rank in range(self._k_max + 1)})
        return types

    @property
    def REQUIRED_COLUMNS(self):
        return list(self.column_types().keys())

    @property
    def grid(self):
        return self._grid

    @property
    def k_max(self):
        return self._k_max

    @property
    def total(self):
        return self._data['Q_total']

    @property
    def components(self):
        """Mapping K -> Q_K node values for K <= k_max."""
        return {rank: self._data[f'Q_{rank}'] for rank in range(self._k_max + 1)}

    @property
    def remainder(self):
        """Q_total minus the exposed components (orders above k_max)."""
        exposed = np.sum([self._data[f'Q_{rank}'] for rank in range(self._k_max + 1)], axis=0)
        return self._data['Q_total'] - exposed


@functools.lru_cache(maxsize=16)
def _grid_legendre(grid, k_max):
    table = normalized_legendre_table(k_max, grid.thetas)
    table.flags.writeable = False
    logger.debug('cached Legendre table for %dx%d grid up to K=%d', grid.n_theta, grid.n_phi, k_max)
    return table


def _component_on_grid(coefficients, rank, legendre, phis):
    """Re sum_q c_q Y_Kq on the product grid, returned as (n_theta, n_phi)."""
    q_values = np.arange(-rank, rank + 1)
    signs = np.where((q_values < 0) & (q_values % 2 == 1), -1.0, 1.0)
    theta_part = legendre[:, rank, np.abs(q_values)] * signs[None, :]
    phase = np.exp(1j * np.outer(phis, q_values))
    return ((theta_part * coefficients[None, :]) @ phase.T).real


def evaluate_field(state, grid, k_max=None):
    """Sample Q and its components on every grid node.

    The total is resummed from all orders K <= 2 S_max; components are exposed
    for K <= k_max and the rest is available as QField.remainder.

    Args:
        state: PolarizationState
        grid: SphereGrid
        k_max: Highest exposed component (default 2 S_max)

    Returns:
        QField

    Raises:
        PolSphereExceptionConsistency: If the total drops below -1e-12 at a node
    """
    max_order = state.max_spin.twice_value
    if k_max is None:
        k_max = max_order
    if isinstance(k_max, bool) or int(k_max) != k_max or k_max < 0:
        raise PolSphereExceptionBadParameterValue(f'k_max must be a non-negative integer, got {k_max}')
    k_max = int(k_max)

    too_coarse = not grid.exact_for(2 * max_order)
    if too_coarse:
        message = (f'grid of exact degree {grid.exact_degree} cannot resolve Q^2 of a state '
                   f'with 2S_max={max_order} (needs {2 * max_order})')
        logger.warning(message)
        warnings.warn(message, PolSphereGridTooCoarseWarning, stacklevel=2)

    table = extract_multipoles(state)
    legendre = _grid_legendre(grid, max_order)

    orders = {}
    for rank in range(max(max_order, k_max) + 1):
        if rank > max_order:
            orders[rank] = np.zeros(grid.shape, dtype=REAL_TYPE)
            continue
        coefficients = component_coefficients(table, rank)
        orders[rank] = _component_on_grid(coefficients, rank, legendre, grid.phis)

    total = np.sum([orders[rank] for rank in range(max_order + 1)], axis=0).reshape(-1)
    total = _clamp_array(total, 'Q_total')

    columns = {
        'theta': grid.node_thetas,
        'phi': grid.node_phis,
        'weight': grid.weights,
        'Q_total': total,
    }
    columns.update({f'Q_{rank}': orders[rank].reshape(-1) for rank in range(k_max + 1)})

    metadata = {
        'n_theta': grid.n_theta,
        'n_phi': grid.n_phi,
        'exact_degree': grid.exact_degree,
        'grid_too_coarse': too_coarse,
        'k_max': k_max,
        'max_spin': str(state.max_spin),
        'renormalization': state.renormalization,
    }
    return QField(grid, k_max, metadata=metadata, **columns)


def q_on_grid_direct(state, grid):
    """Total Q at every node by the coherent-state overlap route (no multipoles).

    Returns:
        numpy.ndarray: Flattened node values
    """
    values = np.zeros(grid.size, dtype=REAL_TYPE)
    for spin, block in state.sectors.items():
        prefactor = spin.dimension / (4 * math.pi)
        for node, (theta, phi) in enumerate(zip(grid.node_thetas, grid.node_phis)):
            amps = coherent_amplitudes(spin, theta, phi).amps
            values[node] += prefactor * np.vdot(amps, block.matrix @ amps).real
    return _clamp_array(values, 'Q_total')
