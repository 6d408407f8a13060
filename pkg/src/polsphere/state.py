"""Polarization states as block-diagonal collections of spin-sector density matrices.

A two-mode state seen through polarization measurements is the direct sum of
its photon-number sectors N = 2S. Each block is stored in the |S, m> basis with
m descending from +S to -S, where m = (n_H - n_V) / 2.
"""
import functools
import logging
import math
import types
from dataclasses import dataclass

import numpy as np

from .angular import displacement_matrix, projection_values
from .constants import BASIS_ORDER, COMPLEX_TYPE, HERMITIAN_TOLERANCE, NORMALIZATION_TOLERANCE, \
    PSD_TOLERANCE, REAL_TYPE, WEIGHTS_TOLERANCE
from .exceptions import PolSphereExceptionBadParameterValue, PolSphereExceptionInvalidState
from .half_integer import HalfInteger

logger = logging.getLogger(__name__)


class SectorDensityMatrix:
    """Density block rho^(S) of one spin sector.

    The block is validated once and then frozen: Hermiticity is restored exactly
    by symmetrization, the smallest eigenvalue must be >= -1e-10 * trace and the
    trace must be non-negative. The trace is the sector weight, so a block need
    not be normalized on its own.

    Example:
        >>> block = SectorDensityMatrix(1, np.diag([0, 1, 0]))
        >>> block.trace
        1.0
    """

    def __init__(self, spin, entries):
        """Validate and store a sector block.

        Args:
            spin: Spin S of the sector (half-integer-like)
            entries: (2S+1)x(2S+1) matrix in the m-descending basis

        Raises:
            PolSphereExceptionInvalidState: If shape, Hermiticity, trace or
                positivity is violated
        """
        self._spin = HalfInteger.spin(spin)
        matrix = np.array(entries, dtype=COMPLEX_TYPE)
        size = self._spin.dimension

        if matrix.shape != (size, size):
            raise PolSphereExceptionInvalidState(
                'shape', f'sector S={self._spin} needs a {size}x{size} matrix, got shape {matrix.shape}')

        if not np.all(np.isfinite(matrix)):
            raise PolSphereExceptionInvalidState('shape', f'sector S={self._spin} has non-finite entries')

        scale = max(1.0, float(np.max(np.abs(matrix))))
        asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
        if asymmetry > HERMITIAN_TOLERANCE * scale:
            raise PolSphereExceptionInvalidState(
                'hermitian', f'sector S={self._spin} deviates from Hermiticity by {asymmetry:.3g}')
        matrix = 0.5 * (matrix + matrix.conj().T)

        trace = float(np.trace(matrix).real)
        if trace < -NORMALIZATION_TOLERANCE:
            raise PolSphereExceptionInvalidState('trace', f'sector S={self._spin} has negative trace {trace:.3g}')
        trace = max(trace, 0.0)

        smallest = float(np.linalg.eigvalsh(matrix)[0])
        floor = PSD_TOLERANCE * (trace if trace > 0 else scale)
        if smallest < -floor:
            raise PolSphereExceptionInvalidState(
                'positive_semidefinite', f'sector S={self._spin} has eigenvalue {smallest:.3g}')

        matrix.flags.writeable = False
        self._matrix = matrix
        self._trace = trace

    @property
    def spin(self):
        return self._spin

    @property
    def matrix(self):
        """Read-only complex block in the m-descending basis."""
        return self._matrix

    @property
    def trace(self):
        """Sector weight Tr rho^(S)."""
        return self._trace

    @property
    def dimension(self):
        return self._spin.dimension

    @property
    def basis_order(self):
        return BASIS_ORDER

    @property
    def purity(self):
        """Tr[(rho^(S))^2] (not divided by the squared weight)."""
        return purity(self)

    def __repr__(self):
        return f'SectorDensityMatrix(S={self._spin}, trace={self._trace:.6g})'


def purity(sector):
    """Tr[rho^2] of a sector block.

    Args:
        sector: SectorDensityMatrix

    Returns:
        float
    """
    matrix = sector.matrix
    return float(np.vdot(matrix, matrix).real)


class PolarizationState:
    """Block-diagonal polarization state: an ordered map S -> SectorDensityMatrix.

    The sector traces must sum to 1. Sectors are kept in ascending S and the
    object is immutable; operations such as rotation return new states.

    Attributes:
        renormalization: Factor applied to the retained sectors when an
            infinite sector sum was truncated (1.0 otherwise)
    """

    def __init__(self, sectors, renormalization=1.0):
        """Build a state from validated sector blocks.

        Args:
            sectors: Mapping HalfInteger -> SectorDensityMatrix
            renormalization: Factor that was applied to reach unit trace

        Raises:
            PolSphereExceptionInvalidState: If the traces do not sum to 1
        """
        if not sectors:
            raise PolSphereExceptionInvalidState('normalization', 'a state needs at least one sector')

        ordered = dict(sorted(sectors.items(), key=lambda item: item[0].twice_value))
        total = math.fsum(block.trace for block in ordered.values())
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise PolSphereExceptionInvalidState(
                'normalization', f'sector traces sum to {total!r}, expected 1')

        self._sectors = types.MappingProxyType(ordered)
        self._renormalization = float(renormalization)

    @property
    def sectors(self):
        """Read-only mapping HalfInteger -> SectorDensityMatrix, ascending S."""
        return self._sectors

    @property
    def spins(self):
        return list(self._sectors.keys())

    @property
    def weights(self):
        """Mapping S -> Tr rho^(S)."""
        return {spin: block.trace for spin, block in self._sectors.items()}

    @property
    def max_spin(self):
        return max(self._sectors.keys())

    @property
    def renormalization(self):
        return self._renormalization

    def sector(self, spin):
        """Block of sector S, or None if the state has no such sector."""
        return self._sectors.get(HalfInteger.spin(spin))

    def __repr__(self):
        listed = ', '.join(f'{spin}: {block.trace:.6g}' for spin, block in self._sectors.items())
        return f'PolarizationState({{{listed}}})'


def make_state(blocks, renormalization=1.0):
    """Assemble a validated state from sector blocks.

    Normalization is never applied silently: the block traces must already
    sum to 1.

    Args:
        blocks: Iterable of SectorDensityMatrix with distinct spins
        renormalization: Recorded renormalization factor (1.0 for exact states)

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionInvalidState: On duplicate sectors or a trace sum != 1

    Example:
        >>> state = make_state([SectorDensityMatrix(0, [[1.0]])])
    """
    sectors = {}
    for block in blocks:
        if block.spin in sectors:
            raise PolSphereExceptionInvalidState('duplicate_sector', f'sector S={block.spin} given twice')
        sectors[block.spin] = block
    return PolarizationState(sectors, renormalization)


def pure_sector_state(spin, vector):
    """Projector |v><v| onto a unit vector of sector S as a one-sector state."""
    vector = np.asarray(vector, dtype=COMPLEX_TYPE)
    return make_state([SectorDensityMatrix(spin, np.outer(vector, vector.conj()))])


def _check_weights(weights, count):
    weights = np.asarray(weights, dtype=REAL_TYPE)
    if weights.ndim != 1 or len(weights) != count:
        raise PolSphereExceptionBadParameterValue(f'need {count} weights, got {weights.tolist()}')
    if count == 0:
        raise PolSphereExceptionBadParameterValue('cannot mix an empty list of states')
    if not np.all(np.isfinite(weights)) or np.any(weights < 0):
        raise PolSphereExceptionBadParameterValue(f'weights must be non-negative, got {weights.tolist()}')
    if abs(math.fsum(weights) - 1.0) > WEIGHTS_TOLERANCE:
        raise PolSphereExceptionBadParameterValue(f'weights must sum to 1, got {math.fsum(weights)!r}')
    return weights


def mix(states, weights):
    """Convex combination of states, summed sector by sector.

    Args:
        states: List of PolarizationState
        weights: Non-negative weights summing to 1

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionBadParameterValue: If weights are not a probability distribution
    """
    states = list(states)
    weights = _check_weights(weights, len(states))

    accumulated = {}
    for state, weight in zip(states, weights):
        if weight == 0:
            continue
        for spin, block in state.sectors.items():
            if spin in accumulated:
                accumulated[spin] = accumulated[spin] + weight * block.matrix
            else:
                accumulated[spin] = weight * block.matrix

    return make_state(SectorDensityMatrix(spin, matrix) for spin, matrix in accumulated.items())


@functools.lru_cache(maxsize=None)
def spin_matrices(spin):
    """Stokes operators S1, S2, S3 on sector S (Schwinger representation).

    S+ = S1 + i S2 = a_H^dag a_V raises m, and S3 = diag(m).

    Args:
        spin: Spin S

    Returns:
        tuple: (S1, S2, S3) read-only complex matrices in the m-descending basis
    """
    spin = HalfInteger.spin(spin)
    m_values = projection_values(spin)
    s = spin.value
    size = spin.dimension

    raising = np.zeros((size, size), dtype=COMPLEX_TYPE)
    for i in range(1, size):
        m = m_values[i]
        raising[i - 1, i] = math.sqrt(s * (s + 1) - m * (m + 1))
    lowering = raising.conj().T

    s1 = (raising + lowering) / 2
    s2 = (raising - lowering) / 2j
    s3 = np.diag(m_values).astype(COMPLEX_TYPE)
    for matrix in (s1, s2, s3):
        matrix.flags.writeable = False
    logger.debug('built spin matrices for S=%s', spin)
    return s1, s2, s3


@dataclass(frozen=True)
class StokesVector:
    """Mean Stokes vector <S1>, <S2>, <S3> (spin units, hbar = 1)."""

    s1: float
    s2: float
    s3: float

    def as_array(self):
        return np.array([self.s1, self.s2, self.s3], dtype=REAL_TYPE)

    @property
    def norm(self):
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class StokesUncertainty:
    """Total Stokes variance together with <N>/2, its lower bound."""

    variance: float
    half_photon_number: float

    @property
    def excess(self):
        """Variance above the bound; zero exactly for SU(2) coherent states."""
        return self.variance - self.half_photon_number

    def __float__(self):
        return self.variance


def _expectation(block, operator):
    return float(np.vdot(operator.conj().T, block.matrix).real)


def stokes_mean(state):
    """Mean Stokes vector: <S_k> = sum_S Tr(rho^(S) S_k^(S)).

    Args:
        state: PolarizationState

    Returns:
        StokesVector
    """
    totals = [[], [], []]
    for spin, block in state.sectors.items():
        for k, operator in enumerate(spin_matrices(spin)):
            totals[k].append(_expectation(block, operator))
    return StokesVector(*(math.fsum(values) for values in totals))


def stokes_second_moments(state):
    """Symmetrized second moments <(S_k S_l + S_l S_k) / 2>.

    Returns:
        numpy.ndarray: Real symmetric 3x3 matrix
    """
    moments = np.zeros((3, 3), dtype=REAL_TYPE)
    for spin, block in state.sectors.items():
        operators = spin_matrices(spin)
        for k in range(3):
            for l in range(k, 3):
                product = operators[k] @ operators[l]
                value = _expectation(block, 0.5 * (product + product.conj().T))
                moments[k, l] += value
                if l != k:
                    moments[l, k] += value
    return moments


def mean_photon_number(state):
    """<N> = sum_S 2S Tr rho^(S)."""
    return math.fsum(spin.twice_value * block.trace for spin, block in state.sectors.items())


def stokes_uncertainty(state):
    """Total Stokes variance Var S1 + Var S2 + Var S3.

    It is bounded below by <N>/2, with equality only for SU(2) coherent states.

    Args:
        state: PolarizationState

    Returns:
        StokesUncertainty: variance and <N>/2 (float() gives the variance)
    """
    means = stokes_mean(state).as_array()
    second = stokes_second_moments(state)
    variance = float(np.trace(second) - means @ means)
    return StokesUncertainty(variance=variance, half_photon_number=mean_photon_number(state) / 2)


def degree_of_polarization(state):
    """Classical degree of polarization |<S>| / (<N>/2); zero for the vacuum."""
    half_photon_number = mean_photon_number(state) / 2
    if half_photon_number == 0:
        return 0.0
    return stokes_mean(state).norm / half_photon_number


def rotation_matrix(theta, phi):
    """3x3 rotation of Stokes vectors matching the displacement D(theta, phi).

    R = Rz(phi) Ry(theta) Rz(-phi), so that <S>(D rho D^dag) = R <S>(rho).

    Returns:
        numpy.ndarray: Orthogonal 3x3 matrix
    """
    def rz(angle):
        c, s = math.cos(angle), math.sin(angle)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

    c, s = math.cos(theta), math.sin(theta)
    ry = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return rz(phi) @ ry @ rz(-phi)


def rotate_state(state, theta, phi):
    """Apply the Poincare-sphere displacement D(theta, phi) to every sector.

    Args:
        state: PolarizationState
        theta: Polar angle of the displacement (radians)
        phi: Azimuth of the displacement (radians)

    Returns:
        PolarizationState: New state with blocks D rho D^dag
    """
    blocks = []
    for spin, block in state.sectors.items():
        unitary = displacement_matrix(spin, theta, phi)
        blocks.append(SectorDensityMatrix(spin, unitary @ block.matrix @ unitary.conj().T))
    return make_state(blocks, state.renormalization)
