"""Irreducible tensor operators, state multipoles and their inverse expansion.

rho_Kq^(S) = Tr[rho^(S) T_Kq^(S)^dag] and rho^(S) = sum_Kq rho_Kq^(S) T_Kq^(S).
"""
import functools
import logging
import math
from dataclasses import dataclass

import numpy as np

from .angular import clebsch_gordan
from .constants import COMPLEX_TYPE, MULTIPOLE_ZERO_TOLERANCE
from .data_series import MultipoleRecords
from .exceptions import PolSphereExceptionBadParameterValue, PolSphereExceptionIncompleteTable
from .half_integer import HalfInteger
from .state import SectorDensityMatrix, make_state

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TensorOperator:
    """T_Kq^(S) as a read-only (2S+1)x(2S+1) matrix in the m-descending basis."""

    spin: HalfInteger
    rank: int
    q: int
    matrix: np.ndarray


def _check_order(spin, rank, q=0):
    if isinstance(rank, bool) or int(rank) != rank or not 0 <= rank <= spin.twice_value:
        raise PolSphereExceptionBadParameterValue(f'K must be in [0, {spin.twice_value}] for S={spin}, got {rank}')
    if isinstance(q, bool) or int(q) != q or abs(q) > rank:
        raise PolSphereExceptionBadParameterValue(f'q must be in [-{rank}, {rank}], got {q}')


@functools.lru_cache(maxsize=None)
def _tensor_matrix(twice_spin, rank, q):
    spin = HalfInteger(twice_spin)
    size = spin.dimension
    prefactor = math.sqrt((2 * rank + 1) / (twice_spin + 1))
    matrix = np.zeros((size, size), dtype=COMPLEX_TYPE)
    projections = spin.projections()
    for col, m in enumerate(projections):
        row_m = m + q
        if abs(row_m.twice_value) > twice_spin:
            continue
        row = spin.index_of(row_m)
        matrix[row, col] = prefactor * clebsch_gordan(spin, m, rank, q, spin, row_m)
    matrix.flags.writeable = False
    logger.debug('built tensor operator S=%s K=%d q=%d', spin, rank, q)
    return matrix


def tensor_operator(spin, rank, q):
    """Irreducible tensor operator T_Kq^(S).

    Matrix elements sqrt((2K+1)/(2S+1)) C^{S m'}_{S m, K q} at row m', column m.
    Matrices are cached per (S, K, q) and returned read-only.

    Args:
        spin: Spin S
        rank: Multipole order K, 0 <= K <= 2S
        q: Component, |q| <= K

    Returns:
        TensorOperator

    Raises:
        PolSphereExceptionBadParameterValue: If the coupling rules fail
    """
    spin = HalfInteger.spin(spin)
    _check_order(spin, rank, q)
    rank, q = int(rank), int(q)
    return TensorOperator(spin=spin, rank=rank, q=q, matrix=_tensor_matrix(spin.twice_value, rank, q))


class MultipoleTable:
    """Multipoles rho_Kq^(S) indexed by (S, K, q).

    Each sector records the highest order it covers (k_limits); coefficients
    of covered orders that are absent from the map are zero.
    """

    def __init__(self, coefficients, k_limits):
        """Initialize the table.

        Args:
            coefficients: Mapping (HalfInteger S, K, q) -> complex
            k_limits: Mapping HalfInteger S -> highest covered K (<= 2S)

        Raises:
            PolSphereExceptionBadParameterValue: If an entry is outside the coupling
                rules or outside its sector limit
        """
        self._k_limits = dict(sorted(((HalfInteger.spin(s), int(k)) for s, k in k_limits.items()),
                                     key=lambda item: item[0].twice_value))
        self._coefficients = {}
        for (spin, rank, q), value in coefficients.items():
            spin = HalfInteger.spin(spin)
            _check_order(spin, rank, q)
            if spin not in self._k_limits or rank > self._k_limits[spin]:
                raise PolSphereExceptionBadParameterValue(
                    f'coefficient (S={spin}, K={rank}, q={q}) lies outside the covered orders')
            self._coefficients[(spin, int(rank), int(q))] = complex(value)
        for spin, limit in self._k_limits.items():
            if not 0 <= limit <= spin.twice_value:
                raise PolSphereExceptionBadParameterValue(f'K limit {limit} is invalid for S={spin}')

    @classmethod
    def from_coefficients(cls, coefficients, k_limits=None):
        """Build a table, by default treating every listed sector as covered up to K = 2S."""
        if k_limits is None:
            spins = {HalfInteger.spin(key[0]) for key in coefficients}
            k_limits = {spin: spin.twice_value for spin in spins}
        return cls(coefficients, k_limits)

    @property
    def spins(self):
        return list(self._k_limits.keys())

    @property
    def k_limits(self):
        return dict(self._k_limits)

    @property
    def coefficients(self):
        return dict(self._coefficients)

    @property
    def max_k_present(self):
        """Highest K carrying a coefficient with modulus above 1e-14 (-1 if none)."""
        ranks = [rank for (_, rank, _), value in self._coefficients.items()
                 if abs(value) > MULTIPOLE_ZERO_TOLERANCE]
        return max(ranks, default=-1)

    def covers(self, spin, rank):
        spin = HalfInteger.spin(spin)
        return spin in self._k_limits and rank <= self._k_limits[spin]

    def require(self, spin, rank):
        """Raise IncompleteTable unless orders 0..min(rank, 2S) of sector S are covered."""
        spin = HalfInteger.spin(spin)
        needed = min(rank, spin.twice_value)
        limit = self._k_limits.get(spin, -1)
        if limit < needed:
            raise PolSphereExceptionIncompleteTable([(spin, k) for k in range(limit + 1, needed + 1)])

    def coefficient(self, spin, rank, q):
        """rho_Kq^(S); zero for covered orders without an entry.

        Raises:
            PolSphereExceptionIncompleteTable: If order K of sector S is not covered
        """
        spin = HalfInteger.spin(spin)
        if not self.covers(spin, rank):
            raise PolSphereExceptionIncompleteTable([(spin, rank)])
        return self._coefficients.get((spin, rank, q), 0j)

    def sector_row(self, spin, rank):
        """Coefficients rho_Kq^(S) for q = -K..K as a complex array."""
        return np.array([self.coefficient(spin, rank, q) for q in range(-rank, rank + 1)], dtype=COMPLEX_TYPE)

    def records(self):
        """Flat records (S2, K, q, re, im) sorted by S, K, q.

        Returns:
            MultipoleRecords
        """
        rows = sorted(self._coefficients.items(), key=lambda item: (item[0][0].twice_value, item[0][1], item[0][2]))
        return MultipoleRecords(
            S2=[key[0].twice_value for key, _ in rows],
            K=[key[1] for key, _ in rows],
            q=[key[2] for key, _ in rows],
            re=[value.real for _, value in rows],
            im=[value.imag for _, value in rows],
            metadata={'k_limits': {str(spin): limit for spin, limit in self._k_limits.items()}},
        )

    def __repr__(self):
        limits = ', '.join(f'{spin}: {limit}' for spin, limit in self._k_limits.items())
        return f'MultipoleTable(k_limits={{{limits}}}, max_k_present={self.max_k_present})'


def extract_multipoles(state, k_max=None):
    """State multipoles rho_Kq^(S) = Tr[rho^(S) T_Kq^(S)^dag] by exact trace contraction.

    Args:
        state: PolarizationState
        k_max: Highest order to extract, None for all (K <= 2S per sector)

    Returns:
        MultipoleTable

    Example:
        >>> table = extract_multipoles(ps.fock(1, 1))
        >>> table.coefficient(1, 2, 0)
        (-0.816496580927726+0j)
    """
    if k_max is not None and (isinstance(k_max, bool) or int(k_max) != k_max or k_max < 0):
        raise PolSphereExceptionBadParameterValue(f'k_max must be a non-negative integer or None, got {k_max}')

    coefficients = {}
    k_limits = {}
    for spin, block in state.sectors.items():
        limit = spin.twice_value if k_max is None else min(int(k_max), spin.twice_value)
        k_limits[spin] = limit
        for rank in range(limit + 1):
            for q in range(-rank, rank + 1):
                operator = _tensor_matrix(spin.twice_value, rank, q)
                coefficients[(spin, rank, q)] = complex(np.vdot(operator, block.matrix))
    return MultipoleTable(coefficients, k_limits)


def reconstruct_state(table):
    """Rebuild the sector blocks from a complete multipole table.

    Args:
        table: MultipoleTable covering K = 0..2S for every sector

    Returns:
        PolarizationState

    Raises:
        PolSphereExceptionIncompleteTable: Listing every missing (S, K)
    """
    missing = []
    for spin, limit in table.k_limits.items():
        missing.extend((spin, rank) for rank in range(limit + 1, spin.twice_value + 1))
    if missing:
        raise PolSphereExceptionIncompleteTable(missing)

    blocks = []
    for spin in table.spins:
        size = spin.dimension
        matrix = np.zeros((size, size), dtype=COMPLEX_TYPE)
        for rank in range(spin.twice_value + 1):
            for q in range(-rank, rank + 1):
                value = table.coefficient(spin, rank, q)
                if value != 0:
                    matrix += value * _tensor_matrix(spin.twice_value, rank, q)
        blocks.append(SectorDensityMatrix(spin, matrix))
    return make_state(blocks)


def multipole_strength(table, rank):
    """Rotation-invariant strength sum_{S, q} |rho_Kq^(S)|^2 of order K.

    Sectors with 2S < K cannot carry order K and contribute nothing.

    Raises:
        PolSphereExceptionBadParameterValue: If K < 0
        PolSphereExceptionIncompleteTable: If a sector able to carry K does not cover it
    """
    if isinstance(rank, bool) or int(rank) != rank or rank < 0:
        raise PolSphereExceptionBadParameterValue(f'K must be a non-negative integer, got {rank}')
    rank = int(rank)
    total = 0.0
    for spin in table.spins:
        if spin.twice_value < rank:
            continue
        row = table.sector_row(spin, rank)
        total += float(np.vdot(row, row).real)
    return total
