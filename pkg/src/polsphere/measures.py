"""Effective areas of the Q function and hidden-polarization reports.

A = integral of Q^2 over the sphere, A_K = integral of Q_K^2. Distinct orders are
orthogonal, so A = sum_K A_K on an exact grid.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .angular import cg_stretched
from .constants import HIDDEN_DIPOLE_EPS, HIDDEN_HIGHER_EPS
from .data_series import AreaTable, CoherentSweep
from .exceptions import PolSphereExceptionBadParameterValue
from .half_integer import HalfInteger
from .qfunction import component_coefficients, evaluate_field
from .sphere_grid import build_grid, grid_from_sizes  # noqa: F401

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AreaReport:
    """Total effective area and its split over multipole orders.

    Attributes:
        total_area: Integral of Q^2
        per_k: Mapping K -> A_K for K <= k_max
        k_max: Highest listed order
        truncation_residual: total_area - sum_K A_K
        metadata: Grid sizes, coarseness flag and state bookkeeping
    """

    total_area: float
    per_k: dict
    k_max: int
    truncation_residual: float
    metadata: dict = field(default_factory=dict)

    def table(self):
        """Per-K areas as an AreaTable whose CSV ends with the total row."""
        ranks = sorted(self.per_k)
        metadata = dict(self.metadata, total_area=self.total_area, truncation_residual=self.truncation_residual)
        return AreaTable(K=ranks, area=[self.per_k[rank] for rank in ranks], metadata=metadata)


@dataclass(frozen=True)
class HiddenPolarizationReport:
    """Dipole area against the area of all higher orders."""

    dipole_area: float
    higher_area: float
    eps_dipole: float = HIDDEN_DIPOLE_EPS
    eps_higher: float = HIDDEN_HIGHER_EPS

    @property
    def verdict(self):
        """True when the dipole vanishes while higher orders do not."""
        return self.dipole_area < self.eps_dipole and self.higher_area > self.eps_higher


def _grid_for(state, grid):
    return build_grid(state.max_spin) if grid is None else grid


def effective_area(state, grid=None):
    """Effective area A = integral of Q^2 dOmega.

    Args:
        state: PolarizationState
        grid: SphereGrid (default: build_grid(S_max), exact for Q^2)

    Returns:
        float

    Warns:
        PolSphereGridTooCoarseWarning: If grid cannot integrate Q^2 exactly; use
            area_report() to get the grid_too_coarse flag in the result metadata
    """
    field_values = evaluate_field(state, _grid_for(state, grid), k_max=0)
    return field_values.grid.integrate(field_values.total ** 2)


def effective_area_K(state, grid=None, rank=0):
    """Area A_K = integral of Q_K^2 dOmega by quadrature.

    Args:
        state: PolarizationState
        grid: SphereGrid (default: build_grid(S_max))
        rank: Multipole order K >= 0

    Returns:
        float

    Warns:
        PolSphereGridTooCoarseWarning: If grid cannot integrate Q^2 exactly (see
            area_report() for the flag carried in metadata)
    """
    if isinstance(rank, bool) or int(rank) != rank or rank < 0:
        raise PolSphereExceptionBadParameterValue(f'K must be a non-negative integer, got {rank}')
    rank = int(rank)
    field_values = evaluate_field(state, _grid_for(state, grid), k_max=rank)
    return field_values.grid.integrate(field_values.components[rank] ** 2)


def effective_area_K_closed(table, rank):
    """Algebraic A_K including the cross terms between sectors.

    A_K = sum_{S,S'} sqrt((2S+1)(2S'+1))/(4 pi) C_S C_S' sum_q rho_Kq^(S) conj(rho_Kq^(S')),
    with C_S = C^{SS}_{SS,K0}; computed as sum_q |c_q|^2 with
    c_q = sum_S sqrt((2S+1)/(4 pi)) (-1)^K C_S rho_Kq^(S).

    Raises:
        PolSphereExceptionIncompleteTable: If a sector with 2S >= K does not cover K
    """
    if isinstance(rank, bool) or int(rank) != rank or rank < 0:
        raise PolSphereExceptionBadParameterValue(f'K must be a non-negative integer, got {rank}')
    coefficients = component_coefficients(table, int(rank))
    return float(np.vdot(coefficients, coefficients).real)


def effective_area_K_diagonal(table, rank):
    """A_K from the sector-diagonal terms only.

    Exact for single-sector states; it misses the S != S' cross terms otherwise.
    """
    if isinstance(rank, bool) or int(rank) != rank or rank < 0:
        raise PolSphereExceptionBadParameterValue(f'K must be a non-negative integer, got {rank}')
    rank = int(rank)
    total = 0.0
    for spin in table.spins:
        if spin.twice_value < rank:
            continue
        row = table.sector_row(spin, rank)
        weight = spin.dimension / (4 * math.pi) * cg_stretched(spin, rank) ** 2
        total += weight * float(np.vdot(row, row).real)
    return total


def coherent_area_K(spin, rank):
    """A_K of any SU(2) coherent state of spin S: (2K+1)/(4 pi) (C^{SS}_{SS,K0})^4.

    Raises:
        PolSphereExceptionBadParameterValue: If K is outside [0, 2S]
    """
    return (2 * rank + 1) / (4 * math.pi) * cg_stretched(spin, rank) ** 4


def coherent_sweep(spins):
    """Coherent-state areas A_K for K = 0..2S, for every spin in the list.

    Args:
        spins: Iterable of spins

    Returns:
        CoherentSweep: Columns S, K, area
    """
    spins = [HalfInteger.spin(spin) for spin in spins]
    rows = []
    for spin in spins:
        rows.extend((spin.value, rank, coherent_area_K(spin, rank)) for rank in range(spin.twice_value + 1))
    return CoherentSweep(S=[row[0] for row in rows], K=[row[1] for row in rows], area=[row[2] for row in rows],
                         metadata={'spins': [str(spin) for spin in spins]})


def area_report(state, grid=None, k_max=None):
    """Total area, per-order areas and the truncation residual.

    Args:
        state: PolarizationState
        grid: SphereGrid (default: build_grid(S_max))
        k_max: Highest listed order (default 2 S_max)

    Returns:
        AreaReport
    """
    field_values = evaluate_field(state, _grid_for(state, grid), k_max=k_max)
    integrate = field_values.grid.integrate
    total_area = integrate(field_values.total ** 2)
    per_k = {rank: integrate(values ** 2) for rank, values in field_values.components.items()}
    residual = total_area - math.fsum(per_k.values())

    metadata = dict(field_values.metadata)
    metadata['truncation_residual'] = residual
    logger.info('area report: A=%.17g over %d orders, residual %.3g', total_area, len(per_k), residual)
    return AreaReport(total_area=total_area, per_k=per_k, k_max=field_values.k_max,
                      truncation_residual=residual, metadata=metadata)


def hidden_polarization(state, grid=None, eps_dipole=HIDDEN_DIPOLE_EPS, eps_higher=HIDDEN_HIGHER_EPS):
    """Check for hidden polarization: no dipole but nonzero higher multipoles.

    Args:
        state: PolarizationState
        grid: SphereGrid (default: build_grid(S_max))
        eps_dipole: A_1 must stay below this
        eps_higher: sum_{K >= 2} A_K must exceed this

    Returns:
        HiddenPolarizationReport

    Raises:
        PolSphereExceptionBadParameterValue: If a threshold is not positive
    """
    if not eps_dipole > 0 or not eps_higher > 0:
        raise PolSphereExceptionBadParameterValue(
            f'thresholds must be positive, got eps_dipole={eps_dipole}, eps_higher={eps_higher}')

    report = area_report(state, grid)
    dipole_area = report.per_k.get(1, 0.0)
    higher_area = math.fsum(area for rank, area in report.per_k.items() if rank >= 2)
    return HiddenPolarizationReport(dipole_area=dipole_area, higher_area=higher_area,
                                    eps_dipole=float(eps_dipole), eps_higher=float(eps_higher))
