"""Seeded random polarization states (Ginibre construction)."""
import numpy as np

from .constants import COMPLEX_TYPE
from .exceptions import PolSphereExceptionBadParameterValue
from .half_integer import HalfInteger
from .state import SectorDensityMatrix, make_state


def _ginibre(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_sector_matrix(rng, spin, trace=1.0, rank=None):
    """Random density block G G^dag scaled to the given trace.

    Args:
        rng: numpy.random.Generator
        spin: Spin S of the sector
        trace: Trace of the block (the sector weight)
        rank: Rank of the block, default full rank 2S+1

    Returns:
        SectorDensityMatrix
    """
    spin = HalfInteger.spin(spin)
    size = spin.dimension
    rank = size if rank is None else int(rank)
    if not 1 <= rank <= size:
        raise PolSphereExceptionBadParameterValue(f'rank must be in [1, {size}] for S={spin}, got {rank}')
    ginibre = _ginibre(rng, size, rank)
    matrix = (ginibre @ ginibre.conj().T).astype(COMPLEX_TYPE)
    matrix *= trace / np.trace(matrix).real
    return SectorDensityMatrix(spin, matrix)


def random_pure_sector(rng, spin, trace=1.0):
    """Random rank-one block trace * |v><v| with v uniform on the unit sphere."""
    return random_sector_matrix(rng, spin, trace=trace, rank=1)


def random_state(rng, max_twice_spin, n_sectors=1, pure=False):
    """Random state over distinct sectors with 2S <= max_twice_spin.

    Sector weights are drawn from a flat Dirichlet distribution.

    Args:
        rng: numpy.random.Generator
        max_twice_spin: Largest allowed 2S
        n_sectors: Number of distinct sectors
        pure: Use rank-one blocks

    Returns:
        PolarizationState
    """
    if n_sectors < 1 or n_sectors > max_twice_spin + 1:
        raise PolSphereExceptionBadParameterValue(
            f'n_sectors must be in [1, {max_twice_spin + 1}], got {n_sectors}')
    twice_spins = sorted(rng.choice(max_twice_spin + 1, size=n_sectors, replace=False).tolist())
    weights = rng.dirichlet(np.ones(n_sectors)) if n_sectors > 1 else np.ones(1)
    weights /= weights.sum()

    blocks = []
    for twice_spin, weight in zip(twice_spins, weights):
        spin = HalfInteger(int(twice_spin))
        rank = 1 if pure else None
        blocks.append(random_sector_matrix(rng, spin, trace=float(weight), rank=rank))
    return make_state(blocks)


def random_corpus(seed, count, max_twice_spin, max_sectors=2):
    """Reproducible list of random mixed states.

    Args:
        seed: Seed of numpy.random.default_rng
        count: Number of states
        max_twice_spin: Largest 2S of any sector
        max_sectors: Largest number of sectors per state

    Returns:
        list[PolarizationState]
    """
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(count):
        n_sectors = int(rng.integers(1, min(max_sectors, max_twice_spin + 1) + 1))
        states.append(random_state(rng, max_twice_spin, n_sectors=n_sectors))
    return states
