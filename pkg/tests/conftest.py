"""Pytest configuration and shared fixtures for polsphere tests."""
import math

import numpy as np
import pytest

import polsphere as ps

# Tolerances of the exact-arithmetic layer (CG, Wigner d, harmonics, round trips)
TOLERANCE = 1e-12

# Tolerance of quantities assembled from many terms (Q routes, areas, normalization)
ROUTE_TOLERANCE = 1e-10

# Seed of every random corpus used in the tests
SEED = 20240521


def random_nodes(rng, count):
    """Uniform random (theta, phi) pairs on [0, pi] x [0, 2 pi)."""
    return list(zip(rng.uniform(0, math.pi, count), rng.uniform(0, 2 * math.pi, count)))


def sector_values(state, spin, nodes):
    """Q^(S) at the given nodes by the coherent-state overlap route."""
    return np.array([ps.q_sector_direct(state, spin, theta, phi) for theta, phi in nodes])


@pytest.fixture
def rng():
    """Seeded numpy random generator."""
    return np.random.default_rng(SEED)


@pytest.fixture
def corpus():
    """Reproducible random mixed states with 2S <= 8 and up to three sectors."""
    from polsphere.random_states import random_corpus
    return random_corpus(SEED, 12, 8, max_sectors=3)


@pytest.fixture
def named_states():
    """One state from every constructor."""
    return {
        'vacuum': ps.fock(0, 0),
        'fock(1,1)': ps.fock(1, 1),
        'fock(2,0)': ps.fock(2, 0),
        'fock(3,1)': ps.fock(3, 1),
        'coherent_su2(3/2)': ps.coherent_su2('3/2', 1.0, 2.0),
        'coherent_su2(2)': ps.coherent_su2(2, 0.3, 5.0),
        'noon(4)': ps.noon(4, 0.7),
        'two_mode_coherent': ps.two_mode_coherent(0.8, 0.5j, 1e-10),
        'mixture': ps.mixture([ps.fock(1, 0), ps.noon(2)], [0.4, 0.6]),
    }
