"""Product quadrature on the sphere: Gauss-Legendre in cos(theta) times a uniform phi rule."""
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .constants import REAL_TYPE
from .exceptions import PolSphereExceptionBadParameterValue
from .half_integer import HalfInteger

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Quadrature nodes (theta_i, phi_j) with product weights.

    Nodes are flattened theta-major: node n = i * n_phi + j. The rule integrates
    every spherical polynomial of degree <= exact_degree exactly.

    Attributes:
        thetas: Polar nodes, ascending, from Gauss-Legendre nodes in cos(theta)
        phis: Azimuth nodes 2 pi j / n_phi
        theta_weights: Gauss-Legendre weights of the polar nodes
        exact_degree: Largest exactly integrated degree
    """

    thetas: np.ndarray
    phis: np.ndarray
    theta_weights: np.ndarray
    exact_degree: int

    @property
    def n_theta(self):
        return len(self.thetas)

    @property
    def n_phi(self):
        return len(self.phis)

    @property
    def shape(self):
        return self.n_theta, self.n_phi

    @property
    def size(self):
        return self.n_theta * self.n_phi

    @property
    def node_thetas(self):
        """Polar angle of every node (flattened)."""
        return np.repeat(self.thetas, self.n_phi)

    @property
    def node_phis(self):
        """Azimuth of every node (flattened)."""
        return np.tile(self.phis, self.n_theta)

    @property
    def weights(self):
        """Product weight of every node (flattened); they sum to 4 pi."""
        return np.repeat(self.theta_weights, self.n_phi) * (2 * math.pi / self.n_phi)

    def integrate(self, values):
        """Quadrature of node values (flattened or shaped n_theta x n_phi)."""
        return float(np.dot(self.weights, np.asarray(values, dtype=REAL_TYPE).reshape(-1)))

    def exact_for(self, degree):
        """True when the rule integrates spherical polynomials of the given degree exactly."""
        return degree <= self.exact_degree


def _readonly(array):
    array = np.ascontiguousarray(array, dtype=REAL_TYPE)
    array.flags.writeable = False
    return array


def grid_from_sizes(n_theta, n_phi):
    """Product grid with explicit node counts.

    Args:
        n_theta: Number of Gauss-Legendre nodes in cos(theta)
        n_phi: Number of uniform azimuth nodes

    Returns:
        SphereGrid: exact_degree = min(2 n_theta - 1, n_phi - 1)

    Raises:
        PolSphereExceptionBadParameterValue: If a size is not a positive integer
    """
    for name, value in (('n_theta', n_theta), ('n_phi', n_phi)):
        if isinstance(value, bool) or int(value) != value or value < 1:
            raise PolSphereExceptionBadParameterValue(f'{name} must be a positive integer, got {value}')
    n_theta, n_phi = int(n_theta), int(n_phi)

    nodes, weights = leggauss(n_theta)
    thetas = np.arccos(nodes)[::-1]
    theta_weights = weights[::-1]
    phis = 2 * math.pi * np.arange(n_phi) / n_phi

    return SphereGrid(thetas=_readonly(thetas), phis=_readonly(phis),
                      theta_weights=_readonly(theta_weights),
                      exact_degree=min(2 * n_theta - 1, n_phi - 1))


def build_grid(max_spin):
    """Smallest product grid integrating Q^2 exactly for states with S <= max_spin.

    Q has spherical-harmonic content up to degree 2 S_max, so Q^2 needs degree
    4 S_max: n_theta = 2 (2 S_max) + 1 and n_phi = 4 (2 S_max) + 1.

    Args:
        max_spin: Largest spin S_max of the state

    Returns:
        SphereGrid

    Example:
        >>> build_grid(1).shape
        (5, 9)
    """
    two_s = HalfInteger.spin(max_spin).twice_value
    grid = grid_from_sizes(2 * two_s + 1, 4 * two_s + 1)
    logger.debug('built %dx%d sphere grid, exact degree %d', grid.n_theta, grid.n_phi, grid.exact_degree)
    return grid
