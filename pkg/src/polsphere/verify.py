"""Self-verification: cross-route and invariant checks on built-in and random states."""
import contextlib
import logging
import math
from dataclasses import dataclass

import numpy as np

from .angular import cg_stretched, clebsch_gordan, spherical_harmonic_table, stretched_cg_fault, \
    wigner_small_d_matrix
from .constructors import coherent_su2, fock, mixture, noon, two_mode_coherent
from .exceptions import PolSphereException
from .measures import area_report, coherent_area_K, effective_area_K_closed, hidden_polarization
from .multipole import extract_multipoles, reconstruct_state
from .qfunction import evaluate_field, q_sector_direct, q_sector_via_multipoles
from .random_states import random_corpus
from .sphere_grid import build_grid
from .state import purity, stokes_uncertainty

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240521
CORPUS_SIZE = 20
CORPUS_MAX_TWICE_SPIN = 10
ROUTE_NODES = 50
DEFAULT_FAULT = (1, 2, 1 + 1e-6)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one invariant check."""

    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.max_error <= self.tolerance)

    def render(self):
        status = 'PASS' if self.passed else 'FAIL'
        return f'{status} {self.name:<24} max_error={self.max_error:.3e} tolerance={self.tolerance:.0e}'


@dataclass(frozen=True)
class VerifyResult:
    checks: tuple
    seed: int

    @property
    def all_passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failed(self):
        return [check.name for check in self.checks if not check.passed]

    def render(self):
        lines = [f'seed {self.seed}']
        lines.extend(check.render() for check in self.checks)
        lines.append('all checks passed' if self.all_passed else f'failed: {", ".join(self.failed)}')
        return '\n'.join(lines) + '\n'


def builtin_states():
    """Named states exercising every constructor."""
    return {
        'vacuum': fock.get_state_out(0, 0),
        'fock(1,1)': fock.get_state_out(1, 1),
        'fock(3,1)': fock.get_state_out(3, 1),
        'coherent_su2(3/2)': coherent_su2.get_state_out('3/2', 1.0, 2.0),
        'noon(4)': noon.get_state_out(4, 0.7),
        'two_mode_coherent(1,1)': two_mode_coherent.get_state_out(1, 1, 1e-10),
        'mixture': mixture.get_state_out([fock.get_state_out(1, 0), noon.get_state_out(2)], [0.4, 0.6]),
    }


def _check_cg_orthogonality(context):
    worst = 0.0
    for tj1 in range(0, 9):
        for tj2 in range(0, 9):
            for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                for tJ2 in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                    for tM in range(-min(tJ, tJ2), min(tJ, tJ2) + 1, 2):
                        total = math.fsum(
                            clebsch_gordan(tj1 / 2, tm1 / 2, tj2 / 2, (tM - tm1) / 2, tJ / 2, tM / 2)
                            * clebsch_gordan(tj1 / 2, tm1 / 2, tj2 / 2, (tM - tm1) / 2, tJ2 / 2, tM / 2)
                            for tm1 in range(-tj1, tj1 + 1, 2) if abs(tM - tm1) <= tj2)
                        worst = max(worst, abs(total - (1.0 if tJ == tJ2 else 0.0)))
    return worst


def _check_stretched_cg(context):
    worst = 0.0
    for two_s in range(0, 41):
        spin = two_s / 2
        for rank in range(two_s + 1):
            exact = clebsch_gordan(spin, spin, rank, 0, spin, spin)
            worst = max(worst, abs(cg_stretched(spin, rank) - exact) / abs(exact))
    return worst


def _check_wigner_orthogonality(context):
    worst = 0.0
    for two_s in range(0, 41, 3):
        for theta in (0.1, 1.0, 2.0, 3.0):
            matrix = wigner_small_d_matrix(two_s / 2, theta)
            worst = max(worst, float(np.max(np.abs(matrix.T @ matrix - np.eye(two_s + 1)))))
    return worst


def _check_harmonic_orthonormality(context):
    k_max = 20
    grid = build_grid(k_max / 2)
    rows = np.array([spherical_harmonic_table(k_max, theta, phi)
                     for theta, phi in zip(grid.node_thetas, grid.node_phis)])
    flat = rows.reshape(grid.size, -1)
    valid = np.abs(np.arange(-k_max, k_max + 1))[None, :] <= np.arange(k_max + 1)[:, None]
    flat = flat[:, valid.reshape(-1)]
    gram = (flat.conj().T * grid.weights[None, :]) @ flat
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def _check_route_equivalence(context):
    rng = np.random.default_rng(context['seed'] + 1)
    worst = 0.0
    for state in context['states']:
        table = extract_multipoles(state)
        for spin in state.spins:
            for _ in range(ROUTE_NODES):
                theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
                direct = q_sector_direct(state, spin, theta, phi)
                via = q_sector_via_multipoles(table, spin, theta, phi)
                worst = max(worst, abs(direct - via))
    return worst


def _check_normalization(context):
    worst = 0.0
    for state in context['states']:
        field = evaluate_field(state, build_grid(state.max_spin))
        worst = max(worst, abs(field.grid.integrate(field.total) - 1.0))
    return worst


def _check_parseval(context):
    worst = 0.0
    for state in context['states']:
        report = area_report(state)
        worst = max(worst, abs(report.truncation_residual))
        table = extract_multipoles(state)
        for rank, area in report.per_k.items():
            worst = max(worst, abs(area - effective_area_K_closed(table, rank)))
    return worst


def _check_round_trip(context):
    worst = 0.0
    for state in context['states']:
        table = extract_multipoles(state)
        rebuilt = reconstruct_state(table)
        for spin, block in state.sectors.items():
            worst = max(worst, float(np.max(np.abs(rebuilt.sector(spin).matrix - block.matrix))))
            strength = math.fsum(abs(table.coefficient(spin, rank, q)) ** 2
                                 for rank in range(spin.twice_value + 1) for q in range(-rank, rank + 1))
            worst = max(worst, abs(strength - purity(block)))
    return worst


def _check_coherent_law(context):
    rng = np.random.default_rng(context['seed'] + 2)
    worst = 0.0
    for two_s in range(1, 7):
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        report = area_report(coherent_su2.get_state_out(two_s / 2, theta, phi))
        for rank, area in report.per_k.items():
            worst = max(worst, abs(area - coherent_area_K(two_s / 2, rank)))
    return worst


def _check_uncertainty(context):
    worst = 0.0
    for state in context['states']:
        result = stokes_uncertainty(state)
        worst = max(worst, -result.excess)
    rng = np.random.default_rng(context['seed'] + 3)
    for two_s in range(0, 11):
        state = coherent_su2.get_state_out(two_s / 2, rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        worst = max(worst, abs(stokes_uncertainty(state).excess))
    return worst


def _check_hidden_polarization(context):
    hidden = hidden_polarization(fock.get_state_out(1, 1))
    visible = hidden_polarization(coherent_su2.get_state_out(1, 0.4, 0.3))
    if hidden.verdict and not visible.verdict:
        return hidden.dipole_area
    return math.inf


CHECKS = (
    ('cg_orthogonality', 1e-12, _check_cg_orthogonality),
    ('stretched_cg', 1e-12, _check_stretched_cg),
    ('wigner_d_orthogonality', 1e-12, _check_wigner_orthogonality),
    ('harmonic_orthonormality', 1e-12, _check_harmonic_orthonormality),
    ('route_equivalence', 1e-10, _check_route_equivalence),
    ('normalization', 1e-10, _check_normalization),
    ('parseval', 1e-10, _check_parseval),
    ('round_trip', 1e-12, _check_round_trip),
    ('coherent_law', 1e-10, _check_coherent_law),
    ('uncertainty', 1e-10, _check_uncertainty),
    ('hidden_polarization', 1e-12, _check_hidden_polarization),
)


def run_verify(seed=DEFAULT_SEED, fault=None):
    """Run every check on the built-in states plus a seeded random corpus.

    Args:
        seed: Seed of the random corpus and of the random nodes
        fault: Optional (S, K, scale) applied to one stretched CG coefficient

    Returns:
        VerifyResult
    """
    states = list(builtin_states().values())
    states += random_corpus(seed, CORPUS_SIZE, CORPUS_MAX_TWICE_SPIN)
    context = {'seed': seed, 'states': states}

    injected = stretched_cg_fault(*fault) if fault is not None else contextlib.nullcontext()
    results = []
    with injected:
        for name, tolerance, check in CHECKS:
            logger.info('running check %s', name)
            try:
                max_error = float(check(context))
            except PolSphereException as e:
                # a check that cannot finish counts as failed
                logger.error('check %s aborted: %s', name, e)
                max_error = math.inf
            results.append(CheckResult(name=name, max_error=max_error, tolerance=tolerance))
    return VerifyResult(checks=tuple(results), seed=seed)
