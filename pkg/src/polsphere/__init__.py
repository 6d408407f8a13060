"""polsphere: multipoles, SU(2) Q functions and effective areas of polarization states.

Polarization states are block-diagonal collections of spin-sector density
matrices. Named state constructors are loaded lazily when first accessed.

Example:
    >>> import polsphere as ps
    >>> state = ps.fock(1, 1)
    >>> table = ps.extract_multipoles(state)
    >>> report = ps.hidden_polarization(state)
    >>> report.verdict
    True
"""
import importlib
import re
from pathlib import Path

from .half_integer import HalfInteger
from .angular import (
    CGArgs,
    ln_factorial,
    clebsch_gordan,
    cg_stretched,
    wigner_small_d,
    wigner_small_d_matrix,
    displacement_matrix,
    spherical_harmonic,
    spherical_harmonic_table,
    normalized_legendre_table,
)
from .state import (
    SectorDensityMatrix,
    PolarizationState,
    StokesVector,
    StokesUncertainty,
    make_state,
    mix,
    purity,
    spin_matrices,
    stokes_mean,
    stokes_uncertainty,
    stokes_second_moments,
    mean_photon_number,
    degree_of_polarization,
    rotate_state,
    rotation_matrix,
)
from .multipole import (
    TensorOperator,
    MultipoleTable,
    tensor_operator,
    extract_multipoles,
    reconstruct_state,
    multipole_strength,
)
from .sphere_grid import SphereGrid, build_grid, grid_from_sizes
from .qfunction import (
    CoherentAmplitudes,
    QField,
    coherent_amplitudes,
    q_sector_direct,
    q_total,
    q_sector_via_multipoles,
    q_component,
    evaluate_field,
)
from .measures import (
    AreaReport,
    HiddenPolarizationReport,
    effective_area,
    effective_area_K,
    effective_area_K_closed,
    effective_area_K_diagonal,
    coherent_area_K,
    coherent_sweep,
    area_report,
    hidden_polarization,
)
from .exceptions import (
    PolSphereException,
    PolSphereExceptionConstructorNotFound,
    PolSphereExceptionBadParameterValue,
    PolSphereExceptionInvalidState,
    PolSphereExceptionIncompleteTable,
    PolSphereExceptionIntegerBudget,
    PolSphereExceptionConsistency,
    PolSphereExceptionBadSpec,
    PolSphereGridTooCoarseWarning,
)
from .metadata import metadata, list


def _get_version():
    """Get version from package metadata or pyproject.toml."""
    try:
        from importlib.metadata import version
        return version('polsphere')
    except Exception:
        pass

    # Fallback: read from pyproject.toml (for development)
    try:
        pyproject_path = Path(__file__).parent.parent.parent / 'pyproject.toml'
        if pyproject_path.exists():
            content = pyproject_path.read_text(encoding='utf-8')
            match = re.search(r'^version\s*=\s*["\']([^"\']+)["\']', content, re.MULTILINE)
            if match:
                return match.group(1)
    except Exception:
        pass

    return "0.1.0"


__version__ = _get_version()
__all__ = [
    'HalfInteger', 'CGArgs',
    'ln_factorial', 'clebsch_gordan', 'cg_stretched', 'wigner_small_d', 'wigner_small_d_matrix',
    'displacement_matrix', 'spherical_harmonic', 'spherical_harmonic_table', 'normalized_legendre_table',
    'SectorDensityMatrix', 'PolarizationState', 'StokesVector', 'StokesUncertainty',
    'make_state', 'mix', 'purity', 'spin_matrices', 'stokes_mean', 'stokes_uncertainty',
    'stokes_second_moments', 'mean_photon_number', 'degree_of_polarization', 'rotate_state', 'rotation_matrix',
    'TensorOperator', 'MultipoleTable', 'tensor_operator', 'extract_multipoles', 'reconstruct_state',
    'multipole_strength',
    'SphereGrid', 'build_grid', 'grid_from_sizes',
    'CoherentAmplitudes', 'QField', 'coherent_amplitudes', 'q_sector_direct', 'q_total',
    'q_sector_via_multipoles', 'q_component', 'evaluate_field',
    'AreaReport', 'HiddenPolarizationReport', 'effective_area', 'effective_area_K', 'effective_area_K_closed',
    'effective_area_K_diagonal', 'coherent_area_K', 'coherent_sweep', 'area_report', 'hidden_polarization',
    'PolSphereException', 'PolSphereExceptionConstructorNotFound', 'PolSphereExceptionBadParameterValue',
    'PolSphereExceptionInvalidState', 'PolSphereExceptionIncompleteTable', 'PolSphereExceptionIntegerBudget',
    'PolSphereExceptionConsistency', 'PolSphereExceptionBadSpec', 'PolSphereGridTooCoarseWarning',
    'metadata', 'list',
]

# Long names used in formulas and older scripts
_ALIASES = {
    'fock_state': 'fock',
    'su2_coherent_state': 'coherent_su2',
    'noon_state': 'noon',
}

# Cache for lazy-loaded constructors
_constructor_cache = {}


def __getattr__(name):
    """Lazy loading of state constructors.

    When a constructor is accessed (e.g., ps.fock), this function:
    1. Checks if it's already in the cache
    2. If not, tries to import from constructors/{name}.py
    3. Caches and returns the get_state_out function

    Args:
        name: Name of the constructor (e.g., 'fock', 'coherent_su2', 'noon') or an alias

    Returns:
        The get_state_out function from the constructor module

    Raises:
        PolSphereExceptionConstructorNotFound: If the constructor module or function is not found
    """

    if name in ('__bases__', '__test__'):
        return None

    if name.startswith('__') and name.endswith('__'):
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")

    if name in _constructor_cache:
        return _constructor_cache[name]

    module_name = _ALIASES.get(name, name)
    try:
        module = importlib.import_module(f'.constructors.{module_name}', __package__)
        func = module.get_state_out
        _constructor_cache[name] = func
        return func
    except (ImportError, AttributeError) as e:
        raise PolSphereExceptionConstructorNotFound(name) from e


def __dir__():
    """List available attributes including cached constructors."""
    return sorted(__all__ + ['__version__'] + [*_constructor_cache.keys()])
