"""Constants for numeric types, tolerances and conventions used in polsphere."""
import math

import numpy as np

REAL_TYPE = np.float64
COMPLEX_TYPE = np.complex128

# Basis ordering of every sector block: row/column 0 is m = +S, the last one m = -S
BASIS_ORDER = 'm_descending'

# State validation
HERMITIAN_TOLERANCE = 1e-12     # relative to the largest entry
PSD_TOLERANCE = 1e-10           # relative to the block trace
NORMALIZATION_TOLERANCE = 1e-12
WEIGHTS_TOLERANCE = 1e-12

# Q function values in (-Q_CLAMP_TOLERANCE, 0) are rounding noise and get clamped to 0
Q_CLAMP_TOLERANCE = 1e-12

# Multipoles below this modulus do not count towards MultipoleTable.max_k_present
MULTIPOLE_ZERO_TOLERANCE = 1e-14

# Hidden polarization verdict thresholds
HIDDEN_DIPOLE_EPS = 1e-10
HIDDEN_HIGHER_EPS = 1e-6

# Two-mode coherent states: discarded Poisson tail must stay below this
DEFAULT_TRUNCATION_EPS = 1e-12

# Exact Clebsch-Gordan arithmetic refuses integers longer than this (bits)
CG_INTEGER_BIT_BUDGET = 1 << 20

# ln(n!) is tabulated for n <= LN_FACTORIAL_TABLE_SIZE
LN_FACTORIAL_TABLE_SIZE = 10000

# Poincare-sphere mode convention: horizontally polarized light is the m = +S state,
# found at theta = pi of the Q function; vertical light sits at theta = 0
H_POLE_THETA = math.pi
V_POLE_THETA = 0.0

# CSV output precision (significant digits)
CSV_SIGNIFICANT_DIGITS = 17
REAL_FORMAT = f'%.{CSV_SIGNIFICANT_DIGITS}g'
INTEGER_FORMAT = '%d'

# Environment variable sizing the numba thread pool in the CLI
THREADS_ENV_VAR = 'POLSPHERE_NUM_THREADS'
