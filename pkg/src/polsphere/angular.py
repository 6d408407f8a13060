"""Angular-momentum special functions: ln(n!), Clebsch-Gordan coefficients,
stretched coefficients, Wigner small-d elements, displacement matrices and
spherical harmonics.

Every convention is Condon-Shortley. Sector matrices use the m-descending basis
(index 0 is m = +S).
"""
import contextlib
import contextvars
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numba as nb
import numpy as np

from .constants import CG_INTEGER_BIT_BUDGET, COMPLEX_TYPE, LN_FACTORIAL_TABLE_SIZE, REAL_TYPE
from .exceptions import PolSphereExceptionBadParameterValue, PolSphereExceptionIntegerBudget
from .half_integer import HalfInteger

logger = logging.getLogger(__name__)


def _build_ln_factorial_table(size):
    """Tabulate ln(n!) for n = 0..size by compensated cumulative summation."""
    table = np.zeros(size + 1, dtype=REAL_TYPE)
    total = 0.0
    compensation = 0.0
    for n in range(2, size + 1):
        term = math.log(n) - compensation
        new_total = total + term
        compensation = (new_total - total) - term
        total = new_total
        table[n] = total
    table.flags.writeable = False
    return table


_LN_FACTORIAL = _build_ln_factorial_table(LN_FACTORIAL_TABLE_SIZE)


def ln_factorial(n):
    """Natural logarithm of n!.

    Args:
        n: Non-negative integer

    Returns:
        float: ln(n!)

    Raises:
        PolSphereExceptionBadParameterValue: If n is negative or not an integer
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise PolSphereExceptionBadParameterValue(f'n must be a non-negative integer, got {n}')
    n = int(n)
    if n <= LN_FACTORIAL_TABLE_SIZE:
        return float(_LN_FACTORIAL[n])
    tail = math.fsum(math.log(k) for k in range(LN_FACTORIAL_TABLE_SIZE + 1, n + 1))
    return float(_LN_FACTORIAL[LN_FACTORIAL_TABLE_SIZE]) + tail


@dataclass(frozen=True)
class CGArgs:
    """Arguments of the Clebsch-Gordan coefficient C^{J M}_{j1 m1, j2 m2}."""

    j1: HalfInteger
    m1: HalfInteger
    j2: HalfInteger
    m2: HalfInteger
    J: HalfInteger
    M: HalfInteger

    @classmethod
    def from_values(cls, j1, m1, j2, m2, J, M):
        """Build CGArgs from any half-integer-like values."""
        return cls(*(HalfInteger.from_value(v) for v in (j1, m1, j2, m2, J, M)))

    @property
    def doubled(self):
        """The six arguments as doubled integers."""
        return (self.j1.twice_value, self.m1.twice_value, self.j2.twice_value,
                self.m2.twice_value, self.J.twice_value, self.M.twice_value)

    @property
    def selection_rules_hold(self):
        """True when the coefficient may be nonzero."""
        return _selection_rules_hold(*self.doubled)


def _selection_rules_hold(tj1, tm1, tj2, tm2, tJ, tM):
    if min(tj1, tj2, tJ) < 0:
        return False
    if tm1 + tm2 != tM:
        return False
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tM) > tJ:
        return False
    if (tj1 - tm1) % 2 or (tj2 - tm2) % 2 or (tJ - tM) % 2:
        return False
    if not abs(tj1 - tj2) <= tJ <= tj1 + tj2:
        return False
    return (tj1 + tj2 + tJ) % 2 == 0


@functools.lru_cache(maxsize=None)
def _cg_sign_and_square(tj1, tm1, tj2, tm2, tJ, tM):
    """Sign and exact square of a Clebsch-Gordan coefficient (Racah closed form).

    Arguments are doubled integers; the selection rules must already hold.

    Returns:
        tuple: (sign in {-1, 0, 1}, Fraction square)
    """
    largest = (tj1 + tj2 + tJ) // 2 + 1
    if ln_factorial(largest) / math.log(2) > CG_INTEGER_BIT_BUDGET:
        raise PolSphereExceptionIntegerBudget(
            f'({tj1}/2 {tm1}/2, {tj2}/2 {tm2}/2 | {tJ}/2 {tM}/2) needs {largest}!')

    fact = math.factorial
    j1_j2_J = (tj1 + tj2 - tJ) // 2
    j1_m1 = (tj1 - tm1) // 2
    j2_p2 = (tj2 + tm2) // 2
    J_j2_m1 = (tJ - tj2 + tm1) // 2
    J_j1_m2 = (tJ - tj1 - tm2) // 2

    k_min = max(0, -J_j2_m1, -J_j1_m2)
    k_max = min(j1_j2_J, j1_m1, j2_p2)
    if k_min > k_max:
        return 0, Fraction(0)

    # accumulate the alternating sum term by term with exact ratios
    c1, c2, c3, c4 = k_min, j1_j2_J - k_min, j1_m1 - k_min, j2_p2 - k_min
    c5, c6 = J_j2_m1 + k_min, J_j1_m2 + k_min
    term = Fraction((-1) ** k_min, fact(c1) * fact(c2) * fact(c3) * fact(c4) * fact(c5) * fact(c6))
    racah_sum = term
    for _ in range(k_min + 1, k_max + 1):
        c1 += 1
        c5 += 1
        c6 += 1
        term *= Fraction(-c2 * c3 * c4, c1 * c5 * c6)
        c2 -= 1
        c3 -= 1
        c4 -= 1
        racah_sum += term

    if racah_sum == 0:
        return 0, Fraction(0)

    square = Fraction(
        (tJ + 1) * fact((tJ + tj1 - tj2) // 2) * fact((tJ - tj1 + tj2) // 2) * fact(j1_j2_J),
        fact((tj1 + tj2 + tJ) // 2 + 1))
    square *= (fact((tJ + tM) // 2) * fact((tJ - tM) // 2)
               * fact(j1_m1) * fact((tj1 + tm1) // 2)
               * fact((tj2 - tm2) // 2) * fact(j2_p2))
    square *= racah_sum * racah_sum

    if max(square.numerator.bit_length(), square.denominator.bit_length()) > CG_INTEGER_BIT_BUDGET:
        raise PolSphereExceptionIntegerBudget(
            f'({tj1}/2 {tm1}/2, {tj2}/2 {tm2}/2 | {tJ}/2 {tM}/2) exceeds {CG_INTEGER_BIT_BUDGET} bits')

    return (1 if racah_sum > 0 else -1), square


def clebsch_gordan(*args):
    """Clebsch-Gordan coefficient C^{J M}_{j1 m1, j2 m2} (Condon-Shortley).

    The Racah sum is evaluated exactly in rational arithmetic; the value is
    sign * sqrt(p / q) converted to float once at the end.

    Args:
        *args: Either a single CGArgs or the six values j1, m1, j2, m2, J, M
            (int, Fraction, float halves, strings like '1/2' or HalfInteger)

    Returns:
        float: The coefficient, exactly 0.0 when the selection rules fail

    Raises:
        PolSphereExceptionIntegerBudget: If exact integers exceed the bit budget

    Example:
        >>> clebsch_gordan('1/2', '1/2', '1/2', '-1/2', 0, 0)
        0.7071067811865476
    """
    if len(args) == 1 and isinstance(args[0], CGArgs):
        cg_args = args[0]
    elif len(args) == 6:
        cg_args = CGArgs.from_values(*args)
    else:
        raise PolSphereExceptionBadParameterValue(
            f'clebsch_gordan expects CGArgs or six values, got {len(args)} arguments')

    doubled = cg_args.doubled
    if not _selection_rules_hold(*doubled):
        return 0.0
    sign, square = _cg_sign_and_square(*doubled)
    if sign == 0:
        return 0.0
    return sign * math.sqrt(square)


_STRETCHED_FAULT = contextvars.ContextVar('stretched_cg_fault', default=None)


@contextlib.contextmanager
def stretched_cg_fault(spin, rank, scale):
    """Scale one stretched coefficient inside the block (sensitivity checks only).

    Args:
        spin: Spin S whose coefficient is perturbed
        rank: Multipole order K
        scale: Multiplicative factor applied to C^{SS}_{SS,K0}
    """
    spin = HalfInteger.spin(spin)
    token = _STRETCHED_FAULT.set((spin.twice_value, int(rank), float(scale)))
    logger.warning('stretched CG fault injected: S=%s K=%d scale=%r', spin, rank, scale)
    try:
        yield
    finally:
        _STRETCHED_FAULT.reset(token)


def cg_stretched(spin, rank):
    """Stretched coefficient C^{S S}_{S S, K 0}.

    sqrt(2S+1) (2S)! / sqrt((2S-K)! (2S+1+K)!) evaluated in log space.

    Args:
        spin: Spin S (half-integer-like)
        rank: Multipole order K, 0 <= K <= 2S

    Returns:
        float: The (positive) coefficient

    Raises:
        PolSphereExceptionBadParameterValue: If K is outside [0, 2S]
    """
    spin = HalfInteger.spin(spin)
    two_s = spin.twice_value
    if isinstance(rank, bool) or int(rank) != rank or not 0 <= rank <= two_s:
        raise PolSphereExceptionBadParameterValue(f'K must be in [0, {two_s}] for S={spin}, got {rank}')
    rank = int(rank)
    log_value = (0.5 * math.log(two_s + 1) + ln_factorial(two_s)
                 - 0.5 * (ln_factorial(two_s - rank) + ln_factorial(two_s + 1 + rank)))
    value = math.exp(log_value)

    fault = _STRETCHED_FAULT.get()
    if fault is not None and fault[0] == two_s and fault[1] == rank:
        value *= fault[2]
    return value


@functools.lru_cache(maxsize=256)
def _half_angle_powers(twice_j, theta):
    """Exact binary-rational powers of cos(theta/2) and sin(theta/2).

    cos(theta/2) = a / den and sin(theta/2) = b / den exactly (as doubles), so
    cos^p sin^q with p + q = 2j equals a^p b^q / den^(2j).

    Returns:
        tuple: (powers of a, powers of b, den ** twice_j)
    """
    if not math.isfinite(theta):
        raise PolSphereExceptionBadParameterValue(f'rotation angle must be finite, got {theta!r}')
    a, a_den = math.cos(theta / 2).as_integer_ratio()
    b, b_den = math.sin(theta / 2).as_integer_ratio()
    den = max(a_den, b_den)
    a *= den // a_den
    b *= den // b_den
    a_powers = [1]
    b_powers = [1]
    for _ in range(twice_j):
        a_powers.append(a_powers[-1] * a)
        b_powers.append(b_powers[-1] * b)
    return tuple(a_powers), tuple(b_powers), den ** twice_j


def _wigner_d_doubled(twice_j, twice_row, twice_col, theta):
    """d^j_{m' m}(theta) from doubled arguments (row m', column m)."""
    j_plus_col = (twice_j + twice_col) // 2
    j_minus_col = (twice_j - twice_col) // 2
    j_plus_row = (twice_j + twice_row) // 2
    j_minus_row = (twice_j - twice_row) // 2
    delta = (twice_row - twice_col) // 2

    a_powers, b_powers, den = _half_angle_powers(twice_j, float(theta))

    # the alternating sum is carried out in exact integers; the only rounding
    # happens in cos/sin of the input angle and in the final division
    total = 0
    for k in range(max(0, -delta), min(j_plus_col, j_minus_row) + 1):
        term = (math.comb(j_plus_col, k) * math.comb(j_minus_col, k + delta)
                * a_powers[twice_j - 2 * k - delta] * b_powers[2 * k + delta])
        total += -term if (k + delta) % 2 else term
    if total == 0:
        return 0.0

    fact = math.factorial
    prefactor = math.sqrt(Fraction(fact(j_plus_row) * fact(j_minus_row),
                                   fact(j_plus_col) * fact(j_minus_col)))
    return prefactor * (total / den)


def _check_projection(spin, projection, name):
    projection = HalfInteger.from_value(projection)
    if abs(projection.twice_value) > spin.twice_value or (spin.twice_value - projection.twice_value) % 2:
        raise PolSphereExceptionBadParameterValue(f'{name}={projection} is not allowed for S={spin}')
    return projection


def wigner_small_d(spin, m_row, m_col, theta):
    """Wigner small-d element d^S_{m_row, m_col}(theta), Condon-Shortley convention.

    Evaluated with the finite Wigner sum over powers of cos(theta/2) and
    sin(theta/2); the binomial coefficients and the alternating sum are exact.

    Args:
        spin: Spin S
        m_row: Row projection m'
        m_col: Column projection m
        theta: Rotation angle in radians (normally in [0, pi])

    Returns:
        float

    Raises:
        PolSphereExceptionBadParameterValue: If |m| > S or a projection has the wrong parity
    """
    spin = HalfInteger.spin(spin)
    m_row = _check_projection(spin, m_row, 'm_row')
    m_col = _check_projection(spin, m_col, 'm_col')
    return _wigner_d_doubled(spin.twice_value, m_row.twice_value, m_col.twice_value, theta)


def wigner_small_d_matrix(spin, theta):
    """Full (2S+1)x(2S+1) small-d matrix in the m-descending basis.

    Returns:
        numpy.ndarray: Real matrix, entry [i, k] = d^S_{S-i, S-k}(theta)
    """
    spin = HalfInteger.spin(spin)
    twice_j = spin.twice_value
    size = spin.dimension
    result = np.empty((size, size), dtype=REAL_TYPE)
    for row in range(size):
        for col in range(size):
            result[row, col] = _wigner_d_doubled(twice_j, twice_j - 2 * row, twice_j - 2 * col, theta)
    return result


def wigner_small_d_column(spin, m_col, theta):
    """Column d^S_{m', m_col}(theta) for m' = S..-S.

    Returns:
        numpy.ndarray: Real vector of length 2S+1
    """
    spin = HalfInteger.spin(spin)
    m_col = _check_projection(spin, m_col, 'm_col')
    twice_j = spin.twice_value
    return np.array([_wigner_d_doubled(twice_j, twice_j - 2 * row, m_col.twice_value, theta)
                     for row in range(spin.dimension)], dtype=REAL_TYPE)


def projection_values(spin):
    """Projections m = S..-S as floats, in basis order."""
    spin = HalfInteger.spin(spin)
    return np.arange(spin.twice_value, -spin.twice_value - 1, -2, dtype=REAL_TYPE) / 2


def displacement_matrix(spin, theta, phi):
    """Matrix of the Poincare-sphere displacement D(theta, phi) on sector S.

    D_{m' m} = exp(-i m' phi) d^S_{m' m}(theta) exp(i m phi), i.e. the rotation
    with Euler angles (phi, theta, -phi). Its m = -S column is the coherent
    amplitude vector |S; theta, phi>.

    Returns:
        numpy.ndarray: Complex unitary matrix in the m-descending basis
    """
    m_values = projection_values(spin)
    phases = np.exp(-1j * m_values * phi)
    small_d = wigner_small_d_matrix(spin, theta)
    return (phases[:, None] * small_d * np.conj(phases)[None, :]).astype(COMPLEX_TYPE)


@nb.njit(cache=True, parallel=True)
def _legendre_kernel(k_max, cos_theta, sin_theta):
    n_nodes = cos_theta.shape[0]
    out = np.zeros((n_nodes, k_max + 1, k_max + 1))
    for i in nb.prange(n_nodes):
        x = cos_theta[i]
        y = sin_theta[i]
        p_mm = 1.0 / math.sqrt(4.0 * math.pi)
        for m in range(k_max + 1):
            if m > 0:
                p_mm = -p_mm * math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * y
            out[i, m, m] = p_mm
            if m < k_max:
                out[i, m + 1, m] = math.sqrt(2.0 * m + 3.0) * x * p_mm
            for deg in range(m + 2, k_max + 1):
                a = math.sqrt((4.0 * deg * deg - 1.0) / (deg * deg - m * m))
                b = math.sqrt(((deg - 1.0) ** 2 - m * m) / (4.0 * (deg - 1.0) ** 2 - 1.0))
                out[i, deg, m] = a * (x * out[i, deg - 1, m] - b * out[i, deg - 2, m])
    return out


def normalized_legendre_table(k_max, thetas):
    """Orthonormalized associated Legendre functions with Condon-Shortley phase.

    Upward recurrence in degree, stable for K <= 200. Entry [n, K, q] (q >= 0)
    is the theta part of Y_Kq at thetas[n], including the 1/sqrt(4 pi) factor.

    Args:
        k_max: Largest degree K
        thetas: Polar angles in radians (scalar or 1-D array)

    Returns:
        numpy.ndarray: Shape (len(thetas), k_max + 1, k_max + 1)
    """
    if k_max < 0:
        raise PolSphereExceptionBadParameterValue(f'k_max must be >= 0, got {k_max}')
    thetas = np.atleast_1d(np.asarray(thetas, dtype=REAL_TYPE))
    return _legendre_kernel(int(k_max), np.cos(thetas), np.sin(thetas))


def harmonic_phase_matrix(k_max, legendre_row, phi):
    """Y_Kq for one polar angle from its Legendre row, all q in [-k_max, k_max].

    Y_{K,-q} = (-1)^q conj(Y_Kq).

    Returns:
        numpy.ndarray: Shape (k_max + 1, 2 k_max + 1), column q + k_max
    """
    q_values = np.arange(-k_max, k_max + 1)
    signs = np.where((q_values < 0) & (q_values % 2 == 1), -1.0, 1.0)
    theta_part = legendre_row[:, np.abs(q_values)] * signs[None, :]
    valid = np.abs(q_values)[None, :] <= np.arange(k_max + 1)[:, None]
    return np.where(valid, theta_part * np.exp(1j * q_values * phi)[None, :], 0.0).astype(COMPLEX_TYPE)


def spherical_harmonic_table(k_max, theta, phi):
    """All Y_Kq(theta, phi) for K <= k_max.

    Returns:
        numpy.ndarray: Complex array of shape (k_max + 1, 2 k_max + 1);
            entry [K, q + k_max] is Y_Kq, zero where |q| > K
    """
    legendre = normalized_legendre_table(k_max, theta)[0]
    return harmonic_phase_matrix(k_max, legendre, phi)


def spherical_harmonic(rank, q, theta, phi):
    """Spherical harmonic Y_Kq(theta, phi) with Condon-Shortley phase.

    Args:
        rank: Degree K >= 0
        q: Order, |q| <= K
        theta: Polar angle (radians)
        phi: Azimuth (radians)

    Returns:
        complex

    Raises:
        PolSphereExceptionBadParameterValue: If K < 0 or |q| > K
    """
    if rank < 0 or abs(q) > rank:
        raise PolSphereExceptionBadParameterValue(f'need K >= 0 and |q| <= K, got K={rank}, q={q}')
    return complex(spherical_harmonic_table(int(rank), theta, phi)[rank, q + rank])
