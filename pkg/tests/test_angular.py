"""Tests for angular-momentum special functions."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import polsphere as ps
from polsphere.angular import CGArgs, displacement_matrix, stretched_cg_fault, wigner_small_d_column
from polsphere.constants import LN_FACTORIAL_TABLE_SIZE
from polsphere.exceptions import PolSphereExceptionBadParameterValue, PolSphereExceptionIntegerBudget

from conftest import TOLERANCE


class TestLnFactorial:
    """Tests for ln(n!)."""

    def test_known_value(self):
        """Test ln(5!) against its decimal value."""
        assert abs(ps.ln_factorial(5) - 4.787491742782046) < 1e-14

    @pytest.mark.parametrize('n', [0, 1, 2, 10, 170, 1000, LN_FACTORIAL_TABLE_SIZE, LN_FACTORIAL_TABLE_SIZE + 25])
    def test_matches_lgamma(self, n):
        """Test agreement with lgamma(n + 1) inside and beyond the table."""
        assert ps.ln_factorial(n) == pytest.approx(math.lgamma(n + 1), rel=1e-13, abs=1e-15)

    @pytest.mark.parametrize('n', [-1, 2.5, True])
    def test_rejects_bad_argument(self, n):
        """Test that negative and fractional arguments are rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            ps.ln_factorial(n)


class TestClebschGordan:
    """Tests for Clebsch-Gordan coefficients."""

    @pytest.mark.parametrize('args, expected', [
        (('1/2', '1/2', '1/2', '-1/2', 0, 0), 1 / math.sqrt(2)),
        (('1/2', '-1/2', '1/2', '1/2', 0, 0), -1 / math.sqrt(2)),
        (('1/2', '1/2', '1/2', '1/2', 1, 1), 1.0),
        ((1, 0, 2, 0, 1, 0), -2 / math.sqrt(10)),
        ((1, 1, 1, -1, 0, 0), 1 / math.sqrt(3)),
        ((1, 0, 1, 0, 0, 0), -1 / math.sqrt(3)),
        ((1, 0, 1, 0, 1, 0), 0.0),
        ((1, 1, 1, 0, 2, 1), 1 / math.sqrt(2)),
    ])
    def test_known_values(self, args, expected):
        """Test tabulated coefficients."""
        assert abs(ps.clebsch_gordan(*args) - expected) < TOLERANCE

    @pytest.mark.parametrize('args', [
        (1, 1, 1, 1, 1, 1),       # m1 + m2 != M
        (1, 0, 1, 0, 3, 0),       # triangle rule
        (1, 2, 1, -2, 2, 0),      # |m1| > j1
        ('1/2', 0, 1, 0, 1, 0),   # parity of j - m
    ])
    def test_selection_rules_give_zero(self, args):
        """Test that forbidden couplings return exactly zero."""
        assert ps.clebsch_gordan(*args) == 0.0
        assert not CGArgs.from_values(*args).selection_rules_hold

    def test_accepts_cgargs(self):
        """Test the single-argument form."""
        args = CGArgs.from_values(1, 0, 2, 0, 1, 0)
        assert ps.clebsch_gordan(args) == ps.clebsch_gordan(1, 0, 2, 0, 1, 0)

    def test_wrong_arity(self):
        """Test that anything but CGArgs or six values is rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            ps.clebsch_gordan(1, 0, 1)

    @pytest.mark.parametrize('tj1, tj2', [(tj1, tj2) for tj1 in range(0, 21) for tj2 in range(0, 21)])
    def test_orthogonality(self, tj1, tj2):
        """Test sum over m1 of C^{JM} C^{J'M} = delta_JJ' for all 2j1, 2j2 <= 20."""
        for tM in range(-(tj1 + tj2), tj1 + tj2 + 1, 2):
            m1_values = [tm1 for tm1 in range(-tj1, tj1 + 1, 2) if abs(tM - tm1) <= tj2]
            J_values = [tJ for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2) if tJ >= abs(tM)]
            coupling = np.array([[ps.clebsch_gordan(tj1 / 2, tm1 / 2, tj2 / 2, (tM - tm1) / 2, tJ / 2, tM / 2)
                                  for tJ in J_values] for tm1 in m1_values])
            np.testing.assert_allclose(coupling.T @ coupling, np.eye(len(J_values)), atol=TOLERANCE)

    def test_integer_budget(self):
        """Test that huge arguments raise instead of exhausting memory."""
        with pytest.raises(PolSphereExceptionIntegerBudget):
            ps.clebsch_gordan(40000, 0, 40000, 0, 40000, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.data())
def test_clebsch_gordan_exchange_symmetry(tj1, tj2, data):
    """Test C^{JM}_{j1m1,j2m2} = (-1)^(j1+j2-J) C^{JM}_{j2m2,j1m1}."""
    tJ = data.draw(st.sampled_from(range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)))
    tm1 = data.draw(st.sampled_from(range(-tj1, tj1 + 1, 2)))
    tm2 = data.draw(st.sampled_from(range(-tj2, tj2 + 1, 2)))
    if abs(tm1 + tm2) > tJ:
        return
    sign = -1 if ((tj1 + tj2 - tJ) // 2) % 2 else 1
    forward = ps.clebsch_gordan(tj1 / 2, tm1 / 2, tj2 / 2, tm2 / 2, tJ / 2, (tm1 + tm2) / 2)
    swapped = ps.clebsch_gordan(tj2 / 2, tm2 / 2, tj1 / 2, tm1 / 2, tJ / 2, (tm1 + tm2) / 2)
    assert abs(forward - sign * swapped) < TOLERANCE


class TestStretched:
    """Tests for the stretched coefficient C^{SS}_{SS,K0}."""

    @pytest.mark.parametrize('two_s', range(0, 41))
    def test_matches_racah(self, two_s):
        """Test the log-space closed form against the exact Racah sum for 2S <= 40."""
        for rank in range(two_s + 1):
            exact = ps.clebsch_gordan(two_s / 2, two_s / 2, rank, 0, two_s / 2, two_s / 2)
            assert abs(ps.cg_stretched(two_s / 2, rank) - exact) <= TOLERANCE * abs(exact)

    def test_known_values(self):
        """Test S=1 values 1, 1/sqrt(2), 1/sqrt(10)."""
        np.testing.assert_allclose([ps.cg_stretched(1, k) for k in range(3)],
                                   [1.0, 1 / math.sqrt(2), 1 / math.sqrt(10)], rtol=TOLERANCE)

    @pytest.mark.parametrize('rank', [-1, 3, 1.5])
    def test_rejects_bad_rank(self, rank):
        """Test that K outside [0, 2S] is rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            ps.cg_stretched(1, rank)

    def test_fault_is_scoped(self):
        """Test that an injected fault affects one coefficient and is undone on exit."""
        clean = ps.cg_stretched(1, 2)
        with stretched_cg_fault(1, 2, 2.0):
            assert ps.cg_stretched(1, 2) == pytest.approx(2 * clean, rel=TOLERANCE)
            assert ps.cg_stretched(1, 1) == pytest.approx(1 / math.sqrt(2), rel=TOLERANCE)
        assert ps.cg_stretched(1, 2) == clean


class TestWignerSmallD:
    """Tests for Wigner small-d elements."""

    @pytest.mark.parametrize('theta', [0.0, 0.4, 1.3, math.pi / 2, 2.9, math.pi])
    def test_spin_half_and_one(self, theta):
        """Test closed forms of d^(1/2) and d^1 (Condon-Shortley)."""
        c, s = math.cos(theta), math.sin(theta)
        expected = {
            ('1/2', '1/2', '1/2'): math.cos(theta / 2),
            ('1/2', '1/2', '-1/2'): -math.sin(theta / 2),
            ('1/2', '-1/2', '1/2'): math.sin(theta / 2),
            (1, 1, 1): (1 + c) / 2,
            (1, 1, 0): -s / math.sqrt(2),
            (1, 0, 0): c,
            (1, 1, -1): (1 - c) / 2,
            (1, -1, 0): s / math.sqrt(2),
            (1, 0, -1): -s / math.sqrt(2),
        }
        for (spin, m_row, m_col), value in expected.items():
            assert abs(ps.wigner_small_d(spin, m_row, m_col, theta) - value) < TOLERANCE

    @pytest.mark.parametrize('two_s', [0, 1, 2, 5, 10, 17, 24, 33, 40])
    @pytest.mark.parametrize('theta', [0.1, 1.0, 2.0, 3.0])
    def test_orthogonality(self, two_s, theta):
        """Test d^T d = 1 up to 2S = 40."""
        matrix = ps.wigner_small_d_matrix(two_s / 2, theta)
        np.testing.assert_allclose(matrix.T @ matrix, np.eye(two_s + 1), atol=TOLERANCE)

    def test_identity_at_zero(self):
        """Test d(0) = 1."""
        np.testing.assert_array_equal(ps.wigner_small_d_matrix(3, 0.0), np.eye(7))

    @pytest.mark.parametrize('theta', [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite_angle(self, theta):
        """Test that NaN and infinite angles are rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            ps.wigner_small_d_matrix(1, theta)

    def test_column_matches_matrix(self):
        """Test that a column equals the matching matrix column."""
        matrix = ps.wigner_small_d_matrix('5/2', 1.1)
        np.testing.assert_allclose(wigner_small_d_column('5/2', '-5/2', 1.1), matrix[:, -1], atol=TOLERANCE)

    @pytest.mark.parametrize('m_row, m_col', [(2, 0), ('1/2', 0), (0, -2)])
    def test_rejects_bad_projection(self, m_row, m_col):
        """Test that |m| > S and wrong parity are rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            ps.wigner_small_d(1, m_row, m_col, 0.5)

    @pytest.mark.parametrize('two_s', [1, 2, 6])
    def test_displacement_is_unitary(self, two_s):
        """Test D D^dag = 1 for the displacement matrix."""
        unitary = displacement_matrix(two_s / 2, 0.7, 2.3)
        np.testing.assert_allclose(unitary @ unitary.conj().T, np.eye(two_s + 1), atol=TOLERANCE)


class TestSphericalHarmonics:
    """Tests for Y_Kq with Condon-Shortley phase."""

    def test_known_values(self):
        """Test low-order closed forms."""
        theta, phi = 0.8, 1.9
        assert abs(ps.spherical_harmonic(0, 0, theta, phi) - 1 / math.sqrt(4 * math.pi)) < TOLERANCE
        assert abs(ps.spherical_harmonic(1, 0, theta, phi) - math.sqrt(3 / (4 * math.pi)) * math.cos(theta)) \
            < TOLERANCE
        expected = math.sqrt(3 / (8 * math.pi)) * math.sin(theta) * np.exp(-1j * phi)
        assert abs(ps.spherical_harmonic(1, -1, theta, phi) - expected) < TOLERANCE
        expected = math.sqrt(5 / (16 * math.pi)) * (3 * math.cos(theta) ** 2 - 1)
        assert abs(ps.spherical_harmonic(2, 0, theta, phi) - expected) < TOLERANCE

    def test_condon_shortley_phase(self):
        """Test Y_11(pi/2, 0) = -sqrt(3 / 8 pi)."""
        assert abs(ps.spherical_harmonic(1, 1, math.pi / 2, 0.0) + math.sqrt(3 / (8 * math.pi))) < TOLERANCE

    def test_table_layout(self):
        """Test the (K, q + k_max) layout and zeros where |q| > K."""
        table = ps.spherical_harmonic_table(3, 0.6, 0.2)
        assert table.shape == (4, 7)
        assert table[1, 0] == 0
        assert table[2, 6] == 0
        assert abs(table[2, 3 + 1] - ps.spherical_harmonic(2, 1, 0.6, 0.2)) < TOLERANCE

    def test_legendre_table_shape(self):
        """Test shape of the normalized Legendre table."""
        table = ps.normalized_legendre_table(4, np.array([0.1, 0.2, 0.3]))
        assert table.shape == (3, 5, 5)

    @pytest.mark.parametrize('k_max', [2, 6, 12, 20])
    def test_orthonormality_on_grid(self, k_max):
        """Test that all Y_Kq with K <= k_max are orthonormal under the exact quadrature."""
        grid = ps.build_grid(k_max / 2)
        rows = np.array([ps.spherical_harmonic_table(k_max, theta, phi)
                         for theta, phi in zip(grid.node_thetas, grid.node_phis)]).reshape(grid.size, -1)
        valid = np.abs(np.arange(-k_max, k_max + 1))[None, :] <= np.arange(k_max + 1)[:, None]
        rows = rows[:, valid.reshape(-1)]
        gram = (rows.conj().T * grid.weights[None, :]) @ rows
        np.testing.assert_allclose(gram, np.eye(gram.shape[0]), atol=TOLERANCE)

    @pytest.mark.parametrize('rank, q', [(-1, 0), (2, 3)])
    def test_rejects_bad_order(self, rank, q):
        """Test that K < 0 and |q| > K are rejected."""
        with pytest.raises(PolSphereExceptionBadParameterValue):
            ps.spherical_harmonic(rank, q, 0.1, 0.1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 12), st.data(), st.floats(0, math.pi), st.floats(0, 2 * math.pi))
def test_harmonic_conjugation(rank, data, theta, phi):
    """Test Y_{K,-q} = (-1)^q conj(Y_Kq)."""
    q = data.draw(st.integers(0, rank))
    positive = ps.spherical_harmonic(rank, q, theta, phi)
    negative = ps.spherical_harmonic(rank, -q, theta, phi)
    assert abs(negative - (-1) ** q * positive.conjugate()) < TOLERANCE
