"""Tests for the self-verification checks."""
import math

import pytest

from polsphere.verify import CHECKS, DEFAULT_FAULT, CheckResult, VerifyResult, builtin_states, run_verify
from polsphere.state import purity


@pytest.fixture(scope='module')
def clean_result():
    """Run all checks once with the default seed."""
    return run_verify()


class TestRunVerify:
    """Tests for run_verify."""

    def test_all_checks_pass(self, clean_result):
        """Test that every check passes without a fault."""
        assert clean_result.all_passed, clean_result.render()
        assert clean_result.failed == []
        assert [check.name for check in clean_result.checks] == [name for name, _, _ in CHECKS]

    def test_render(self, clean_result):
        """Test the seed header, one line per check and the summary line."""
        lines = clean_result.render().strip().split('\n')

        assert lines[0] == 'seed 20240521'
        assert len(lines) == len(CHECKS) + 2
        assert lines[-1] == 'all checks passed'

    def test_fault_is_detected(self):
        """Test that a perturbed stretched coefficient breaks route equivalence."""
        result = run_verify(fault=DEFAULT_FAULT)

        assert not result.all_passed
        assert 'route_equivalence' in result.failed
        assert 'stretched_cg' in result.failed
        assert 'cg_orthogonality' not in result.failed

    def test_fault_is_scoped(self):
        """Test that the fault does not leak into later runs."""
        run_verify(fault=DEFAULT_FAULT)
        result = run_verify(seed=7)

        assert result.all_passed, result.render()
        assert result.render().startswith('seed 7\n')


class TestResults:
    """Tests for the result containers."""

    @pytest.mark.parametrize('max_error, passed', [(0.0, True), (1e-12, True), (2e-12, False), (math.inf, False)])
    def test_check_passed(self, max_error, passed):
        """Test the tolerance comparison."""
        check = CheckResult(name='probe', max_error=max_error, tolerance=1e-12)
        assert check.passed is passed
        assert check.render().startswith('PASS probe' if passed else 'FAIL probe')

    def test_failed_summary(self):
        """Test the summary line listing failed checks."""
        result = VerifyResult(checks=(CheckResult('first', 0.0, 1.0), CheckResult('second', 2.0, 1.0)), seed=1)
        assert result.render().strip().split('\n')[-1] == 'failed: second'


class TestBuiltinStates:
    """Tests for the named built-in states."""

    def test_names(self):
        """Test that every constructor is represented."""
        names = set(builtin_states())
        for prefix in ('vacuum', 'fock', 'coherent_su2', 'noon', 'two_mode_coherent', 'mixture'):
            assert any(name.startswith(prefix) for name in names)

    def test_normalized(self):
        """Test that the sector weights add up to one."""
        for name, state in builtin_states().items():
            total = sum(block.trace for block in state.sectors.values())
            assert total == pytest.approx(1.0, abs=1e-10), name

    def test_pure_fock(self):
        """Test that the single-sector Fock state is pure."""
        state = builtin_states()['fock(1,1)']
        assert purity(state.sector(1)) == pytest.approx(1.0, abs=1e-12)
