"""Tests for metadata functionality."""
import inspect

import pytest

import polsphere as ps
from polsphere.exceptions import PolSphereExceptionMetadataParseError
from polsphere.metadata import SECTOR_KINDS, _parse_docstring, collect_metadata


class TestMetadata:
    """Tests for metadata functionality."""

    def test_metadata(self):
        """Test that metadata() can be called without errors."""
        result = ps.metadata()

        assert isinstance(result, dict)
        assert len(result) > 0

        for constructor_name, metadata in result.items():
            assert 'name' in metadata
            assert 'signature' in metadata
            assert 'parameters' in metadata
            assert 'required' in metadata
            assert 'sectors' in metadata
            assert 'description' in metadata
            assert metadata['name'] == constructor_name
            assert metadata['sectors'] in SECTOR_KINDS, \
                f"Invalid sectors '{metadata['sectors']}' for {constructor_name}"
            assert set(metadata['required']) <= set(metadata['parameters'])

    def test_metadata_file_is_current(self):
        """Test that metadata.json matches the constructor docstrings."""
        assert ps.metadata() == collect_metadata()

    def test_signatures_match_functions(self):
        """Test that docstring parameters match the get_state_out signatures."""
        for constructor_name, metadata in ps.metadata().items():
            signature = inspect.signature(getattr(ps, constructor_name))
            assert list(signature.parameters) == metadata['parameters']
            required = [name for name, parameter in signature.parameters.items()
                        if parameter.default is inspect.Parameter.empty]
            assert required == metadata['required']

    def test_list(self):
        """Test the human-readable catalogue."""
        text = ps.list()

        assert 'fock(n_h, n_v)' in text
        assert 'Sectors: multiple' in text

    def test_version(self):
        """Test that __version__ is accessible and is a valid version string."""
        assert hasattr(ps, '__version__')
        version = ps.__version__
        assert isinstance(version, str)
        assert len(version) > 0
        assert '.' in version


class TestParseDocstring:
    """Tests for docstring parsing errors."""

    def test_valid(self):
        """Test a minimal valid docstring."""
        result = _parse_docstring('thermal', 'thermal(mean, spin=1)\n\nThermal light.\n\nSectors: multiple')
        assert result['parameters'] == ['mean', 'spin']
        assert result['required'] == ['mean']

    @pytest.mark.parametrize('docstring', [
        None,
        'thermal(mean)\n\nThermal light.',
        'thermal mean\n\nThermal light.\n\nSectors: single',
        'other(mean)\n\nThermal light.\n\nSectors: single',
        'thermal(mean)\n\nThermal light.\n\nSectors: many',
        'thermal(mean)\n\nThermal light.\n\nNo sector line here',
    ])
    def test_invalid(self, docstring):
        """Test that malformed docstrings raise MetadataParseError."""
        with pytest.raises(PolSphereExceptionMetadataParseError):
            _parse_docstring('thermal', docstring)
