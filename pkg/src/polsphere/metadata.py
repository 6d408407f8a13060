"""Constructor metadata parsed from the constructor module docstrings."""
import importlib
import json
import re
from pathlib import Path

from .exceptions import PolSphereExceptionMetadataParseError, PolSphereExceptionMetadataError

SECTOR_KINDS = ('single', 'multiple')

_SIGNATURE = re.compile(r'(?P<name>\w+)\((?P<params>.*)\)')
_SECTORS = re.compile(r'Sectors:\s*(?P<kind>\S*)')


def _split_parameters(params_text):
    """('a, b=1') -> (['a', 'b'], ['a'])"""
    parameters, required = [], []
    for item in filter(None, (part.strip() for part in params_text.split(','))):
        name, has_default, _ = item.partition('=')
        parameters.append(name.strip())
        if not has_default:
            required.append(name.strip())
    return parameters, required


def _parse_docstring(constructor_name, docstring):
    """Parse a constructor module docstring.

    Expected layout (blank lines ignored)::

        name(param, param=default)
        One-line description.
        Sectors: single|multiple

    Args:
        constructor_name: Module name the signature must repeat
        docstring: Module docstring

    Returns:
        dict: name, signature, parameters, required, sectors, description

    Raises:
        PolSphereExceptionMetadataParseError: If the layout is not followed
    """
    lines = [line.strip() for line in (docstring or '').splitlines() if line.strip()]
    if not lines:
        raise PolSphereExceptionMetadataParseError(constructor_name, "docstring is empty or missing")
    if len(lines) < 3:
        raise PolSphereExceptionMetadataParseError(
            constructor_name, f"docstring has {len(lines)} non-empty lines, expected at least 3")

    signature = _SIGNATURE.fullmatch(lines[0])
    if signature is None:
        raise PolSphereExceptionMetadataParseError(
            constructor_name, f"first line is not a call signature: {lines[0]}")
    if signature['name'] != constructor_name:
        raise PolSphereExceptionMetadataParseError(
            constructor_name, f"signature names '{signature['name']}'")

    kinds = [match['kind'] for match in map(_SECTORS.fullmatch, lines[2:]) if match]
    if not kinds:
        raise PolSphereExceptionMetadataParseError(constructor_name, "missing 'Sectors:' line")
    if kinds[0] not in SECTOR_KINDS:
        raise PolSphereExceptionMetadataParseError(
            constructor_name, f"sectors must be one of {SECTOR_KINDS}, got '{kinds[0]}'")

    parameters, required = _split_parameters(signature['params'])
    return {
        'name': constructor_name,
        'signature': lines[0],
        'parameters': parameters,
        'required': required,
        'sectors': kinds[0],
        'description': lines[1],
    }


def _metadata_file():
    return Path(__file__).parent / 'metadata.json'


def collect_metadata():
    """Parse the docstrings of all constructor modules.

    Returns:
        dict: Constructor name -> metadata dict

    Raises:
        PolSphereExceptionMetadataParseError: If a module cannot be imported or parsed
    """
    collected = {}
    for path in sorted((Path(__file__).parent / 'constructors').glob('[!_]*.py')):
        name = path.stem
        try:
            module = importlib.import_module(f'polsphere.constructors.{name}')
        except ImportError as e:
            raise PolSphereExceptionMetadataParseError(name, f"cannot import module: {e}") from e
        collected[name] = _parse_docstring(name, module.__doc__)
    return collected


def create_metadata():
    """Regenerate metadata.json from the constructor modules."""
    text = json.dumps(collect_metadata(), indent=2, ensure_ascii=False)
    _metadata_file().write_text(text + '\n', encoding='utf-8')


def metadata():
    """Metadata of every constructor, read from metadata.json.

    Returns:
        dict: Constructor name -> (name, signature, parameters, required, sectors, description)

    Raises:
        PolSphereExceptionMetadataError: If the file is missing or not valid JSON
    """
    path = _metadata_file()
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise PolSphereExceptionMetadataError(
            f"metadata file not found: {path}. Run create_metadata() first.") from e
    except (OSError, ValueError) as e:
        raise PolSphereExceptionMetadataError(f"cannot read {path.name}: {e}") from e


def list():
    """Human-readable catalogue of the constructors (signature, description, sectors)."""
    blocks = [f"{meta['signature']}\n  {meta['description']}\n  Sectors: {meta['sectors']}\n"
              for _, meta in sorted(metadata().items())]
    return '\n'.join(blocks)
