"""Command-line front end.

    polsphere multipoles --state '{"type": "fock", "n_h": 1, "n_v": 1}' --out table.csv
    polsphere qgrid --state spec.json --kmax 4 --grid 32x64 --out field.csv
    polsphere areas --state spec.json --format json --out areas.json
    polsphere areas --coherent-sweep 1,5,10 --out sweep.csv
    polsphere verify --seed 7
    polsphere info

Exit codes: 0 success, 1 failed verification, 2 schema error, 3 computation error.
"""
import argparse
import logging
import os
import re
import sys

import numba as nb

from . import __version__
from .constants import THREADS_ENV_VAR
from .exceptions import PolSphereException, PolSphereExceptionBadParameterValue, PolSphereExceptionBadSpec
from .half_integer import HalfInteger
from .measures import area_report, coherent_sweep, hidden_polarization
from .metadata import list as list_constructors
from .multipole import extract_multipoles, multipole_strength
from .qfunction import evaluate_field
from .sphere_grid import build_grid, grid_from_sizes
from .state_spec import build_state, parse_spec
from .verify import DEFAULT_FAULT, DEFAULT_SEED, run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SCHEMA = 2
EXIT_COMPUTATION = 3


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser reporting usage errors as one schema-error line."""

    def error(self, message):
        raise PolSphereExceptionBadSpec(message)


def _parse_kmax(text):
    if text == 'auto':
        return None
    if not re.fullmatch(r'\d+', text):
        raise argparse.ArgumentTypeError(f"--kmax must be 'auto' or a non-negative integer, got {text!r}")
    return int(text)


def _parse_grid(text):
    match = re.fullmatch(r'(\d+)x(\d+)', text)
    if not match or int(match.group(1)) < 1 or int(match.group(2)) < 1:
        raise argparse.ArgumentTypeError(f'--grid must look like NTHETAxNPHI, got {text!r}')
    return int(match.group(1)), int(match.group(2))


def _parse_spins(text):
    try:
        return [HalfInteger.spin(item) for item in text.split(',') if item.strip()]
    except PolSphereExceptionBadParameterValue as e:
        raise argparse.ArgumentTypeError(f'--coherent-sweep: {e.reason}')


def build_parser():
    """Argument parser of the polsphere command."""
    parser = _ArgumentParser(prog='polsphere',
                             description='Multipoles, Q functions and effective areas of polarization states.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    common = _ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logging')
    common.add_argument('--out', default='-', help='output file (default: stdout)')
    common.add_argument('--format', choices=('csv', 'json'), default='csv', help='output format')

    state_options = _ArgumentParser(add_help=False)
    state_options.add_argument('--kmax', type=_parse_kmax, default=None, help="highest multipole order or 'auto'")
    state_options.add_argument('--grid', type=_parse_grid, default=None, help='grid override NTHETAxNPHI')

    multipoles = subparsers.add_parser('multipoles', parents=[common, state_options],
                                       help='write the state multipoles rho_Kq')
    multipoles.add_argument('--state', required=True, help='state specification (JSON text or file)')

    qgrid = subparsers.add_parser('qgrid', parents=[common, state_options],
                                  help='write Q and its components on a sphere grid')
    qgrid.add_argument('--state', required=True, help='state specification (JSON text or file)')

    areas = subparsers.add_parser('areas', parents=[common, state_options], help='write effective areas')
    areas.add_argument('--state', help='state specification (JSON text or file)')
    areas.add_argument('--coherent-sweep', type=_parse_spins, default=None, metavar='S,...',
                       help='coherent-state areas A_K for the listed spins instead of a state')

    verify = subparsers.add_parser('verify', parents=[common], help='run the self-verification suite')
    verify.add_argument('--seed', type=int, default=DEFAULT_SEED, help='seed of the random corpus')
    verify.add_argument('--inject-fault', action='store_true',
                        help='perturb one stretched CG coefficient (the suite must fail)')

    subparsers.add_parser('info', parents=[common], help='list the state constructors')
    return parser


def _configure_logging(verbosity):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')
    logging.captureWarnings(True)


def _configure_threads():
    value = os.environ.get(THREADS_ENV_VAR)
    if value is None:
        return
    if not re.fullmatch(r'\d+', value) or int(value) < 1:
        raise PolSphereExceptionBadSpec(f'{THREADS_ENV_VAR} must be a positive integer, got {value!r}')
    threads = min(int(value), nb.config.NUMBA_NUM_THREADS)
    nb.set_num_threads(threads)
    logger.info('numba thread pool set to %d', threads)


def _write(series, args):
    if args.out == '-':
        sys.stdout.write(series.to_csv() if args.format == 'csv' else series.to_json())
    elif args.format == 'csv':
        series.to_csv(args.out)
    else:
        series.to_json(args.out)


def _summary(args, line):
    # with data on stdout the summary would corrupt it
    if args.out == '-':
        logger.info(line)
    else:
        print(line)


def _load_state(args):
    spec = parse_spec(args.state)
    state = build_state(spec)
    return spec, state


def _grid(args, state):
    if args.grid is None:
        return build_grid(state.max_spin)
    logger.warning('using user grid %dx%d instead of the exact grid for S_max=%s',
                   args.grid[0], args.grid[1], state.max_spin)
    return grid_from_sizes(*args.grid)


def cmd_multipoles(args):
    """Write the multipole records of a state and print per-K strengths."""
    spec, state = _load_state(args)
    table = extract_multipoles(state, k_max=args.kmax)
    records = table.records()
    records.metadata['state'] = spec.to_dict()
    _write(records, args)

    max_rank = max(table.k_limits.values())
    for rank in range(max_rank + 1):
        _summary(args, f'K={rank} strength={multipole_strength(table, rank):.17g}')
    return EXIT_OK


def cmd_qgrid(args):
    """Write the Q field (total and per-K components) on a sphere grid."""
    spec, state = _load_state(args)
    field = evaluate_field(state, _grid(args, state), k_max=args.kmax)
    field.metadata['state'] = spec.to_dict()
    _write(field, args)
    return EXIT_OK


def cmd_areas(args):
    """Write the effective-area report of a state, or the coherent-state sweep."""
    if args.coherent_sweep is not None:
        if args.state is not None:
            raise PolSphereExceptionBadSpec('--state and --coherent-sweep are mutually exclusive')
        _write(coherent_sweep(args.coherent_sweep), args)
        return EXIT_OK
    if args.state is None:
        raise PolSphereExceptionBadSpec('areas needs --state or --coherent-sweep')

    spec, state = _load_state(args)
    grid = _grid(args, state)
    report = area_report(state, grid, k_max=args.kmax)
    hidden = hidden_polarization(state, grid)

    table = report.table()
    table.metadata['state'] = spec.to_dict()
    table.metadata['hidden_polarization'] = {
        'dipole_area': hidden.dipole_area,
        'higher_area': hidden.higher_area,
        'verdict': hidden.verdict,
    }
    _write(table, args)
    _summary(args, f'hidden_polarization={str(hidden.verdict).lower()}')
    return EXIT_OK


def cmd_verify(args):
    """Run the verification suite and print the pass/fail matrix."""
    result = run_verify(seed=args.seed, fault=DEFAULT_FAULT if args.inject_fault else None)
    text = result.render()
    if args.out == '-':
        sys.stdout.write(text)
    else:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
    return EXIT_OK if result.all_passed else EXIT_VERIFY_FAILED


def cmd_info(args):
    """Print the constructor catalogue."""
    sys.stdout.write(list_constructors())
    return EXIT_OK


COMMANDS = {
    'multipoles': cmd_multipoles,
    'qgrid': cmd_qgrid,
    'areas': cmd_areas,
    'verify': cmd_verify,
    'info': cmd_info,
}


def main(argv=None):
    """Entry point of the polsphere console script.

    Returns:
        int: Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        _configure_threads()
        return COMMANDS[args.command](args)
    except PolSphereExceptionBadSpec as e:
        print(f'error: schema: {e.reason}', file=sys.stderr)
        return EXIT_SCHEMA
    except PolSphereException as e:
        print(f'error: computation: {e}', file=sys.stderr)
        return EXIT_COMPUTATION
    except OSError as e:
        print(f'error: computation: {e}', file=sys.stderr)
        return EXIT_COMPUTATION
