# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
cavity-modes command line: spectrum, field and verify.

Exit codes: 0 success, 1 failed verification check, 2 configuration
error, 3 solver or library error.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import argparse
import json
import math
import sys

from ansible.module_utils._text import to_text
from ansible.utils.display import Display

from cavity_modes import __version__, assembly, ball, config, epsvar, export, rootfind, verify
from cavity_modes.errors import CavityModesError, ConfigError


display = Display()

EXIT_OK = 0
EXIT_CHECK_FAILED = 1

FLAG_KEYS = (
    'shape', 'a', 'b', 'l', 'r0', 'R', 'lmax', 'kmax', 'walls', 'backend', 'h', 'mask', 'eps', 's',
    'out', 'format', 'seed', 'merge_tol', 'basis', 'select', 'grid', 'modes', 'table',
)

BESSEL_ORDERS = (0, 1, 2)
BESSEL_ZEROS = 3
CUBE_TABLE_LMAX = 26.0


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', help='JSON job file, overridden by flags')
    parser.add_argument('--shape', help='cube, cuboid, cyl, coax, ball or grid')
    parser.add_argument('--a', help='first side (cube side)')
    parser.add_argument('--b', help='second side')
    parser.add_argument('--l', help='cavity length')
    parser.add_argument('--r0', help='inner radius of the coax')
    parser.add_argument('--R', help='outer radius')
    parser.add_argument('--lmax', type=float, help='eigenvalue ceiling')
    parser.add_argument('--kmax', type=float, help='wavenumber ceiling')
    parser.add_argument('--walls', help='cond, ins-ends or mixed-ends')
    parser.add_argument('--backend', help='analytic or grid')
    parser.add_argument('--h', help='grid cell size')
    parser.add_argument('--mask', help='grid cross-section mask file')
    parser.add_argument('--eps', help='relative permittivity file aligned with the grid')
    parser.add_argument('--s', type=float, help='regularization weight of the permittivity solver')
    parser.add_argument('--out', help='output file, stdout when absent')
    parser.add_argument('--format', help='csv, sgrid or json')
    parser.add_argument('--seed', type=int, help='sampling seed of the checks')
    parser.add_argument('--merge-tol', dest='merge_tol', type=float, help='relative merge tolerance')
    parser.add_argument('--basis', help='complex or real spherical harmonics')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='raise verbosity, repeatable')
    return parser


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='cavity-modes', description='Maxwell eigenmodes of simple cavities')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    spectrum = commands.add_parser('spectrum', parents=[common], help='sorted eigenvalue table')
    spectrum.add_argument('--table', help='print a reference table: cube or bessel')

    field = commands.add_parser('field', parents=[common], help='sample one mode on a structured grid')
    field.add_argument('--select', help='FAMILY:key=value,... selecting exactly one mode')
    field.add_argument('--grid', help='nx,ny,nz sample counts')
    field.add_argument('--modes', type=int, help='number of candidate modes when no ceiling is given')

    check = commands.add_parser('verify', parents=[common], help='run the numerical checks')
    check.add_argument('--modes', type=int, help='number of modes to verify')
    return parser


def _emit(text, path):
    if path:
        with open(path, 'w', newline='') as handle:
            handle.write(text)
        display.vvv(u'wrote %s' % path)
    else:
        sys.stdout.write(text)


def _number(value):
    return '%.12g' % value


def cube_table(a=math.pi, lam_max=CUBE_TABLE_LMAX):
    """ The scalar enumeration of the cube eigenvalues as text """
    rows = assembly.cuboid_scalar_table(a, a, a, lam_max)
    return ''.join('%s (mult. %d)\n' % (_number(Lambda), mult) for Lambda, mult in rows)


def bessel_table():
    """ The first zeros of J_n and J'_n for n = 0, 1, 2 """
    lines = list()
    for n in BESSEL_ORDERS:
        zeros = rootfind.j_zeros(n, count=BESSEL_ZEROS).zeros
        primes = rootfind.j_prime_zeros(n, count=BESSEL_ZEROS).zeros
        lines.append('n=%d J: %s | J\': %s' % (n, ' '.join('%.6f' % z for z in zeros),
                                              ' '.join('%.6f' % z for z in primes)))
    return '\n'.join(lines) + '\n'


def _require_ceiling(cfg):
    if cfg.lam_max is None:
        raise ConfigError('one of the following is required: lmax, kmax')
    return cfg.lam_max


def _ball_modes(cfg, count=None):
    if cfg.k_max is not None:
        return ball.ball_spectrum(cfg.R, cfg.k_max, cfg.basis)
    k_max = 3.0 / cfg.R
    while True:
        modes = ball.ball_spectrum(cfg.R, k_max, cfg.basis)
        if len(modes) >= count:
            return modes
        k_max *= 1.5


def _product_modes(cfg, cs, count=None):
    eps = cfg.permittivity(cs)
    if eps is not None:
        if cfg.lam_max is not None:
            modes = epsvar.epsvar_modes(cs, eps, cfg.lam_max, cfg.s)
        else:
            modes = epsvar.lowest_modes(cs, eps, count, cfg.s)
        return modes, 10.0 * eps.mask.h ** 2
    walls = cfg.wall_config()
    if cfg.lam_max is not None:
        modes = assembly.build_modes(cs, cfg.length, walls, cfg.lam_max)
    else:
        modes = verify.lowest_table(cs, cfg.length, walls, count, cfg.merge_tol).modes
    return modes, None


def cmd_spectrum(cfg):
    if cfg.table == 'cube':
        _emit(cube_table(cfg.a or math.pi, cfg.lam_max or CUBE_TABLE_LMAX), cfg.out)
        return EXIT_OK
    if cfg.table == 'bessel':
        _emit(bessel_table(), cfg.out)
        return EXIT_OK

    lam_max = _require_ceiling(cfg)
    cs = cfg.cross_section()
    if cs is None:
        table = assembly.merge_modes(ball.ball_spectrum(cfg.R, cfg.k_max, cfg.basis),
                                     cfg.merge_tol if cfg.merge_tol is not None else verify.STRICT_MERGE_TOL)
    elif cfg.eps is not None:
        modes, merge_tol = _product_modes(cfg, cs)
        table = assembly.merge_modes(modes, cfg.merge_tol if cfg.merge_tol is not None else merge_tol)
    else:
        table = assembly.spectrum_table(cs, cfg.length, cfg.wall_config(), lam_max, cfg.merge_tol)
    display.vvv(u'%d distinct eigenvalues, %d modes' % (len(table), table.total))
    _emit(export.spectrum_text(table, cfg.format or export.CSV), cfg.out)
    return EXIT_OK


def cmd_field(cfg):
    if not cfg.select:
        raise ConfigError('missing required argument: select')
    dims = export.parse_grid(cfg.grid)
    cs = cfg.cross_section()
    if cs is None:
        modes = _ball_modes(cfg, cfg.modes)
    else:
        modes = _product_modes(cfg, cs, cfg.modes)[0]
    mode = export.select_mode(modes, cfg.select)
    _emit(export.export_field(mode, dims, cfg.format or export.SGRID), cfg.out)
    return EXIT_OK


def cmd_verify(cfg):
    cs = cfg.cross_section()
    if cs is None:
        reports = verify.ball_suite(cfg.R, cfg.modes, cfg.seed, cfg.basis)
    else:
        if cfg.eps is not None:
            display.warning(u'verify checks the constant permittivity modes, ignoring %s' % cfg.eps)
        reports = verify.product_suite(cs, cfg.length, cfg.wall_config(), cfg.modes, cfg.seed,
                                       cfg.merge_tol, reference=cfg.reference())
    passed = verify.all_passed(reports)
    document = dict(passed=passed, seed=cfg.seed, checks=[report.to_dict() for report in reports])
    _emit(json.dumps(document, indent=2, sort_keys=True) + '\n', cfg.out)
    for report in reports:
        if not report.passed:
            display.warning(u'check %s failed: residual %.3g > %.3g' % (report.check_name, report.max_residual,
                                                                          report.tolerance))
    return EXIT_OK if passed else EXIT_CHECK_FAILED


COMMANDS = {
    'spectrum': cmd_spectrum,
    'field': cmd_field,
    'verify': cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    display.verbosity = args.verbose
    flags = dict((key, getattr(args, key, None)) for key in FLAG_KEYS)
    try:
        cfg = config.build_config(flags, args.config)
        return COMMANDS[args.command](cfg)
    except CavityModesError as exc:
        display.error(to_text(exc.message), wrap_text=False)
        return exc.exit_code
