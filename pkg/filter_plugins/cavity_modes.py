# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numbers
import os
import sys

from ansible.errors import AnsibleFilterError

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.path.pardir, 'lib'))

from cavity_modes import assembly, ball, config, rootfind  # noqa: E402
from cavity_modes.errors import CavityModesError  # noqa: E402


def _integer(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise AnsibleFilterError('%s must be of type int, got %s' % (name, type(value)))
    if value < minimum:
        raise AnsibleFilterError('%s must be at least %d, got %d' % (name, minimum, value))
    return int(value)


def _real(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise AnsibleFilterError('%s must be of type float, got %s' % (name, type(value)))
    return float(value)


def bessel_zeros(n, count):
    n = _integer('n', n, 0)
    count = _integer('count', count, 1)
    return list(rootfind.j_zeros(n, count=count).zeros)


def bessel_prime_zeros(n, count):
    n = _integer('n', n, 0)
    count = _integer('count', count, 1)
    return list(rootfind.j_prime_zeros(n, count=count).zeros)


def riccati_zeros(n, count, bc='dirichlet', R=1.0):
    n = _integer('n', n, 0)
    count = _integer('count', count, 1)
    if bc not in (rootfind.DIRICHLET, rootfind.NEUMANN):
        raise AnsibleFilterError('bc must be %s or %s, got %s' % (rootfind.DIRICHLET, rootfind.NEUMANN, bc))
    return list(rootfind.riccati_zeros(bc, n, _real('R', R), count=count).zeros)


def maxwell_spectrum(geometry, lmax):
    if not isinstance(geometry, dict):
        raise AnsibleFilterError('value must be of type dict, got %s' % type(geometry))
    lmax = _real('lmax', lmax)
    params = dict((key, value) for key, value in geometry.items() if key not in ('lmax', 'kmax'))
    params['lmax'] = lmax

    cfg = config.validate(params)
    cs = cfg.cross_section()
    if cs is None:
        modes = ball.ball_spectrum(cfg.R, cfg.k_max, cfg.basis)
        table = assembly.merge_modes(modes, cfg.merge_tol if cfg.merge_tol is not None else 1e-9)
    else:
        table = assembly.spectrum_table(cs, cfg.length, cfg.wall_config(), lmax, cfg.merge_tol)
    return table.rows()


def _surface_errors(func):
    def wrapped(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AnsibleFilterError:
            raise
        except CavityModesError as exc:
            raise AnsibleFilterError('%s: %s' % (func.__name__, exc.message))
    wrapped.__name__ = func.__name__
    return wrapped


class FilterModule(object):
    ''' Cavity mode filters '''

    def filters(self):
        return {
            'bessel_zeros': _surface_errors(bessel_zeros),
            'bessel_prime_zeros': _surface_errors(bessel_prime_zeros),
            'riccati_zeros': _surface_errors(riccati_zeros),
            'maxwell_spectrum': _surface_errors(maxwell_spectrum),
        }
