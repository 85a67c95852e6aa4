# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Job configuration: argument spec defaults < JSON file < command line flags.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import json
import math
import os

import yaml

from ansible.module_utils.common.arg_spec import ArgumentSpecValidator
from ansible.module_utils.six import iteritems
from ansible.utils.display import Display

from cavity_modes import assembly, epsvar, transverse
from cavity_modes.errors import ConfigError, DomainError
from cavity_modes.gridmask import GridMask
from cavity_modes.utils import dict_merge, parse_dimension


display = Display()

ROLE_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
SPEC_PATH = os.path.join(ROLE_ROOT, 'meta', 'job_spec.yaml')

VALID_SPEC_KWARGS = (
    'argument_spec', 'mutually_exclusive', 'required_if',
    'required_one_of', 'required_together'
)

CUSTOM_TYPES = {
    'dimension': parse_dimension,
}

PRODUCT_SHAPES = ('cube', 'cuboid', 'cyl', 'coax', 'grid')


def _resolve_types(argument_spec):
    for key, attrs in iteritems(argument_spec):
        if attrs is None:
            argument_spec[key] = {'type': 'str'}
        elif attrs.get('type') in CUSTOM_TYPES:
            attrs['type'] = CUSTOM_TYPES[attrs['type']]
    return argument_spec


def load_spec(path=SPEC_PATH):
    """ Argument spec keywords from the YAML argument spec file """
    display.vvvv(u'using job spec %s' % path)
    try:
        with open(path, 'r') as handle:
            spec = yaml.safe_load(handle)
    except (IOError, OSError) as exc:
        raise ConfigError('unable to read job spec %s: %s' % (path, exc))
    except yaml.YAMLError as exc:
        raise ConfigError('invalid job spec %s: %s' % (path, exc))

    if not isinstance(spec, dict) or 'argument_spec' not in spec:
        raise ConfigError('missing required field in argument spec file: argument_spec')
    spec = dict((k, v) for k, v in iteritems(spec) if k in VALID_SPEC_KWARGS)
    _resolve_types(spec['argument_spec'])
    return spec


def load_json(path):
    """ Job parameters from a JSON file """
    try:
        with open(path, 'r') as handle:
            text = handle.read()
    except (IOError, OSError) as exc:
        raise ConfigError('unable to read config file %s: %s' % (path, exc))
    try:
        params = json.loads(text)
    except ValueError as exc:
        lineno, colno = getattr(exc, 'lineno', 0), getattr(exc, 'colno', 0)
        raise ConfigError('%s line %d column %d: %s' % (path, lineno, colno, getattr(exc, 'msg', exc)))
    if not isinstance(params, dict):
        raise ConfigError('%s line 1 column 1: the configuration must be a JSON object' % path)
    return params


def validate(params, spec=None):
    """ Validated JobConfig from raw parameters """
    spec = spec or load_spec()
    validator = ArgumentSpecValidator(**spec)
    result = validator.validate(params)
    if result.error_messages:
        raise ConfigError('invalid job configuration: %s' % '; '.join(result.error_messages))
    return JobConfig(result.validated_parameters)


def build_config(flags, path=None, spec=None):
    """ Merge the config file under the flags and validate the result

    :param flags: dict of command line values, None for flags not given
    :param path: optional JSON config file
    """
    params = load_json(path) if path else dict()
    params = dict_merge(params, dict((k, v) for k, v in iteritems(flags) if v is not None))
    display.vvvv(u'job parameters: %s' % ', '.join('%s=%s' % item for item in sorted(iteritems(params))))
    return validate(params, spec)


class JobConfig(object):
    """ Validated job parameters with the geometry they describe """

    def __init__(self, params):
        self.params = dict(params)

    def __getattr__(self, name):
        try:
            return self.__dict__['params'][name]
        except KeyError:
            raise AttributeError(name)

    def to_dict(self):
        return dict(self.params)

    @property
    def is_ball(self):
        return self.shape == 'ball'

    @property
    def length(self):
        if self.shape == 'cube':
            return self.a
        return self.l

    @property
    def lam_max(self):
        if self.kmax is not None:
            return self.kmax ** 2
        return self.lmax

    @property
    def k_max(self):
        if self.kmax is not None:
            return self.kmax
        return self.lmax ** 0.5 if self.lmax is not None else None

    def wall_config(self):
        return assembly.WallConfig.from_flag(self.params['walls'])

    def _grid_step(self):
        if self.h is None:
            raise ConfigError('the grid backend needs the cell size h')
        return self.h

    def mask(self):
        if self.shape == 'grid':
            return GridMask.from_file(self.params['mask'])
        h = self._grid_step()
        if self.shape == 'cube':
            return GridMask.rectangle(self.a, self.a, h)
        if self.shape == 'cuboid':
            return GridMask.rectangle(self.a, self.b, h)
        if self.shape == 'cyl':
            return GridMask.disc(self.R, h)
        return GridMask.annulus(self.r0, self.R, h)

    def analytic_cross_section(self):
        if self.shape == 'cube':
            return transverse.CrossSection.rectangle(self.a, self.a)
        if self.shape == 'cuboid':
            return transverse.CrossSection.rectangle(self.a, self.b)
        if self.shape == 'cyl':
            return transverse.CrossSection.disc(self.R)
        if self.shape == 'coax':
            return transverse.CrossSection.annulus(self.r0, self.R)
        return None

    def cross_section(self):
        """ The cross section served by the requested backend, None for the ball """
        if self.shape is None:
            raise ConfigError('missing required argument: shape')
        if self.shape not in PRODUCT_SHAPES:
            return None
        try:
            if self.shape == 'grid' or self.backend == 'grid':
                return transverse.CrossSection.grid(self.mask())
            return self.analytic_cross_section()
        except DomainError as exc:
            raise ConfigError('invalid geometry: %s' % exc)

    def permittivity(self, cs):
        """ PermittivityMap of the eps file on the grid of cs, None without one """
        if self.eps is None:
            return None
        if abs(self.length - math.pi) > 1e-12:
            raise ConfigError('variable permittivity needs the length pi, got %.17g' % self.length)
        if self.walls != 'cond':
            raise ConfigError('variable permittivity supports conducting walls only, got %s' % self.walls)
        if cs.shape == transverse.GRID:
            mask = cs.mask
        elif cs.shape == transverse.RECTANGLE:
            mask = GridMask.rectangle(cs.l1, cs.l2, self._grid_step())
        else:
            raise ConfigError('variable permittivity needs a rectangular or grid cross section, got %s' % self.shape)
        return epsvar.PermittivityMap.from_file(mask, self.eps)

    def reference(self):
        """ Analytic counterpart of a grid backend run, None otherwise """
        if self.backend == 'grid' and self.shape in ('cube', 'cuboid', 'cyl', 'coax'):
            return self.analytic_cross_section()
        return None
