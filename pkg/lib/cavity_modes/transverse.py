# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Two dimensional Laplace spectra of the cross section.

The spectra come from backend plugins under cavity_modes.plugins.backend,
one per cross-section shape, all loaded through backend_loader.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math
import numbers

from ansible.utils.display import Display

from cavity_modes.errors import DomainError, SolverError
from cavity_modes.gridmask import GridMask
from cavity_modes.plugins import backend_loader


display = Display()

RECTANGLE = 'rectangle'
DISC = 'disc'
ANNULUS = 'annulus'
GRID = 'grid'
SHAPES = (RECTANGLE, DISC, ANNULUS, GRID)

DIRICHLET = 'dirichlet'
NEUMANN = 'neumann'


def index_key(index):
    """ Sort key ordering integer indices numerically and labels textually """
    return tuple((0, item, '') if isinstance(item, numbers.Integral) else (1, 0, str(item)) for item in index)


def _positive(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not (value > 0 and math.isfinite(value)):
        raise DomainError('%s must be a positive number, got %r' % (name, value))
    return float(value)


class CrossSection(object):
    """ Descriptor of the cross section omega

    Use the rectangle(), disc(), annulus() and grid() constructors.  D is
    the number of boundary components, one more than the number of holes.
    """

    def __init__(self, shape, l1=None, l2=None, R=None, r0=None, mask=None):
        if shape not in SHAPES:
            raise DomainError('unknown cross section %r, expected one of %s' % (shape, ', '.join(SHAPES)))
        self.shape = shape
        self.l1 = l1
        self.l2 = l2
        self.R = R
        self.r0 = r0
        self.mask = mask
        self._backend = None

    def __repr__(self):
        if self.shape == RECTANGLE:
            return 'CrossSection(rectangle, l1=%.17g, l2=%.17g)' % (self.l1, self.l2)
        if self.shape == DISC:
            return 'CrossSection(disc, R=%.17g)' % self.R
        if self.shape == ANNULUS:
            return 'CrossSection(annulus, r0=%.17g, R=%.17g)' % (self.r0, self.R)
        return 'CrossSection(grid, %s)' % self.mask.source

    @property
    def D(self):
        if self.shape == ANNULUS:
            return 2
        if self.shape == GRID:
            return self.mask.boundary_components
        return 1

    @property
    def is_analytic(self):
        return self.shape != GRID

    @classmethod
    def rectangle(cls, l1, l2):
        return cls(RECTANGLE, l1=_positive('l1', l1), l2=_positive('l2', l2))

    @classmethod
    def disc(cls, R):
        return cls(DISC, R=_positive('R', R))

    @classmethod
    def annulus(cls, r0, R):
        r0, R = _positive('r0', r0), _positive('R', R)
        if not r0 < R:
            raise DomainError('annulus radii must satisfy 0 < r0 < R, got r0=%r R=%r' % (r0, R))
        return cls(ANNULUS, r0=r0, R=R)

    @classmethod
    def grid(cls, mask):
        if not isinstance(mask, GridMask):
            raise DomainError('grid cross section needs a GridMask, got %s' % type(mask).__name__)
        return cls(GRID, mask=mask)


class TransverseEigenpair(object):
    """ Eigenpair of -Laplacian on the cross section

    :param eigenvalue: lambda
    :param bc: DIRICHLET or NEUMANN
    :param index: backend specific tuple
    :param evaluator: callable (x1, x2) -> (v, grad v, lap v)
    """

    def __init__(self, eigenvalue, bc, index, evaluator, cell_values=None):
        self.eigenvalue = float(eigenvalue)
        self.bc = bc
        self.index = tuple(index)
        self.evaluator = evaluator
        self.cell_values = cell_values

    def __repr__(self):
        return 'TransverseEigenpair(%s, %r, lambda=%.17g)' % (self.bc, self.index, self.eigenvalue)

    @property
    def sort_key(self):
        return (self.eigenvalue, index_key(self.index))

    @property
    def label(self):
        return '.'.join(str(i) for i in self.index)

    def evaluate(self, x1, x2):
        return self.evaluator(x1, x2)


class TopologicalPotential(object):
    """ Harmonic function with constant trace on each boundary component

    :param d: hole number, 1 <= d <= D - 1
    :param evaluator: callable (x1, x2) -> (v, grad v, ...)
    """

    def __init__(self, d, evaluator, cell_values=None):
        self.d = d
        self.evaluator = evaluator
        self.cell_values = cell_values

    def __repr__(self):
        return 'TopologicalPotential(d=%d)' % self.d

    @property
    def label(self):
        return str(self.d)

    def evaluate(self, x1, x2):
        result = self.evaluator(x1, x2)
        return result[0], result[1]


def backend(cs):
    """ The backend plugin serving cs, created once per cross section """
    if cs._backend is None:
        plugin = backend_loader.get(cs.shape, cs)
        if plugin is None:
            raise SolverError('no transverse backend available for %r' % cs.shape)
        display.vvv(u'transverse backend %s for %r' % (cs.shape, cs))
        cs._backend = plugin
    return cs._backend


def _check_count(count):
    if isinstance(count, bool) or not isinstance(count, numbers.Integral) or count < 1:
        raise DomainError('count must be a positive integer, got %r' % (count,))


def dirichlet_spectrum(cs, count):
    """ The count smallest Dirichlet eigenpairs, L2 orthonormal """
    _check_count(count)
    return backend(cs).spectrum(DIRICHLET, count)


def neumann_spectrum(cs, count):
    """ The count smallest Neumann eigenpairs, starting with the constant """
    _check_count(count)
    return backend(cs).spectrum(NEUMANN, count)


def eigenpairs_below(cs, bc, lam_max):
    return backend(cs).eigenpairs_below(bc, lam_max)


def topological_potentials(cs):
    """ One potential per hole, an empty list when D = 1 """
    return list(backend(cs).topological_potentials())
