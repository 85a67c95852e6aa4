# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numpy as np

from ansible.utils.display import Display

from cavity_modes.errors import DomainError


display = Display()

DIRICHLET = 'dirichlet'
NEUMANN = 'neumann'


class TransverseBase(object):
    """ Laplace spectra and geometry of one cross section

    Backends implement spectrum() or eigenpairs_below(), each default is
    written in terms of the other, and the geometry helpers used by the
    verification layer.
    """

    initial_count = 16
    default_merge_tol = 1e-9

    def __init__(self, cross_section):
        self.cross_section = cross_section

    def _check_bc(self, bc):
        if bc not in (DIRICHLET, NEUMANN):
            raise DomainError('boundary condition must be %s or %s, got %r' % (DIRICHLET, NEUMANN, bc))

    def initial_bound(self):
        (lo1, lo2), (hi1, hi2) = self.bounds()
        return 40.0 / ((hi1 - lo1) * (hi2 - lo2))

    def spectrum(self, bc, count):
        """ The count smallest eigenpairs for bc, sorted by (eigenvalue, index) """
        self._check_bc(bc)
        bound = self.initial_bound()
        while True:
            pairs = self.eigenpairs_below(bc, bound)
            if len(pairs) >= count:
                return pairs[:count]
            display.vvvv(u'%s: %d %s pairs below %.6g, doubling' % (type(self).__module__, len(pairs), bc, bound))
            bound *= 2.0

    def eigenpairs_below(self, bc, lam_max):
        """ Every eigenpair for bc with eigenvalue <= lam_max """
        self._check_bc(bc)
        count = self.initial_count
        while True:
            pairs = self.spectrum(bc, count)
            if pairs[-1].eigenvalue > lam_max:
                return [pair for pair in pairs if pair.eigenvalue <= lam_max]
            count *= 2

    def topological_potentials(self):
        return []

    def bounds(self):
        raise NotImplementedError

    def contains(self, x1, x2, tol=1e-12):
        raise NotImplementedError

    def distance_to_boundary(self, x1, x2):
        raise NotImplementedError

    def sample_boundary(self, count):
        """ Deterministic boundary points

        :returns: dict of arrays x1, x2, n1, n2 (outward normal of the cross
            section) and component (0 outer boundary, d >= 1 hole d)
        """
        raise NotImplementedError

    def quadrature(self, order):
        """ Nodes and weights integrating over the cross section

        :returns: tuple (x1, x2, weights)
        """
        raise NotImplementedError

    def sample_interior(self, count, rng, margin=0.0):
        """ Uniform random points at distance > margin from the boundary """
        (lo1, lo2), (hi1, hi2) = self.bounds()
        found1, found2 = [], []
        total = 0
        for attempt in range(1000):
            x1 = rng.uniform(lo1, hi1, 4 * count)
            x2 = rng.uniform(lo2, hi2, 4 * count)
            keep = self.contains(x1, x2) & (self.distance_to_boundary(x1, x2) > margin)
            found1.append(x1[keep])
            found2.append(x2[keep])
            total += int(keep.sum())
            if total >= count:
                break
        else:
            raise DomainError('no interior point at distance %g from the boundary' % margin)
        return np.concatenate(found1)[:count], np.concatenate(found2)[:count]


def gauss_legendre(order, lower, upper):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (upper - lower)
    return lower + half * (nodes + 1.0), half * weights


def circle_boundary(radius, count, component, inward=False):
    phi = 2.0 * np.pi * (np.arange(count) + 0.5) / count
    sign = -1.0 if inward else 1.0
    return dict(x1=radius * np.cos(phi), x2=radius * np.sin(phi),
                n1=sign * np.cos(phi), n2=sign * np.sin(phi),
                component=np.full(count, component))


def polar_quadrature(order, r_inner, R):
    r, wr = gauss_legendre(order, r_inner, R)
    count = 2 * order
    phi = 2.0 * np.pi * np.arange(count) / count
    rr, pp = np.meshgrid(r, phi, indexing='ij')
    weights = np.outer(wr * r, np.full(count, 2.0 * np.pi / count))
    return (rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel(), weights.ravel()


class ConstantEvaluator(object):
    """ The normalized constant, Neumann eigenfunction of eigenvalue 0 """

    def __init__(self, area):
        self.value = 1.0 / np.sqrt(area)

    def __call__(self, x1, x2):
        shape = np.broadcast(np.asarray(x1), np.asarray(x2)).shape
        v = np.full(shape, self.value)
        return v, np.zeros((2,) + shape), np.zeros(shape)
