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

from cavity_modes import axial
from cavity_modes.plugins.backend import TransverseBase, gauss_legendre
from cavity_modes.transverse import TransverseEigenpair


display = Display()


class ProductEvaluator(object):
    """ v(x1, x2) = w1(x1) w2(x2) from two normalized interval eigenfunctions """

    def __init__(self, first, second):
        self.first = first
        self.second = second

    def __call__(self, x1, x2):
        w1, d1 = self.first.value(x1), self.first.derivative(x1)
        w2, d2 = self.second.value(x2), self.second.derivative(x2)
        v = w1 * w2
        grad = np.array([d1 * w2, w1 * d2])
        return v, grad, -(self.first.mu + self.second.mu) * v


class TransverseBackend(TransverseBase):
    """ Closed-form spectra of the rectangle (0, l1) x (0, l2) """

    def eigenpairs_below(self, bc, lam_max):
        self._check_bc(bc)
        l1, l2 = self.cross_section.l1, self.cross_section.l2
        pairs = list()
        for first in axial.axial_below(bc, l1, lam_max):
            for second in axial.axial_below(bc, l2, lam_max - first.mu):
                lam = first.mu + second.mu
                pairs.append(TransverseEigenpair(lam, bc, (first.m, second.m), ProductEvaluator(first, second)))
        pairs.sort(key=lambda pair: pair.sort_key)
        display.vvvv(u'rectangle: %d %s pairs below %.6g' % (len(pairs), bc, lam_max))
        return pairs

    def bounds(self):
        return (0.0, 0.0), (self.cross_section.l1, self.cross_section.l2)

    def contains(self, x1, x2, tol=1e-12):
        l1, l2 = self.cross_section.l1, self.cross_section.l2
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return (x1 >= -tol) & (x1 <= l1 + tol) & (x2 >= -tol) & (x2 <= l2 + tol)

    def distance_to_boundary(self, x1, x2):
        l1, l2 = self.cross_section.l1, self.cross_section.l2
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return np.minimum(np.minimum(x1, l1 - x1), np.minimum(x2, l2 - x2))

    def sample_boundary(self, count):
        l1, l2 = self.cross_section.l1, self.cross_section.l2
        per_side = max(1, count // 4)
        t = (np.arange(per_side) + 0.5) / per_side
        zeros, ones = np.zeros(per_side), np.ones(per_side)
        x1 = np.concatenate((t * l1, t * l1, zeros, l1 * ones))
        x2 = np.concatenate((zeros, l2 * ones, t * l2, t * l2))
        n1 = np.concatenate((zeros, zeros, -ones, ones))
        n2 = np.concatenate((-ones, ones, zeros, zeros))
        return dict(x1=x1, x2=x2, n1=n1, n2=n2, component=np.zeros(4 * per_side, dtype=int))

    def quadrature(self, order):
        l1, l2 = self.cross_section.l1, self.cross_section.l2
        x1, w1 = gauss_legendre(order, 0.0, l1)
        x2, w2 = gauss_legendre(order, 0.0, l2)
        g1, g2 = np.meshgrid(x1, x2, indexing='ij')
        return g1.ravel(), g2.ravel(), np.outer(w1, w2).ravel()
