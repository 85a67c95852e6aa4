# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np

from ansible.utils.display import Display

from cavity_modes import rootfind
from cavity_modes.plugins.backend import (TransverseBase, ConstantEvaluator, DIRICHLET, NEUMANN,
                                          circle_boundary, polar_quadrature)
from cavity_modes.radial import RadialMode, COSINE, SINE
from cavity_modes.transverse import TransverseEigenpair


display = Display()


class TransverseBackend(TransverseBase):
    """ Bessel spectra of the disc of radius R centred on the origin

    Eigenpairs are indexed (n, p, parity); every n >= 1 level contributes a
    cosine and a sine eigenfunction.  The Neumann constant is (0, 0, 'c').
    """

    @property
    def r_inner(self):
        return 0.0

    @property
    def area(self):
        return math.pi * (self.cross_section.R ** 2 - self.r_inner ** 2)

    def radial_zeros(self, bc, n, k_max):
        R = self.cross_section.R
        if bc == DIRICHLET:
            sequence = rootfind.j_zeros(n, limit=k_max * R)
        else:
            sequence = rootfind.j_prime_zeros(n, limit=k_max * R)
        return [z / R for z in sequence.zeros]

    def eigenpairs_below(self, bc, lam_max):
        self._check_bc(bc)
        R = self.cross_section.R
        pairs = list()
        if bc == NEUMANN and lam_max >= 0:
            pairs.append(TransverseEigenpair(0.0, bc, (0, 0, COSINE), ConstantEvaluator(self.area)))
        if lam_max <= 0:
            return pairs

        k_max = math.sqrt(lam_max)
        # every eigenvalue of angular order n exceeds (n / R)^2
        for n in range(0, int(k_max * R) + 1):
            for p, k in enumerate(self.radial_zeros(bc, n, k_max), 1):
                if k * k > lam_max:
                    break
                for parity in ((COSINE,) if n == 0 else (COSINE, SINE)):
                    mode = RadialMode(bc, n, k, parity, R, self.r_inner)
                    pairs.append(TransverseEigenpair(k * k, bc, (n, p, parity), mode.evaluate))

        pairs.sort(key=lambda pair: pair.sort_key)
        display.vvvv(u'%s: %d %s pairs below %.6g' % (self.cross_section.shape, len(pairs), bc, lam_max))
        return pairs

    def bounds(self):
        R = self.cross_section.R
        return (-R, -R), (R, R)

    def contains(self, x1, x2, tol=1e-12):
        r = np.hypot(x1, x2)
        return (r <= self.cross_section.R + tol) & (r >= self.r_inner - tol)

    def distance_to_boundary(self, x1, x2):
        r = np.hypot(x1, x2)
        distance = self.cross_section.R - r
        if self.r_inner > 0:
            distance = np.minimum(distance, r - self.r_inner)
        return distance

    def sample_boundary(self, count):
        return circle_boundary(self.cross_section.R, count, 0)

    def quadrature(self, order):
        return polar_quadrature(order, self.r_inner, self.cross_section.R)
