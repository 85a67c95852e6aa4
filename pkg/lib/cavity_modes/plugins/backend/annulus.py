# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numpy as np

from cavity_modes import rootfind
from cavity_modes.plugins.backend import circle_boundary
from cavity_modes.plugins.backend.disc import TransverseBackend as DiscBackend
from cavity_modes.radial import LogPotential
from cavity_modes.transverse import TopologicalPotential


class TransverseBackend(DiscBackend):
    """ Cross-product spectra of the annulus r0 < r < R

    The hole is boundary component 1 and carries the potential log r.
    """

    @property
    def r_inner(self):
        return self.cross_section.r0

    def radial_zeros(self, bc, n, k_max):
        cs = self.cross_section
        return list(rootfind.annulus_zeros(bc, n, cs.r0, cs.R, limit=k_max).zeros)

    def topological_potentials(self):
        return [TopologicalPotential(1, LogPotential().evaluate)]

    def sample_boundary(self, count):
        outer = circle_boundary(self.cross_section.R, count - count // 2, 0)
        inner = circle_boundary(self.r_inner, count // 2, 1, inward=True)
        return dict((key, np.concatenate((outer[key], inner[key]))) for key in outer)
