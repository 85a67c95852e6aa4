# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numpy as np

from scipy import ndimage

from ansible.utils.display import Display

from cavity_modes import gridops
from cavity_modes.errors import TruncationError
from cavity_modes.plugins.backend import TransverseBase, DIRICHLET, NEUMANN
from cavity_modes.transverse import TopologicalPotential, TransverseEigenpair


display = Display()

ZERO_RTOL = 1e-10


class TransverseBackend(TransverseBase):
    """ Five-point finite differences on a staircase GridMask

    Dirichlet eigenpairs are indexed (j,) from 1, Neumann eigenpairs from 0
    where (0,) is the constant.  Eigenvectors are scaled to unit discrete
    L2 norm, sum(v^2) h^2 = 1.
    """

    def __init__(self, cross_section):
        super(TransverseBackend, self).__init__(cross_section)
        self.mask = cross_section.mask
        self._operators = dict()
        self._solutions = dict()
        self._potentials = None
        self._distance = None

    @property
    def default_merge_tol(self):
        return 10.0 * self.mask.h ** 2

    def operator(self, bc):
        if bc not in self._operators:
            self._operators[bc] = gridops.laplacian(self.mask, bc)
        return self._operators[bc]

    def _solve(self, bc, count):
        cached = self._solutions.get(bc)
        if cached is not None and cached[0].size >= count:
            return cached

        display.vvv(u'grid backend: %d %s eigenpairs on %d cells' % (count, bc, self.mask.size))
        values, vectors = gridops.smallest_eigenpairs(self.operator(bc), count)
        if bc == NEUMANN and abs(values[0]) <= ZERO_RTOL * max(1.0, abs(values[-1])):
            values[0] = 0.0
        vectors = gridops.deterministic_basis(values, vectors)
        self._solutions[bc] = (values, vectors)
        return values, vectors

    def spectrum(self, bc, count):
        self._check_bc(bc)
        if count > self.mask.size:
            raise TruncationError('%s: %d eigenpairs requested, the grid has %d unknowns'
                                  % (self.mask.source, count, self.mask.size))
        values, vectors = self._solve(bc, count)
        first = 0 if bc == NEUMANN else 1
        pairs = list()
        for col in range(count):
            function = gridops.GridFunction(self.mask, vectors[:, col] / self.mask.h, bc, eigenvalue=values[col])
            pairs.append(TransverseEigenpair(float(values[col]), bc, (first + col,), function.evaluate,
                                             cell_values=function.values[self.mask.interior]))
        return pairs

    def eigenpairs_below(self, bc, lam_max):
        self._check_bc(bc)
        count = min(self.initial_count, self.mask.size)
        while True:
            pairs = self.spectrum(bc, count)
            if pairs[-1].eigenvalue > lam_max:
                return [pair for pair in pairs if pair.eigenvalue <= lam_max]
            if count == self.mask.size:
                raise TruncationError('%s: every %s eigenvalue of the grid lies below %.6g'
                                      % (self.mask.source, bc, lam_max))
            count = min(2 * count, self.mask.size)

    def topological_potentials(self):
        if self._potentials is None:
            self._potentials = list()
            for d in range(1, self.mask.boundary_components):
                traces = {d: 1.0}
                rhs = gridops.boundary_trace_rhs(self.mask, traces)
                values = gridops.solve(self.operator(DIRICHLET), rhs)
                function = gridops.GridFunction(self.mask, values, DIRICHLET, traces=traces)
                self._potentials.append(TopologicalPotential(d, function.evaluate, cell_values=values))
            display.vvv(u'grid backend: %d topological potentials' % len(self._potentials))
        return self._potentials

    def boundary_flux(self, potential, component):
        """ Outward flux of grad v across the faces of one boundary component """
        faces = self.mask.boundary_faces()
        on = faces['component'] == component
        cells = self.mask.cell_index[faces['i'][on], faces['j'][on]]
        trace = np.where(faces['component'][on] == potential.d, 1.0, 0.0)
        return float(np.sum(2.0 * (trace - potential.cell_values[cells])))

    def bounds(self):
        return self.mask.bounds()

    def contains(self, x1, x2, tol=1e-9):
        return self.mask.contains(x1, x2, tol=tol)

    def distance_to_boundary(self, x1, x2):
        # conservative: cell-centre distance minus the reach of a cell
        if self._distance is None:
            padded = np.pad(self.mask.interior, 1, mode='constant', constant_values=False)
            self._distance = ndimage.distance_transform_edt(padded)[1:-1, 1:-1]
        i, j = self.mask.cell_of(x1, x2)
        inside = self.mask.is_interior(i, j)
        result = np.zeros(inside.shape)
        result[inside] = self._distance[i[inside], j[inside]]
        return np.maximum(0.0, (result - 1.5) * self.mask.h)

    def sample_boundary(self, count):
        faces = self.mask.boundary_faces()
        total = faces['i'].size
        pick = np.unique(np.linspace(0, total - 1, min(count, total)).astype(int))
        h = self.mask.h
        centers = self.mask.cell_centers()
        i, j = faces['i'][pick], faces['j'][pick]
        di, dj = faces['di'][pick], faces['dj'][pick]
        return dict(x1=centers[0][i, j] + 0.5 * h * di, x2=centers[1][i, j] + 0.5 * h * dj,
                    n1=di.astype(float), n2=dj.astype(float), component=faces['component'][pick])

    def quadrature(self, order):
        # midpoint rule on the cells, exact for the discrete inner product
        centers = self.mask.cell_centers()
        inside = self.mask.interior
        weights = np.full(self.mask.size, self.mask.h ** 2)
        return centers[0][inside], centers[1][inside], weights
