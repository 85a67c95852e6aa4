# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Cell-centred finite-difference operators on a GridMask and the symmetric
eigensolver shared by the grid backend and the variable-permittivity solver.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numpy as np

from scipy import linalg, ndimage, sparse
from scipy.sparse import linalg as sparse_linalg

from ansible.utils.display import Display

from cavity_modes.errors import SolverError
from cavity_modes.gridmask import DIRECTIONS


display = Display()

DIRICHLET = 'dirichlet'
NEUMANN = 'neumann'

DENSE_LIMIT = 5000
SHIFT = -1.0
CLUSTER_RTOL = 1e-8

DIAGONALS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def laplacian(mask, bc):
    """ Five-point -Laplacian on the interior cells of mask

    Boundary faces use ghost reflection across the face: antisymmetric for
    Dirichlet (adds 2/h^2 to the diagonal), symmetric for Neumann (drops the
    link).

    :returns: scipy.sparse csr matrix, symmetric
    """
    if bc not in (DIRICHLET, NEUMANN):
        raise SolverError('unknown boundary condition %r' % (bc,))

    h2 = mask.h ** 2
    ii, jj = np.nonzero(mask.interior)
    rows = mask.cell_index[ii, jj]
    diagonal = np.zeros(mask.size)
    data, row_idx, col_idx = [], [], []

    for di, dj in DIRECTIONS:
        ni, nj = ii + di, jj + dj
        inner = mask.is_interior(ni, nj)
        diagonal[rows[inner]] += 1.0 / h2
        row_idx.append(rows[inner])
        col_idx.append(mask.cell_index[ni[inner], nj[inner]])
        data.append(np.full(int(inner.sum()), -1.0 / h2))
        if bc == DIRICHLET:
            diagonal[rows[~inner]] += 2.0 / h2

    row_idx.append(np.arange(mask.size))
    col_idx.append(np.arange(mask.size))
    data.append(diagonal)

    matrix = sparse.coo_matrix((np.concatenate(data), (np.concatenate(row_idx), np.concatenate(col_idx))),
                               shape=(mask.size, mask.size))
    return matrix.tocsr()


def boundary_trace_rhs(mask, traces):
    """ Right-hand side contributed by Dirichlet traces on the boundary faces

    :param traces: dict mapping boundary component id to its trace value
    """
    faces = mask.boundary_faces()
    rhs = np.zeros(mask.size)
    values = np.array([traces.get(int(c), 0.0) for c in faces['component']])
    np.add.at(rhs, mask.cell_index[faces['i'], faces['j']], 2.0 * values / mask.h ** 2)
    return rhs


def _orthonormalize(vectors, mass):
    gram = vectors.T @ (mass @ vectors) if mass is not None else vectors.T @ vectors
    lower = linalg.cholesky(gram, lower=True)
    return linalg.solve_triangular(lower, vectors.T, lower=True).T


def deterministic_basis(values, vectors, mass=None, rtol=CLUSTER_RTOL):
    """ Fix the basis inside every degenerate cluster

    Within a cluster of c eigenvalues the pivot rows chosen by a column
    pivoted QR of the cluster block are mapped to the identity, then the
    block is re-orthonormalized in index order.  Every vector is finally
    signed so that its largest entry is positive.
    """
    vectors = np.array(vectors, copy=True)
    scale = max(1.0, float(np.max(np.abs(values)))) if len(values) else 1.0
    start = 0
    while start < len(values):
        stop = start + 1
        while stop < len(values) and abs(values[stop] - values[start]) <= rtol * max(scale, abs(values[start])):
            stop += 1
        if stop - start > 1:
            block = vectors[:, start:stop]
            pivots = linalg.qr(block.T, pivoting=True, mode='r')[1][:stop - start]
            block = block @ linalg.inv(block[pivots, :])
            vectors[:, start:stop] = _orthonormalize(block, mass)
            display.vvvv(u'fixed basis of a %d-fold cluster at %.12g' % (stop - start, values[start]))
        start = stop

    for col in range(vectors.shape[1]):
        if vectors[np.argmax(np.abs(vectors[:, col])), col] < 0:
            vectors[:, col] = -vectors[:, col]
    return vectors


def smallest_eigenpairs(matrix, count, mass=None):
    """ The count smallest eigenpairs of the symmetric pencil (matrix, mass)

    Dense LAPACK for up to DENSE_LIMIT unknowns, shift-invert Lanczos above.

    :returns: tuple (values, vectors) sorted ascending
    """
    size = matrix.shape[0]
    count = min(count, size)
    if size <= DENSE_LIMIT or count >= size - 1:
        display.vvvv(u'dense eigensolve, %d unknowns, %d pairs' % (size, count))
        dense_mass = mass.toarray() if mass is not None else None
        try:
            values, vectors = linalg.eigh(matrix.toarray(), dense_mass, subset_by_index=[0, count - 1])
        except linalg.LinAlgError as exc:
            raise SolverError('dense eigensolver failed: %s' % exc)
    else:
        display.vvvv(u'shift-invert Lanczos, %d unknowns, %d pairs' % (size, count))
        try:
            values, vectors = sparse_linalg.eigsh(matrix.tocsc(), k=count, M=mass, sigma=SHIFT, which='LM')
        except sparse_linalg.ArpackNoConvergence as exc:
            raise SolverError('Lanczos did not converge: %d of %d pairs' % (len(exc.eigenvalues), count))
        except (RuntimeError, ValueError) as exc:
            raise SolverError('sparse eigensolver failed: %s' % exc)
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]

    if not np.all(np.isfinite(values)):
        raise SolverError('eigensolver returned non-finite eigenvalues')
    return values, vectors


def solve(matrix, rhs):
    try:
        solution = sparse_linalg.spsolve(matrix.tocsc(), rhs)
    except (RuntimeError, ValueError) as exc:
        raise SolverError('singular grid system: %s' % exc)
    if not np.all(np.isfinite(solution)):
        raise SolverError('singular grid system: non-finite solution')
    return solution


class GridFunction(object):
    """ Cell values of a scalar field on a mask, evaluable anywhere in it

    Values outside the interior are ghost values obtained by reflection
    across the boundary face (antisymmetric about the trace for Dirichlet
    data, symmetric for Neumann data), so bilinear interpolation reproduces
    the boundary condition at face midpoints.
    """

    def __init__(self, mask, cell_values, bc, eigenvalue=0.0, traces=None):
        self.mask = mask
        self.bc = bc
        self.eigenvalue = float(eigenvalue)
        self.traces = dict(traces or {})
        self.values = np.zeros((mask.nx, mask.ny))
        self.values[mask.interior] = cell_values
        self._extended = self._extend()
        self._gradient = self._central_gradient()

    def _reflect(self, interior, values, trace, offsets):
        rows, cols = interior.shape
        inner = np.pad(interior, 1, mode='constant', constant_values=False)
        padded = np.pad(values, 1, mode='constant', constant_values=0.0)
        total = np.zeros(interior.shape)
        weight = np.zeros(interior.shape)
        for di, dj in offsets:
            neighbor_inner = inner[1 + di:1 + di + rows, 1 + dj:1 + dj + cols]
            neighbor_value = padded[1 + di:1 + di + rows, 1 + dj:1 + dj + cols]
            if self.bc == DIRICHLET:
                ghost = 2.0 * trace - neighbor_value
            else:
                ghost = neighbor_value
            total[neighbor_inner] += ghost[neighbor_inner]
            weight[neighbor_inner] += 1.0
        return total, weight

    def _extend(self):
        mask = self.mask
        interior = np.pad(mask.interior, 1, mode='constant', constant_values=False)
        values = np.pad(self.values, 1, mode='constant', constant_values=0.0)
        component = np.pad(mask.component, 1, mode='constant', constant_values=0)
        trace = np.zeros(values.shape)
        for key, value in self.traces.items():
            trace[component == key] = value

        total, weight = self._reflect(interior, values, trace, DIRECTIONS)
        corner_total, corner_weight = self._reflect(interior, values, trace, DIAGONALS)
        corners = (weight == 0) & (corner_weight > 0)
        total[corners] = corner_total[corners]
        weight[corners] = corner_weight[corners]

        extended = np.where(interior, values, 0.0)
        ghosts = (weight > 0) & ~interior
        extended[ghosts] = total[ghosts] / weight[ghosts]
        return extended

    def _central_gradient(self):
        ext = self._extended
        h = self.mask.h
        gx = np.zeros(ext.shape)
        gy = np.zeros(ext.shape)
        gx[1:-1, :] = (ext[2:, :] - ext[:-2, :]) / (2.0 * h)
        gy[:, 1:-1] = (ext[:, 2:] - ext[:, :-2]) / (2.0 * h)
        return gx, gy

    def _coordinates(self, x1, x2):
        mask = self.mask
        fi = (np.asarray(x1, dtype=float) - mask.origin[0]) / mask.h - 0.5 + 1.0
        fj = (np.asarray(x2, dtype=float) - mask.origin[1]) / mask.h - 0.5 + 1.0
        return np.array([np.ravel(fi), np.ravel(fj)])

    def _interpolate(self, array, coords, shape):
        return ndimage.map_coordinates(array, coords, order=1, mode='nearest').reshape(shape)

    def evaluate(self, x1, x2):
        """ Bilinear interpolation of (v, grad v, lap v) at points """
        shape = np.broadcast(np.asarray(x1), np.asarray(x2)).shape
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        coords = self._coordinates(x1, x2)
        value = self._interpolate(self._extended, coords, shape)
        grad = np.array([self._interpolate(self._gradient[0], coords, shape),
                         self._interpolate(self._gradient[1], coords, shape)])
        return value, grad, -self.eigenvalue * value
