# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Magnetic modes of omega x (0, pi) filled with a permittivity eps(x1, x2) >= 1.

For every axial frequency m the field H = (v_perp cos(m x3), v3 sin(m x3))
solves a two dimensional problem.  Its regularized form

    int 1/eps [ curl v_perp curl v_perp' + (grad v3 + m v_perp)(grad v3' + m v_perp') ]
      + s int 1/eps (div v_perp + m v3)(div v_perp' + m v3')

is discretized on a staggered grid: v3 on interior cells, v_perp on faces
between two interior cells (so v_perp . n = 0 on the boundary), curl on
vertices surrounded by four interior cells.  With D = -G^T and C G = 0 the
space splits exactly into Ker P (physical, s independent) and the range of
phi -> (G phi, -m phi) (eigenvalues s (lambda_neu + m^2) for constant eps).
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math
import numbers

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from scipy import linalg, ndimage, sparse
from scipy.sparse import linalg as sparse_linalg

from ansible.utils.display import Display

from cavity_modes import gridops, transverse
from cavity_modes.assembly import TM, HYBRID, FAMILY_ORDER
from cavity_modes.domains import FieldNorms, ProductDomain, as_points
from cavity_modes.errors import ConfigError, DomainError, SolverError
from cavity_modes.utils import thread_count


display = Display()

LENGTH = math.pi
INDEFINITE_RTOL = 1e-10
PHYSICAL_RTOL = 1e-6
# physical pairs do not move with s: s dLambda/ds is at most this times max(1, Lambda)
STATIONARY_RTOL = 1e-6


class PermittivityMap(object):
    """ Piecewise constant relative permittivity on the cells of a GridMask

    :param mask: GridMask
    :param values: array (nx, ny) indexed like the mask
    """

    def __init__(self, mask, values, source='<eps>'):
        values = np.array(values, dtype=float)
        if values.shape != mask.interior.shape:
            raise DomainError('%s: permittivity grid %s does not match the mask %s'
                              % (source, values.shape, mask.interior.shape))
        inside = values[mask.interior]
        if not np.all(np.isfinite(inside)) or np.any(inside < 1.0):
            raise DomainError('%s: relative permittivity must be finite and >= 1' % source)
        self.mask = mask
        self.values = values
        self.source = source

    def __repr__(self):
        return 'PermittivityMap(%s)' % self.source

    @property
    def cell_values(self):
        return self.values[self.mask.interior]

    @property
    def is_constant(self):
        inside = self.cell_values
        return bool(np.all(inside == inside[0]))

    def at(self, x1, x2):
        i, j = self.mask.cell_of(x1, x2)
        i = np.clip(i, 0, self.mask.nx - 1)
        j = np.clip(j, 0, self.mask.ny - 1)
        return self.values[i, j]

    @classmethod
    def constant(cls, mask, value):
        return cls(mask, np.full(mask.interior.shape, float(value)), source='eps=%g' % value)

    @classmethod
    def from_callable(cls, mask, func, source='<callable>'):
        centers = mask.cell_centers()
        return cls(mask, np.broadcast_to(func(centers[0], centers[1]), mask.interior.shape), source=source)

    @classmethod
    def from_text(cls, mask, text, source='<eps>'):
        """ ny rows of nx reals, top row first, aligned with the mask file """
        rows = [line.split() for line in text.splitlines() if line.strip()]
        if len(rows) != mask.ny:
            raise ConfigError('%s: expected %d rows, found %d' % (source, mask.ny, len(rows)))
        values = np.zeros(mask.interior.shape)
        for r, row in enumerate(rows):
            if len(row) != mask.nx:
                raise ConfigError('%s line %d: expected %d values, found %d' % (source, r + 1, mask.nx, len(row)))
            for i, token in enumerate(row):
                try:
                    values[i, mask.ny - 1 - r] = float(token)
                except ValueError:
                    raise ConfigError('%s line %d column %d: invalid value %r' % (source, r + 1, i + 1, token))
        try:
            return cls(mask, values, source=source)
        except DomainError as exc:
            raise ConfigError(str(exc))

    @classmethod
    def from_file(cls, mask, path):
        try:
            with open(path, 'r') as handle:
                text = handle.read()
        except (IOError, OSError) as exc:
            raise ConfigError('unable to read permittivity file %s: %s' % (path, exc))
        return cls.from_text(mask, text, source=path)


class StaggeredGrid(object):
    """ Cell, face and vertex unknowns of a GridMask with the operators

    G (gradient, cells -> faces), D = -G^T (divergence) and C (scalar curl,
    faces -> vertices).  Faces are numbered x-faces first.
    """

    def __init__(self, mask):
        self.mask = mask
        nx, ny, h = mask.nx, mask.ny, mask.h
        inner = np.pad(mask.interior, 1, mode='constant', constant_values=False)
        cells = np.pad(mask.cell_index, 1, mode='constant', constant_values=-1)

        xmask = inner[0:nx + 1, 1:ny + 1] & inner[1:nx + 2, 1:ny + 1]
        ymask = inner[1:nx + 1, 0:ny + 1] & inner[1:nx + 1, 1:ny + 2]
        vmask = (inner[0:nx + 1, 0:ny + 1] & inner[1:nx + 2, 0:ny + 1] &
                 inner[0:nx + 1, 1:ny + 2] & inner[1:nx + 2, 1:ny + 2])

        self.n_cells = mask.size
        self.n_xfaces = int(xmask.sum())
        self.n_faces = self.n_xfaces + int(ymask.sum())
        self.n_vertices = int(vmask.sum())

        self.xface_index = -np.ones(xmask.shape, dtype=int)
        self.xface_index[xmask] = np.arange(self.n_xfaces)
        self.yface_index = -np.ones(ymask.shape, dtype=int)
        self.yface_index[ymask] = self.n_xfaces + np.arange(self.n_faces - self.n_xfaces)
        self.vertex_index = -np.ones(vmask.shape, dtype=int)
        self.vertex_index[vmask] = np.arange(self.n_vertices)

        xi, xj = np.nonzero(xmask)
        yi, yj = np.nonzero(ymask)
        # neighbours: x-face (i, j) joins cells (i-1, j), (i, j); y-face (i, j) joins (i, j-1), (i, j)
        self._xcells = (cells[xi, xj + 1], cells[xi + 1, xj + 1])
        self._ycells = (cells[yi + 1, yj], cells[yi + 1, yj + 1])

        rows = np.concatenate((self.xface_index[xi, xj], self.yface_index[yi, yj]))
        before = np.concatenate((self._xcells[0], self._ycells[0]))
        after = np.concatenate((self._xcells[1], self._ycells[1]))
        self.gradient = sparse.coo_matrix(
            (np.concatenate((np.full(rows.size, 1.0 / h), np.full(rows.size, -1.0 / h))),
             (np.concatenate((rows, rows)), np.concatenate((after, before)))),
            shape=(self.n_faces, self.n_cells)).tocsr()
        self.divergence = (-self.gradient.T).tocsr()

        vi, vj = np.nonzero(vmask)
        vrows = self.vertex_index[vi, vj]
        columns = (self.yface_index[vi, vj], self.yface_index[vi - 1, vj],
                   self.xface_index[vi, vj], self.xface_index[vi, vj - 1])
        signs = (1.0, -1.0, -1.0, 1.0)
        self.curl = sparse.coo_matrix(
            (np.concatenate([np.full(vrows.size, sign / h) for sign in signs]),
             (np.tile(vrows, 4), np.concatenate(columns))),
            shape=(self.n_vertices, self.n_faces)).tocsr()

        self._vertex_cells = (cells[vi, vj], cells[vi + 1, vj], cells[vi, vj + 1], cells[vi + 1, vj + 1])
        display.vvvv(u'staggered grid: %d cells, %d faces, %d vertices'
                     % (self.n_cells, self.n_faces, self.n_vertices))

    def face_average(self, cell_values):
        first = np.concatenate((cell_values[self._xcells[0]], cell_values[self._ycells[0]]))
        second = np.concatenate((cell_values[self._xcells[1]], cell_values[self._ycells[1]]))
        return 0.5 * (first + second)

    def vertex_average(self, cell_values):
        return 0.25 * sum(cell_values[index] for index in self._vertex_cells)

    def face_arrays(self, face_values):
        """ Scatter face unknowns to full (nx+1, ny) and (nx, ny+1) arrays, zero elsewhere """
        xs = np.zeros(self.xface_index.shape)
        ys = np.zeros(self.yface_index.shape)
        xs[self.xface_index >= 0] = face_values[self.xface_index[self.xface_index >= 0]]
        ys[self.yface_index >= 0] = face_values[self.yface_index[self.yface_index >= 0]]
        return xs, ys

    def vertex_array(self, vertex_values):
        full = np.zeros(self.vertex_index.shape)
        full[self.vertex_index >= 0] = vertex_values[self.vertex_index[self.vertex_index >= 0]]
        return full

    def cell_array(self, cell_values):
        full = np.zeros(self.mask.interior.shape)
        full[self.mask.interior] = cell_values
        return full


def _grid_for(cs, eps):
    if cs.shape == transverse.GRID:
        if cs.mask is not eps.mask and cs.mask.interior.shape != eps.mask.interior.shape:
            raise DomainError('permittivity map and cross section use different grids')
        return cs.mask
    if cs.shape == transverse.RECTANGLE:
        (lo1, lo2), (hi1, hi2) = eps.mask.bounds()
        if abs(hi1 - lo1 - cs.l1) > 1e-9 * cs.l1 or abs(hi2 - lo2 - cs.l2) > 1e-9 * cs.l2 or not eps.mask.interior.all():
            raise DomainError('permittivity grid does not cover the rectangle %g x %g' % (cs.l1, cs.l2))
        return eps.mask
    raise DomainError('variable permittivity needs a rectangle or grid cross section, got %s' % cs.shape)


def _check_m(m):
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or m < 0:
        raise DomainError('axial frequency must be a non negative integer, got %r' % (m,))
    return int(m)


def assemble(grid, eps, m, s):
    """ Symmetric positive semidefinite matrix of the regularized form

    Unknowns are (v_perp, v3) for m >= 1 and v_perp alone for m = 0, where
    v3 does not enter the field.

    :returns: tuple (A, P) with P the discrete div v_perp + m v3
    """
    inverse = 1.0 / eps.cell_values
    Ec = sparse.diags(inverse)
    Ef = sparse.diags(grid.face_average(inverse))
    Ev = sparse.diags(grid.vertex_average(inverse))
    C, G, D = grid.curl, grid.gradient, grid.divergence

    if m == 0:
        P = D
        A = C.T @ Ev @ C + s * (P.T @ Ec @ P)
    else:
        nc, nf = grid.n_cells, grid.n_faces
        Cz = sparse.hstack([C, sparse.csr_matrix((grid.n_vertices, nc))])
        B = sparse.hstack([m * sparse.identity(nf), G])
        P = sparse.hstack([D, m * sparse.identity(nc)])
        A = Cz.T @ Ev @ Cz + B.T @ Ef @ B + s * (P.T @ Ec @ P)

    A = sparse.csr_matrix(A)
    A = (0.5 * (A + A.T)).tocsr()
    return A, sparse.csr_matrix(P)


def constant_coefficient_form(grid, eps_value, m):
    """ (1/eps) [C^T C + blockdiag(D^T D + m^2, G^T G + m^2)], equal to assemble() at s = 1 """
    C, G, D = grid.curl, grid.gradient, grid.divergence
    perp = C.T @ C + D.T @ D + m * m * sparse.identity(grid.n_faces)
    if m == 0:
        form = perp
    else:
        form = sparse.block_diag([perp, G.T @ G + m * m * sparse.identity(grid.n_cells)])
    return (sparse.csr_matrix(form) / eps_value).tocsr()


class ReducedEigenpair(object):

    def __init__(self, m, Lambda, vector, s, div_residual, s_shift, physical, grid, eps, cs, index=None):
        self.m = m
        self.Lambda = float(Lambda)
        self.vector = vector
        self.s = s
        self.div_residual = float(div_residual)
        self.s_shift = float(s_shift)
        self.physical = physical
        self.grid = grid
        self.eps = eps
        self.cs = cs
        self.index = index

    def __repr__(self):
        return 'ReducedEigenpair(m=%d, Lambda=%.12g, %s)' % (self.m, self.Lambda,
                                                             'physical' if self.physical else 'spurious')

    @property
    def v_perp(self):
        return self.vector[:self.grid.n_faces]

    @property
    def v3(self):
        if self.m == 0:
            return np.zeros(self.grid.n_cells)
        return self.vector[self.grid.n_faces:]


def _classify(values, vectors, P, Ec, s, tau):
    """ Rotate each cluster onto Ker P, measure the divergence residual and the s sensitivity

    A pair is physical when both are small: spurious pairs have
    s dLambda/ds = Lambda.
    """
    residuals = np.zeros(values.size)
    shifts = np.zeros(values.size)
    start = 0
    while start < values.size:
        stop = start + 1
        scale = max(1.0, abs(values[start]))
        while stop < values.size and values[stop] - values[start] <= gridops.CLUSTER_RTOL * scale:
            stop += 1
        block = vectors[:, start:stop]
        image = P @ block
        if stop - start > 1:
            # right singular vectors ordered by increasing residual
            _, singular, rotation = linalg.svd(image, full_matrices=True)
            order = np.argsort(np.concatenate((singular, np.zeros(stop - start - singular.size))))
            block = block @ rotation.T[:, order]
            vectors[:, start:stop] = block
            image = P @ block
        residuals[start:stop] = np.linalg.norm(image, axis=0)
        shifts[start:stop] = s * np.einsum('ij,ij->j', image, Ec @ image)
        start = stop

    for col in range(vectors.shape[1]):
        if vectors[np.argmax(np.abs(vectors[:, col])), col] < 0:
            vectors[:, col] = -vectors[:, col]
    if tau is None:
        tau = PHYSICAL_RTOL * np.sqrt(np.maximum(1.0, values))
    physical = (residuals <= tau) & (shifts <= STATIONARY_RTOL * np.maximum(1.0, values))
    return vectors, residuals, shifts, physical


def reduced_spectrum(cs, eps, m, s=1.0, count=10, tau=None, include_spurious=False):
    """ The count lowest physical eigenpairs of the reduced magnetic problem

    :param cs: rectangle or grid CrossSection
    :param eps: PermittivityMap on the grid of cs
    :param m: axial frequency
    :param s: regularization weight, s > 0
    :param count: number of physical pairs
    :param tau: divergence residual threshold, default 1e-6 max(1, sqrt(Lambda))
    :param include_spurious: also return the flagged spurious pairs found
        below the last physical one

    :returns: list of ReducedEigenpair sorted by Lambda
    """
    m = _check_m(m)
    if not (s > 0 and math.isfinite(s)):
        raise DomainError('regularization weight must be positive, got %r' % (s,))
    mask = _grid_for(cs, eps)
    grid = StaggeredGrid(mask)

    A, P = assemble(grid, eps, m, s)
    Ec = sparse.diags(1.0 / eps.cell_values)
    size = A.shape[0]
    norm = sparse_linalg.norm(A, np.inf)

    wanted = min(size, 2 * count + 8)
    while True:
        values, vectors = gridops.smallest_eigenpairs(A, wanted)
        if values[0] < -INDEFINITE_RTOL * norm:
            raise SolverError('indefinite assembly: smallest eigenvalue %.3g for |A| = %.3g' % (values[0], norm))
        vectors, residuals, shifts, physical = _classify(values, np.array(vectors), P, Ec, s, tau)
        if physical.sum() >= count or wanted == size:
            break
        display.vvvv(u'epsvar m=%d: %d physical of %d pairs, widening' % (m, int(physical.sum()), wanted))
        wanted = min(size, 2 * wanted)

    pairs = list()
    found = 0
    for col in range(values.size):
        if found >= count:
            break
        if physical[col]:
            found += 1
        elif not include_spurious:
            continue
        pairs.append(ReducedEigenpair(m, max(values[col], 0.0), vectors[:, col], s, residuals[col], shifts[col],
                                      bool(physical[col]), grid, eps, cs, index=found if physical[col] else None))

    spurious = int((~physical[:col + 1]).sum()) if values.size else 0
    display.vvv(u'epsvar m=%d s=%g: %d physical pairs, %d spurious below them' % (m, s, found, spurious))
    if found < count:
        display.warning(u'epsvar m=%d: only %d physical eigenpairs on this grid' % (m, found))
    return pairs


class TMPair(object):
    """ Generalized Dirichlet eigenpair -Lap v = Lambda eps v, sum eps v^2 h^2 = 1 """

    def __init__(self, Lambda, v_dir):
        self.Lambda = float(Lambda)
        self.v_dir = v_dir

    def __iter__(self):
        return iter((self.Lambda, self.v_dir))

    def __repr__(self):
        return 'TMPair(Lambda=%.12g)' % self.Lambda

    def magnetic(self, x1, x2):
        """ The H-field generator curl v = (d2 v, -d1 v) """
        grad = self.v_dir.evaluate(x1, x2)[1]
        return np.array([grad[1], -grad[0]])


def tm_family_m0(cs, eps, count):
    """ TM family of the m = 0 problem, -Lap v = Lambda eps v with v = 0 on the boundary """
    mask = _grid_for(cs, eps)
    laplacian = gridops.laplacian(mask, gridops.DIRICHLET)
    scale = sparse.diags(1.0 / np.sqrt(eps.cell_values))
    values, vectors = gridops.smallest_eigenpairs((scale @ laplacian @ scale).tocsr(), count)
    vectors = gridops.deterministic_basis(values, vectors)
    pairs = list()
    for col in range(values.size):
        cell_values = (scale @ vectors[:, col]) / mask.h
        pairs.append(TMPair(values[col], gridops.GridFunction(mask, cell_values, gridops.DIRICHLET,
                                                              eigenvalue=values[col])))
    return pairs


def _interpolate(array, fi, fj):
    return ndimage.map_coordinates(array, np.array([fi, fj]), order=1, mode='nearest')


class EpsvarMode(FieldNorms):
    """ Three dimensional mode lifted from a physical ReducedEigenpair

    H = (v_perp cos(m x3), v3 sin(m x3)) and E = i/(k eps) curl H, both
    interpolated bilinearly from the staggered unknowns.
    """

    def __init__(self, pair):
        self.pair = pair
        self.m = pair.m
        self.Lambda = pair.Lambda
        self.k = math.sqrt(pair.Lambda)
        self.polarization = TM if pair.m == 0 else HYBRID
        self.domain = ProductDomain(pair.cs, LENGTH)

        grid = pair.grid
        self._h1, self._h2 = grid.face_arrays(pair.v_perp)
        self._h3 = grid.cell_array(pair.v3)
        g = grid.gradient @ pair.v3 + pair.m * pair.v_perp
        self._g1, self._g2 = grid.face_arrays(g)
        self._curl = grid.vertex_array(grid.curl @ pair.v_perp)

    def __repr__(self):
        return 'EpsvarMode(%s, Lambda=%.12g)' % (self.label, self.Lambda)

    @property
    def family(self):
        return self.polarization

    @property
    def indices(self):
        return ((self.pair.index,), self.m)

    @property
    def label(self):
        return '%s:%d:%d' % (self.polarization, self.pair.index, self.m)

    @property
    def sort_key(self):
        return (self.Lambda, FAMILY_ORDER.index(self.polarization), ((0, self.pair.index, ''),), self.m)

    def fields(self, points):
        points = as_points(points)
        mask = self.pair.grid.mask
        fx = (points[:, 0] - mask.origin[0]) / mask.h
        fy = (points[:, 1] - mask.origin[1]) / mask.h
        x3 = points[:, 2]
        cos, sin = np.cos(self.m * x3), np.sin(self.m * x3)

        h1 = _interpolate(self._h1, fx, fy - 0.5)
        h2 = _interpolate(self._h2, fx - 0.5, fy)
        h3 = _interpolate(self._h3, fx - 0.5, fy - 0.5)
        g1 = _interpolate(self._g1, fx, fy - 0.5)
        g2 = _interpolate(self._g2, fx - 0.5, fy)
        curl = _interpolate(self._curl, fx, fy)

        H = np.column_stack((h1 * cos, h2 * cos, h3 * sin)).astype(complex)
        factor = 1j / (self.k * self.pair.eps.at(points[:, 0], points[:, 1]))
        E = factor[:, None] * np.column_stack((g2 * sin, -g1 * sin, curl * cos))
        return E, H

    def field(self, which, points):
        E, H = self.fields(points)
        return E if which == 'E' else H


def lift_to_3d(pair):
    """ The Maxwell mode of a physical reduced pair """
    if not pair.physical:
        raise DomainError('only physical eigenpairs can be lifted, got %r' % pair)
    if pair.Lambda <= 0.0:
        raise DomainError('the Lambda = 0 field of m=%d has no electric partner to reconstruct' % pair.m)
    return EpsvarMode(pair)


def _modes_for_m(cs, eps, m, lam_max, s):
    count = 8
    while True:
        pairs = reduced_spectrum(cs, eps, m, s, count)
        if len(pairs) < count or pairs[-1].Lambda > lam_max:
            return [lift_to_3d(pair) for pair in pairs if 0.0 < pair.Lambda <= lam_max]
        count *= 2


def epsvar_modes(cs, eps, lam_max, s=1.0):
    """ Lifted modes with 0 < Lambda <= lam_max, one independent solve per m

    :returns: list of EpsvarMode sorted by Lambda
    """
    if not (lam_max > 0 and math.isfinite(lam_max)):
        raise DomainError('Lambda_max must be positive, got %r' % (lam_max,))
    frequencies = range(int(math.floor(math.sqrt(lam_max))) + 1)
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        futures = [pool.submit(_modes_for_m, cs, eps, m, lam_max, s) for m in frequencies]
        modes = [mode for future in futures for mode in future.result()]
    modes.sort(key=lambda mode: mode.sort_key)
    display.vvv(u'epsvar: %d modes with Lambda <= %.6g over m <= %d' % (len(modes), lam_max, frequencies[-1]))
    return modes


def lowest_modes(cs, eps, count, s=1.0):
    """ Lifted modes below a ceiling doubled until it holds count of them """
    lam_max = transverse.backend(cs).initial_bound() / 4.0
    while True:
        modes = epsvar_modes(cs, eps, lam_max, s)
        if len(modes) >= count:
            return modes
        lam_max *= 2.0
