# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Staircase cross sections on a uniform cell grid.

A mask has nx by ny square cells of side h.  Arrays are indexed [i, j] with
i along x1 and j along x2, j = 0 being the bottom row.  In the text format
the first data row is the top row.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np

from scipy import ndimage

from ansible.utils.display import Display

from cavity_modes.errors import ConfigError


display = Display()

INTERIOR = '.'
EXTERIOR = '#'
HOLE_DIGITS = '123456789'

# (di, dj) for the four faces of a cell
DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class GridMask(object):

    def __init__(self, interior, h, origin=(0.0, 0.0), hole_labels=None, source='<mask>'):
        interior = np.asarray(interior, dtype=bool)
        if interior.ndim != 2:
            raise ConfigError('%s: mask must be two dimensional' % source)
        if not (h > 0 and math.isfinite(h)):
            raise ConfigError('%s: cell size must be positive, got %r' % (source, h))

        self.interior = interior
        self.nx, self.ny = interior.shape
        self.h = float(h)
        self.origin = (float(origin[0]), float(origin[1]))
        self.source = source

        if hole_labels is None:
            hole_labels = np.zeros(interior.shape, dtype=int)
        self.hole_labels = np.asarray(hole_labels, dtype=int)

        self._check_connected()
        self.component = self._label_components()
        self.boundary_components = 1 + max(0, int(self.component.max()))
        self.cell_index = -np.ones(interior.shape, dtype=int)
        self.cell_index[interior] = np.arange(int(interior.sum()))

        display.vvvv(u'%s: %dx%d cells, h=%g, %d interior, D=%d'
                     % (source, self.nx, self.ny, self.h, self.size, self.boundary_components))

    @property
    def size(self):
        return int(self.interior.sum())

    @property
    def area(self):
        return self.size * self.h ** 2

    def _check_connected(self):
        if not self.interior.any():
            raise ConfigError('%s: mask has no interior cells' % self.source)
        labels, count = ndimage.label(self.interior)
        if count != 1:
            raise ConfigError('%s: interior is not 4-connected (%d pieces)' % (self.source, count))

    def _label_components(self):
        """ Boundary component of every non-interior cell: 0 outer, d >= 1 holes """
        complement = np.pad(~self.interior, 1, mode='constant', constant_values=True)
        padded, count = ndimage.label(complement, structure=np.ones((3, 3), dtype=int))
        outer = padded[0, 0]
        labels = padded[1:-1, 1:-1]

        holes = list()
        for label in range(1, count + 1):
            if label == outer:
                continue
            cells = labels == label
            if not cells.any():
                continue
            digits = set(self.hole_labels[cells].tolist()) - set([0])
            if len(digits) > 1:
                raise ConfigError('%s: one hole carries several labels %s' % (self.source, sorted(digits)))
            first = int(np.flatnonzero(cells.ravel())[0])
            holes.append((digits.pop() if digits else None, first, label))

        outer_digits = set(self.hole_labels[labels == outer].tolist()) - set([0])
        if outer_digits:
            raise ConfigError('%s: hole label(s) %s touch the outer boundary' % (self.source, sorted(outer_digits)))

        labelled = [item[0] for item in holes if item[0] is not None]
        if len(labelled) != len(set(labelled)):
            raise ConfigError('%s: a hole label is used by disconnected holes' % self.source)

        holes.sort(key=lambda item: (item[0] is None, item[0] or 0, item[1]))

        component = np.zeros(self.interior.shape, dtype=int)
        for d, (digit, first, label) in enumerate(holes, 1):
            component[labels == label] = d
        component[self.interior] = -1
        return component

    def cell_centers(self):
        x = self.origin[0] + (np.arange(self.nx) + 0.5) * self.h
        y = self.origin[1] + (np.arange(self.ny) + 0.5) * self.h
        return np.meshgrid(x, y, indexing='ij')

    def bounds(self):
        return (self.origin,
                (self.origin[0] + self.nx * self.h, self.origin[1] + self.ny * self.h))

    def neighbor_component(self, i, j):
        """ Boundary component id of cell (i, j), 0 when outside the grid """
        i = np.asarray(i)
        j = np.asarray(j)
        inside = (i >= 0) & (i < self.nx) & (j >= 0) & (j < self.ny)
        result = np.zeros(i.shape, dtype=int)
        result[inside] = self.component[i[inside], j[inside]]
        return result

    def is_interior(self, i, j):
        i = np.asarray(i)
        j = np.asarray(j)
        inside = (i >= 0) & (i < self.nx) & (j >= 0) & (j < self.ny)
        result = np.zeros(i.shape, dtype=bool)
        result[inside] = self.interior[i[inside], j[inside]]
        return result

    def boundary_faces(self):
        """ Faces between an interior cell and the complement

        :returns: dict of arrays i, j (interior cell), di, dj (direction of
            the face) and component (boundary component behind the face)
        """
        ii, jj = np.nonzero(self.interior)
        faces = dict(i=[], j=[], di=[], dj=[], component=[])
        for di, dj in DIRECTIONS:
            ni, nj = ii + di, jj + dj
            outside = ~self.is_interior(ni, nj)
            count = int(outside.sum())
            faces['i'].append(ii[outside])
            faces['j'].append(jj[outside])
            faces['di'].append(np.full(count, di))
            faces['dj'].append(np.full(count, dj))
            faces['component'].append(self.neighbor_component(ni[outside], nj[outside]))
        return dict((key, np.concatenate(value)) for key, value in faces.items())

    def cell_of(self, x1, x2):
        """ Integer cell indices of points (may fall outside the grid) """
        fi = (np.asarray(x1, dtype=float) - self.origin[0]) / self.h
        fj = (np.asarray(x2, dtype=float) - self.origin[1]) / self.h
        return np.floor(fi).astype(int), np.floor(fj).astype(int)

    def contains(self, x1, x2, tol=1e-9):
        """ True where the point lies in the closure of an interior cell """
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        slack = tol * self.h
        result = np.zeros(np.broadcast(x1, x2).shape, dtype=bool)
        for s1 in (-slack, slack):
            for s2 in (-slack, slack):
                i, j = self.cell_of(x1 + s1, x2 + s2)
                result |= self.is_interior(i, j)
        return result

    def to_text(self):
        lines = ['%d %d %.17g' % (self.nx, self.ny, self.h)]
        for j in range(self.ny - 1, -1, -1):
            row = list()
            for i in range(self.nx):
                if self.interior[i, j]:
                    row.append(INTERIOR)
                elif self.hole_labels[i, j]:
                    row.append(str(self.hole_labels[i, j]))
                else:
                    row.append(EXTERIOR)
            lines.append(''.join(row))
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text, source='<mask>'):
        """ Parse the plain-text mask format

        First line ``nx ny h``, then ny rows of nx characters from ``.``
        (interior), ``#`` (exterior) and ``1``-``9`` (hole labels), top row
        first.
        """
        lines = [line.rstrip() for line in text.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
        if not lines:
            raise ConfigError('%s line 1: empty mask file' % source)

        header = lines[0].split()
        if len(header) != 3:
            raise ConfigError('%s line 1: expected "nx ny h", got %r' % (source, lines[0]))
        try:
            nx, ny, h = int(header[0]), int(header[1]), float(header[2])
        except ValueError:
            raise ConfigError('%s line 1: expected "nx ny h", got %r' % (source, lines[0]))
        if nx < 1 or ny < 1:
            raise ConfigError('%s line 1: grid dimensions must be positive' % source)

        rows = lines[1:]
        if len(rows) != ny:
            raise ConfigError('%s: expected %d rows, found %d' % (source, ny, len(rows)))

        interior = np.zeros((nx, ny), dtype=bool)
        labels = np.zeros((nx, ny), dtype=int)
        for r, row in enumerate(rows):
            lineno = r + 2
            if len(row) != nx:
                raise ConfigError('%s line %d: expected %d cells, found %d' % (source, lineno, nx, len(row)))
            j = ny - 1 - r
            for i, char in enumerate(row):
                if char == INTERIOR:
                    interior[i, j] = True
                elif char in HOLE_DIGITS:
                    labels[i, j] = int(char)
                elif char != EXTERIOR:
                    raise ConfigError('%s line %d column %d: invalid cell %r' % (source, lineno, i + 1, char))

        return cls(interior, h, hole_labels=labels, source=source)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, 'r') as handle:
                text = handle.read()
        except (IOError, OSError) as exc:
            raise ConfigError('unable to read mask file %s: %s' % (path, exc))
        return cls.from_text(text, source=path)

    @classmethod
    def rectangle(cls, l1, l2, h):
        nx, ny = _cells(l1, h), _cells(l2, h)
        return cls(np.ones((nx, ny), dtype=bool), h, source='rectangle(%g, %g)' % (l1, l2))

    @classmethod
    def disc(cls, R, h):
        return cls.annulus(0.0, R, h)

    @classmethod
    def annulus(cls, r0, R, h):
        """ Staircase annulus r0 <= r < R centred on the origin (a disc for r0 = 0) """
        n = int(math.ceil(2.0 * R / h)) + 2
        origin = (-0.5 * n * h, -0.5 * n * h)
        centers = origin[0] + (np.arange(n) + 0.5) * h
        X, Y = np.meshgrid(centers, centers, indexing='ij')
        rr = X ** 2 + Y ** 2
        interior = (rr < R ** 2) & (rr >= r0 ** 2)
        labels = np.where((rr < r0 ** 2), 1, 0) if r0 > 0 else None
        name = 'disc(%g)' % R if r0 == 0 else 'annulus(%g, %g)' % (r0, R)
        return cls(interior, h, origin=origin, hole_labels=labels, source=name)

    @classmethod
    def square_with_hole(cls, side, hole, h):
        """ Square of the given side with a centred square hole """
        n = _cells(side, h)
        centers = (np.arange(n) + 0.5) * h
        X, Y = np.meshgrid(centers, centers, indexing='ij')
        inside_hole = (np.abs(X - 0.5 * side) < 0.5 * hole) & (np.abs(Y - 0.5 * side) < 0.5 * hole)
        return cls(~inside_hole, h, hole_labels=np.where(inside_hole, 1, 0),
                   source='square_with_hole(%g, %g)' % (side, hole))


def _cells(length, h):
    count = int(round(length / h))
    if count < 1 or abs(count * h - length) > 1e-9 * length:
        raise ConfigError('length %g is not a multiple of the cell size %g' % (length, h))
    return count
