# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Three dimensional cavities: the product omega x (0, length) and the ball.

Both expose the geometry the verification layer needs: membership,
distance to the boundary, interior and boundary samples and quadrature.
Point arrays are shaped (N, 3).
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np

from cavity_modes import transverse
from cavity_modes.errors import DomainError
from cavity_modes.plugins.backend import gauss_legendre


LATERAL = 'lateral'
END = 'end'
SPHERE = 'sphere'
NORM_ORDER = 24


def as_points(points):
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points.reshape(1, -1)
    if points.ndim != 2 or points.shape[1] != 3:
        raise DomainError('points must be an array of shape (N, 3), got %s' % (points.shape,))
    return points


class FieldNorms(object):
    """ L2 norms of the E and H fields of a mode over its domain

    Needs fields(points) -> (E, H) and a domain with quadrature(order).
    Fields are used as computed, without renormalization.
    """

    norm_order = NORM_ORDER

    def _norms(self):
        if getattr(self, '_l2_norms', None) is None:
            points, weights = self.domain.quadrature(self.norm_order)
            self._l2_norms = tuple(float(np.sqrt(np.einsum('w,wc->', weights, np.abs(field) ** 2)))
                                   for field in self.fields(points))
        return self._l2_norms

    @property
    def norm_E(self):
        return self._norms()[0]

    @property
    def norm_H(self):
        return self._norms()[1]


class ProductDomain(object):

    def __init__(self, cs, length):
        if not (length > 0 and math.isfinite(length)):
            raise DomainError('cavity length must be positive, got %r' % (length,))
        self.cs = cs
        self.length = float(length)
        self.backend = transverse.backend(cs)

    def __repr__(self):
        return 'ProductDomain(%r, length=%.17g)' % (self.cs, self.length)

    def bounds(self):
        (lo1, lo2), (hi1, hi2) = self.backend.bounds()
        return (lo1, lo2, 0.0), (hi1, hi2, self.length)

    def contains(self, points, tol=1e-9):
        points = as_points(points)
        x3 = points[:, 2]
        return self.backend.contains(points[:, 0], points[:, 1], tol) & (x3 >= -tol) & (x3 <= self.length + tol)

    def distance_to_boundary(self, points):
        points = as_points(points)
        x3 = points[:, 2]
        lateral = self.backend.distance_to_boundary(points[:, 0], points[:, 1])
        return np.minimum(lateral, np.minimum(x3, self.length - x3))

    def sample_interior(self, count, rng, margin=0.0):
        if 2 * margin >= self.length:
            raise DomainError('no interior point at distance %g from the ends' % margin)
        x1, x2 = self.backend.sample_interior(count, rng, margin)
        x3 = rng.uniform(margin, self.length - margin, count)
        return np.column_stack((x1, x2, x3))

    def sample_boundary(self, count):
        """ Points on the lateral wall (including its rims) and on both ends

        :returns: dict with points (N, 3), normals (N, 3), wall (LATERAL or
            END per point) and component (boundary component of the cross
            section for lateral points, -1 on the ends)
        """
        levels = max(2, int(round(math.sqrt(count / 2.0))))
        ring = self.backend.sample_boundary(max(4, count // (2 * levels)))
        x3 = np.concatenate(([0.0], (np.arange(levels) + 0.5) * self.length / levels, [self.length]))
        size = ring['x1'].size

        lateral = np.column_stack((np.tile(ring['x1'], x3.size), np.tile(ring['x2'], x3.size), np.repeat(x3, size)))
        lateral_normals = np.column_stack((np.tile(ring['n1'], x3.size), np.tile(ring['n2'], x3.size),
                                           np.zeros(size * x3.size)))

        q1, q2 = self.backend.quadrature(8)[:2]
        pick = np.unique(np.linspace(0, q1.size - 1, min(q1.size, max(1, count // 4))).astype(int))
        q1, q2 = q1[pick], q2[pick]
        zeros = np.zeros(q1.size)
        ends = np.vstack((np.column_stack((q1, q2, zeros)), np.column_stack((q1, q2, zeros + self.length))))
        end_normals = np.vstack((np.column_stack((zeros, zeros, zeros - 1.0)), np.column_stack((zeros, zeros, zeros + 1.0))))

        return dict(points=np.vstack((lateral, ends)),
                    normals=np.vstack((lateral_normals, end_normals)),
                    wall=np.array([LATERAL] * lateral.shape[0] + [END] * ends.shape[0]),
                    component=np.concatenate((np.tile(ring['component'], x3.size), np.full(ends.shape[0], -1))))

    def quadrature(self, order):
        q1, q2, w12 = self.backend.quadrature(order)
        x3, w3 = gauss_legendre(order, 0.0, self.length)
        points = np.column_stack((np.repeat(q1, x3.size), np.repeat(q2, x3.size), np.tile(x3, q1.size)))
        return points, np.outer(w12, w3).ravel()


class BallDomain(object):

    def __init__(self, R):
        if not (R > 0 and math.isfinite(R)):
            raise DomainError('ball radius must be positive, got %r' % (R,))
        self.R = float(R)

    def __repr__(self):
        return 'BallDomain(R=%.17g)' % self.R

    def bounds(self):
        return (-self.R, -self.R, -self.R), (self.R, self.R, self.R)

    def contains(self, points, tol=1e-9):
        points = as_points(points)
        return np.linalg.norm(points, axis=1) <= self.R + tol

    def distance_to_boundary(self, points):
        points = as_points(points)
        return self.R - np.linalg.norm(points, axis=1)

    def sample_interior(self, count, rng, margin=0.0):
        found = list()
        total = 0
        while total < count:
            trial = rng.uniform(-self.R, self.R, (4 * count, 3))
            keep = self.distance_to_boundary(trial) > margin
            found.append(trial[keep])
            total += int(keep.sum())
        return np.vstack(found)[:count]

    def sample_boundary(self, count):
        """ Fibonacci lattice on the sphere """
        index = np.arange(count) + 0.5
        z = 1.0 - 2.0 * index / count
        phi = math.pi * (1.0 + math.sqrt(5.0)) * index
        s = np.sqrt(1.0 - z ** 2)
        normals = np.column_stack((s * np.cos(phi), s * np.sin(phi), z))
        return dict(points=self.R * normals, normals=normals,
                    wall=np.array([SPHERE] * count), component=np.zeros(count, dtype=int))

    def quadrature(self, order):
        rho, wr = gauss_legendre(order, 0.0, self.R)
        theta, wt = gauss_legendre(order, 0.0, math.pi)
        count = 2 * order
        phi = 2.0 * math.pi * np.arange(count) / count
        rr, tt, pp = np.meshgrid(rho, theta, phi, indexing='ij')
        weights = (wr[:, None, None] * rho[:, None, None] ** 2 * wt[None, :, None] * np.sin(theta)[None, :, None]
                   * np.full((1, 1, count), 2.0 * math.pi / count))
        points = np.column_stack(((rr * np.sin(tt) * np.cos(pp)).ravel(),
                                  (rr * np.sin(tt) * np.sin(pp)).ravel(),
                                  (rr * np.cos(tt)).ravel()))
        return points, weights.ravel()
