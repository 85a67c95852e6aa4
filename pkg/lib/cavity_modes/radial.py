# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Separated Laplace eigenfunctions of discs and annuli centred on the origin,
v(r, phi) = A h(r) cos(n phi) or A h(r) sin(n phi) with h a cylinder
function a J_n(k r) + b Y_n(k r).
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np

from scipy import special

from cavity_modes.errors import DomainError


DIRICHLET = 'dirichlet'
NEUMANN = 'neumann'

COSINE = 'c'
SINE = 's'


def _cylinder(a, b, n, x):
    value = a * special.jv(n, x)
    derivative = a * 0.5 * (special.jv(n - 1, x) - special.jv(n + 1, x))
    if b:
        value = value + b * special.yv(n, x)
        derivative = derivative + b * 0.5 * (special.yv(n - 1, x) - special.yv(n + 1, x))
    return value, derivative


def _coefficients(bc, n, k, r_inner):
    if r_inner == 0.0:
        return 1.0, 0.0
    x0 = k * r_inner
    if bc == DIRICHLET:
        return float(special.yv(n, x0)), -float(special.jv(n, x0))
    yp = 0.5 * (special.yv(n - 1, x0) - special.yv(n + 1, x0))
    jp = 0.5 * (special.jv(n - 1, x0) - special.jv(n + 1, x0))
    return float(yp), -float(jp)


class RadialMode(object):
    """ Normalized eigenfunction of -Laplacian on r_inner < r < R

    :param bc: DIRICHLET or NEUMANN, applied on every circle of the boundary
    :param n: angular order
    :param k: eigen-wavenumber, so lambda = k^2
    :param parity: COSINE or SINE; n = 0 admits COSINE only
    :param R: outer radius
    :param r_inner: inner radius, 0 for the disc
    """

    def __init__(self, bc, n, k, parity, R, r_inner=0.0):
        if parity not in (COSINE, SINE) or (n == 0 and parity == SINE):
            raise DomainError('invalid parity %r for angular order %d' % (parity, n))
        if not k > 0:
            raise DomainError('radial wavenumber must be positive, got %r' % (k,))

        self.bc = bc
        self.n = n
        self.k = float(k)
        self.parity = parity
        self.R = float(R)
        self.r_inner = float(r_inner)
        self.a, self.b = _coefficients(bc, n, self.k, self.r_inner)

        angular = 1.0 / math.sqrt(2.0 * math.pi) if n == 0 else 1.0 / math.sqrt(math.pi)
        self.amplitude = angular / math.sqrt(self._moment(self.R) - self._moment(self.r_inner))

    def _moment(self, r):
        # integral of h(r)^2 r dr up to r, Lommel's formula
        if r == 0.0:
            return 0.0
        x = self.k * r
        value, derivative = _cylinder(self.a, self.b, self.n, x)
        return 0.5 * r ** 2 * (derivative ** 2 + (1.0 - (self.n / x) ** 2) * value ** 2)

    @property
    def eigenvalue(self):
        return self.k ** 2

    def _angular(self, phi):
        if self.parity == COSINE:
            return np.cos(self.n * phi), -self.n * np.sin(self.n * phi)
        return np.sin(self.n * phi), self.n * np.cos(self.n * phi)

    def radial(self, r):
        """ h(r), dh/dr and h(r)/r, the last with its limit at the centre """
        r = np.asarray(r, dtype=float)
        centre = r == 0.0
        safe = np.where(centre, 1.0, r)
        value, derivative = _cylinder(self.a, self.b, self.n, self.k * safe)
        limit = 0.5 * self.a * self.k if self.n == 1 else 0.0
        over_r = np.where(centre, limit, value / safe)
        value = np.where(centre, self.a if self.n == 0 else 0.0, value)
        slope = np.where(centre, limit, self.k * derivative)
        return value, slope, over_r

    def evaluate(self, x1, x2):
        """ (v, grad v, lap v) at Cartesian points """
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        r = np.hypot(x1, x2)
        phi = np.arctan2(x2, x1)
        h, dh, h_over_r = self.radial(r)
        angle, dangle = self._angular(phi)

        v = self.amplitude * h * angle
        d_r = self.amplitude * dh * angle
        d_phi = self.amplitude * h_over_r * dangle
        cos, sin = np.cos(phi), np.sin(phi)
        grad = np.array([d_r * cos - d_phi * sin, d_r * sin + d_phi * cos])
        return v, grad, -self.eigenvalue * v


class LogPotential(object):
    """ v = log r on an annulus, harmonic with constant trace on both circles """

    def evaluate(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        rr = x1 ** 2 + x2 ** 2
        return 0.5 * np.log(rr), np.array([x1 / rr, x2 / rr])
