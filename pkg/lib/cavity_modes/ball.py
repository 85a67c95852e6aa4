# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Maxwell modes of the conducting ball of radius R from Debye potentials
q = Y_n^m(theta, phi) psi_n(k rho).

With M = curl(q rho_hat) and N = curl M the Dirichlet family (psi_n(kR) = 0)
has E = M, H = N / (ik), the Neumann family (psi'_n(kR) = 0) has E = N,
H = -ik M.  In (theta, phi, rho) components

    M = (psi/rho dY/sin dphi, -psi/rho dY/dtheta, 0)
    N = (k psi'/rho dY/dtheta, k psi'/rho dY/sin dphi, n(n+1) psi Y / rho^2)
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np

from ansible.utils.display import Display

from cavity_modes import rootfind, specfun
from cavity_modes.assembly import DIRICHLET_FAMILY, NEUMANN_FAMILY, FAMILY_ORDER
from cavity_modes.domains import BallDomain, FieldNorms, as_points
from cavity_modes.errors import DomainError, OutsideDomainError


display = Display()

FAMILY_BC = {
    DIRICHLET_FAMILY: rootfind.DIRICHLET,
    NEUMANN_FAMILY: rootfind.NEUMANN,
}

# orders beyond ceil(k_max R) have no zero below k_max
ORDER_MARGIN = 8


def _centre_gradient(n, m, basis):
    """ grad(rho Y_1^m), constant since rho Y_1^m is linear """
    if n != 1:
        return np.zeros(3, dtype=complex)
    if m == 0:
        return np.array([0.0, 0.0, math.sqrt(3.0 / (4.0 * math.pi))], dtype=complex)
    if basis == specfun.REAL_BASIS:
        scale = -math.sqrt(3.0 / (4.0 * math.pi))
        return np.array([scale, 0.0, 0.0] if m == 1 else [0.0, scale, 0.0], dtype=complex)
    scale = math.sqrt(3.0 / (8.0 * math.pi))
    if m == 1:
        return -scale * np.array([1.0, 1j, 0.0])
    return scale * np.array([1.0, -1j, 0.0])


def spherical_frame(points):
    """ rho, theta, phi and the Cartesian unit vectors theta_hat, phi_hat, rho_hat """
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    rho = np.sqrt(x ** 2 + y ** 2 + z ** 2)
    safe = np.where(rho > 0, rho, 1.0)
    theta = np.arccos(np.clip(z / safe, -1.0, 1.0))
    phi = np.arctan2(y, x)
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    rho_hat = np.column_stack((st * cp, st * sp, ct))
    theta_hat = np.column_stack((ct * cp, ct * sp, -st))
    phi_hat = np.column_stack((-sp, cp, np.zeros(sp.shape)))
    return rho, theta, phi, theta_hat, phi_hat, rho_hat


class DebyePotential(object):
    """ q(theta, phi, rho) = Y_n^m(theta, phi) psi_n(k rho) """

    def __init__(self, n, m, k, basis=specfun.COMPLEX_BASIS):
        self.n = n
        self.m = m
        self.k = k
        self.basis = basis

    def evaluate(self, theta, phi, rho):
        Y = specfun.spherical_harmonic_terms(self.n, self.m, theta, phi, self.basis)[0]
        rho = np.asarray(rho, dtype=float)
        safe = np.where(rho > 0, rho, 1.0)
        psi = np.where(rho > 0, specfun.riccati(specfun.PSI, self.n, self.k * safe)[0], 0.0)
        return Y * psi


class BallMode(FieldNorms):
    """ One Maxwell mode of the ball

    :param family: DIRICHLET_FAMILY (E = M) or NEUMANN_FAMILY (E = N)
    :param n: degree, n >= 1
    :param m: order, |m| <= n
    :param p: zero number, p >= 1
    :param k: wavenumber
    :param domain: BallDomain
    :param basis: specfun.COMPLEX_BASIS or specfun.REAL_BASIS
    """

    def __init__(self, family, n, m, p, k, domain, basis=specfun.COMPLEX_BASIS):
        if family not in FAMILY_BC:
            raise DomainError('unknown ball family %r' % (family,))
        if n < 1 or abs(m) > n:
            raise DomainError('ball modes need n >= 1 and |m| <= n, got n=%r m=%r' % (n, m))
        self.family = family
        self.n = n
        self.m = m
        self.p = p
        self.k = float(k)
        self.Lambda = self.k * self.k
        self.domain = domain
        self.basis = basis
        self.potential = DebyePotential(n, m, self.k, basis)

    def __repr__(self):
        return 'BallMode(%s, k=%.17g)' % (self.label, self.k)

    @property
    def polarization(self):
        return self.family

    @property
    def indices(self):
        return (self.n, self.m, self.p)

    @property
    def label(self):
        return '%s:%d.%d.%d' % (self.family, self.n, self.m, self.p)

    @property
    def sort_key(self):
        return (self.Lambda, FAMILY_ORDER.index(self.family), (self.n, self.m, self.p), 0)

    def vector_functions(self, points):
        """ Cartesian M and N at points, with the limits at the centre """
        points = as_points(points)
        rho, theta, phi, theta_hat, phi_hat, rho_hat = spherical_frame(points)
        centre = rho == 0.0
        safe = np.where(centre, 1.0, rho)

        Y, dY_theta, dY_phi = specfun.spherical_harmonic_terms(self.n, self.m, theta, phi, self.basis)
        psi, dpsi = specfun.riccati(specfun.PSI, self.n, self.k * safe)
        psi = np.asarray(psi, dtype=float)
        dpsi = np.asarray(dpsi, dtype=float)

        a = (psi / safe)[:, None]
        b = (self.k * dpsi / safe)[:, None]
        c = (self.n * (self.n + 1) * psi / safe ** 2)[:, None]
        M = a * (dY_phi[:, None] * theta_hat - dY_theta[:, None] * phi_hat)
        N = b * (dY_theta[:, None] * theta_hat + dY_phi[:, None] * phi_hat) + c * Y[:, None] * rho_hat

        M = np.asarray(M, dtype=complex)
        N = np.asarray(N, dtype=complex)
        if centre.any():
            M[centre] = 0.0
            N[centre] = (2.0 * self.k ** 2 / 3.0) * _centre_gradient(self.n, self.m, self.basis)
        return M, N

    def fields(self, points):
        M, N = self.vector_functions(points)
        if self.family == DIRICHLET_FAMILY:
            return M, N / (1j * self.k)
        return N, -1j * self.k * M

    def field(self, which, points):
        E, H = self.fields(points)
        return E if which == 'E' else H


def ball_spectrum(R, k_max, basis=specfun.COMPLEX_BASIS):
    """ Every ball mode with k <= k_max

    :param R: radius
    :param k_max: wavenumber ceiling
    :param basis: harmonic basis of the angular factor

    :returns: list of BallMode sorted by k, 2n + 1 modes per (family, n, p)
    """
    domain = BallDomain(R)
    if not (k_max > 0 and math.isfinite(k_max)):
        raise DomainError('k_max must be positive, got %r' % (k_max,))
    if basis not in specfun.HARMONIC_BASES:
        raise DomainError('unknown harmonic basis %r' % (basis,))

    n_max = int(math.ceil(k_max * R)) + ORDER_MARGIN
    modes = list()
    for family in (DIRICHLET_FAMILY, NEUMANN_FAMILY):
        for n in range(1, n_max + 1):
            zeros = rootfind.riccati_zeros(FAMILY_BC[family], n, R, limit=k_max).zeros
            for p, k in enumerate(zeros, 1):
                for m in range(-n, n + 1):
                    modes.append(BallMode(family, n, m, p, k, domain, basis))

    modes.sort(key=lambda mode: mode.sort_key)
    display.vvv(u'ball R=%.6g: %d modes with k <= %.6g' % (R, len(modes), k_max))
    return modes


def ball_field(mode, which, points):
    """ E or H of a ball mode at points of the closed ball """
    if which not in ('E', 'H'):
        raise DomainError("field must be 'E' or 'H', got %r" % (which,))
    points = as_points(points)
    inside = mode.domain.contains(points)
    if not inside.all():
        bad = points[np.flatnonzero(~inside)[0]]
        raise OutsideDomainError('point (%.6g, %.6g, %.6g) lies outside %r' % (bad[0], bad[1], bad[2], mode.domain))
    return mode.field(which, points)


def laplace_wavenumbers(R, count):
    """ Scalar Dirichlet wavenumbers k_0p of the ball, equal to p pi / R """
    return list(rootfind.riccati_zeros(rootfind.DIRICHLET, 0, R, count=count).zeros)
