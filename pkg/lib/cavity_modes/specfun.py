# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Special functions used by the analytic backends.

Every function accepts scalars or numpy arrays and returns the same shape;
scalar input gives a python float (or complex) back.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numbers

import numpy as np

from scipy import special

from cavity_modes.errors import DomainError


FIRST_KIND = 'J'
SECOND_KIND = 'Y'
BESSEL_KINDS = (FIRST_KIND, SECOND_KIND)

PSI = 'psi'
CHI = 'chi'
RICCATI_KINDS = (PSI, CHI)

COMPLEX_BASIS = 'complex'
REAL_BASIS = 'real'
HARMONIC_BASES = (COMPLEX_BASIS, REAL_BASIS)


def _check_order(n):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 0:
        raise DomainError('order must be a non negative integer, got %r' % (n,))
    return int(n)


def _check_argument(x, positive=False):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError('argument must be finite')
    if positive:
        if np.any(arr <= 0):
            raise DomainError('argument must be positive')
    elif np.any(arr < 0):
        raise DomainError('argument must be non negative')
    return arr


def _shaped(value, x):
    if np.ndim(x) == 0:
        return value.item() if isinstance(value, np.ndarray) else value
    return value


def bessel_j(n, x):
    n = _check_order(n)
    arr = _check_argument(x)
    return _shaped(special.jv(n, arr), x)


def bessel_j_prime(n, x):
    """ J'_n(x) from J_{n-1} - J_{n+1} = 2 J'_n """
    n = _check_order(n)
    arr = _check_argument(x)
    return _shaped(0.5 * (special.jv(n - 1, arr) - special.jv(n + 1, arr)), x)


def bessel_y(n, x):
    n = _check_order(n)
    arr = _check_argument(x, positive=True)
    return _shaped(special.yv(n, arr), x)


def bessel_y_prime(n, x):
    n = _check_order(n)
    arr = _check_argument(x, positive=True)
    return _shaped(0.5 * (special.yv(n - 1, arr) - special.yv(n + 1, arr)), x)


def bessel(kind, n, x):
    if kind == FIRST_KIND:
        return bessel_j(n, x)
    if kind == SECOND_KIND:
        return bessel_y(n, x)
    raise DomainError('unknown Bessel kind %r, expected one of %s' % (kind, ', '.join(BESSEL_KINDS)))


def bessel_prime(kind, n, x):
    if kind == FIRST_KIND:
        return bessel_j_prime(n, x)
    if kind == SECOND_KIND:
        return bessel_y_prime(n, x)
    raise DomainError('unknown Bessel kind %r, expected one of %s' % (kind, ', '.join(BESSEL_KINDS)))


def riccati(kind, n, x):
    """ Riccati-Bessel function and its derivative

    psi_n(x) = x j_n(x) and chi_n(x) = -x y_n(x).

    :param kind: PSI or CHI
    :param n: non negative integer order
    :param x: positive argument

    :returns: tuple (value, derivative)
    """
    n = _check_order(n)
    arr = _check_argument(x, positive=True)

    if kind == PSI:
        if n == 0:
            value, derivative = np.sin(arr), np.cos(arr)
        else:
            jn = special.spherical_jn(n, arr)
            value = arr * jn
            derivative = jn + arr * special.spherical_jn(n, arr, derivative=True)
    elif kind == CHI:
        if n == 0:
            value, derivative = np.cos(arr), -np.sin(arr)
        else:
            yn = special.spherical_yn(n, arr)
            value = -arr * yn
            derivative = -(yn + arr * special.spherical_yn(n, arr, derivative=True))
    else:
        raise DomainError('unknown Riccati kind %r, expected one of %s' % (kind, ', '.join(RICCATI_KINDS)))

    return _shaped(value, x), _shaped(derivative, x)


def normalized_legendre(nmax, theta):
    """ Fully normalized associated Legendre tables for 0 <= m <= n <= nmax

    Normalization includes the 1/sqrt(4 pi) factor and the Condon-Shortley
    phase, so that Y_n^m(theta, phi) = P[m, n] exp(i m phi) is orthonormal on
    the unit sphere.

    :param nmax: highest degree
    :param theta: polar angle(s) in [0, pi]

    :returns: tuple (P, Q, dP) of arrays shaped (nmax + 1, nmax + 1) +
        theta.shape, indexed [m, n]; Q = P / sin(theta) for m >= 1 (regular
        at the poles, zero for m = 0) and dP = dP/dtheta
    """
    nmax = _check_order(nmax)
    theta = np.asarray(theta, dtype=float)
    t = np.cos(theta)
    u = -np.sin(theta)

    shape = (nmax + 1, nmax + 1) + theta.shape
    P = np.zeros(shape)
    Q = np.zeros(shape)
    dP = np.zeros(shape)

    P[0, 0] = np.sqrt(1.0 / (4.0 * np.pi))

    # diagonal: P[m, m] = c_m u^m, Q[m, m] = -c_m u^(m - 1)
    coefficient = np.sqrt(1.0 / (4.0 * np.pi))
    for m in range(1, nmax + 1):
        coefficient *= np.sqrt((2.0 * m + 1.0) / (2.0 * m))
        P[m, m] = coefficient * u ** m
        Q[m, m] = -coefficient * u ** (m - 1)

    for m in range(0, nmax):
        factor = np.sqrt(2.0 * m + 3.0)
        P[m, m + 1] = factor * t * P[m, m]
        Q[m, m + 1] = factor * t * Q[m, m]

    for m in range(0, nmax + 1):
        for n in range(m + 1, nmax):
            an = np.sqrt((2.0 * n + 1.0) * (2.0 * n + 3.0) / ((1.0 + n + m) * (1.0 + n - m)))
            bn = np.sqrt((2.0 * n + 3.0) * (n - m) * (n + m) /
                         ((2.0 * n - 1.0) * (1.0 + n + m) * (1.0 + n - m)))
            P[m, n + 1] = an * t * P[m, n] - bn * P[m, n - 1]
            Q[m, n + 1] = an * t * Q[m, n] - bn * Q[m, n - 1]

    for n in range(1, nmax + 1):
        dP[0, n] = np.sqrt(n * (n + 1.0)) * P[1, n]
        for m in range(1, n + 1):
            lower = Q[m, n - 1] if n - 1 >= m else 0.0
            dP[m, n] = n * t * Q[m, n] - np.sqrt((2.0 * n + 1.0) * (n - m) * (n + m) / (2.0 * n - 1.0)) * lower

    return P, Q, dP


def _check_harmonic_index(n, m):
    n = _check_order(n)
    if isinstance(m, bool) or not isinstance(m, numbers.Integral) or abs(m) > n:
        raise DomainError('harmonic order must satisfy |m| <= n, got n=%r m=%r' % (n, m))
    return n, int(m)


def spherical_harmonic_terms(n, m, theta, phi, basis=COMPLEX_BASIS):
    """ Y_n^m with its angular derivatives

    :param n: degree
    :param m: order, |m| <= n
    :param theta: polar angle(s)
    :param phi: azimuth(s)
    :param basis: COMPLEX_BASIS (orthonormal Y_n^m) or REAL_BASIS
        (sqrt(2) cos(m phi) for m > 0, sqrt(2) sin(|m| phi) for m < 0)

    :returns: tuple (Y, dY/dtheta, (dY/dphi) / sin(theta)); the last term is
        evaluated from the regular P/sin(theta) table so it is finite at
        the poles
    """
    n, m = _check_harmonic_index(n, m)
    if basis not in HARMONIC_BASES:
        raise DomainError('unknown harmonic basis %r' % (basis,))

    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    P, Q, dP = normalized_legendre(n, theta)
    am = abs(m)
    p, q, dp = P[am, n], Q[am, n], dP[am, n]

    if basis == COMPLEX_BASIS:
        sign = (-1.0) ** am if m < 0 else 1.0
        phase = np.exp(1j * m * phi)
        value = sign * p * phase
        dtheta = sign * dp * phase
        dphi = sign * 1j * m * q * phase
    elif m == 0:
        value = p + 0.0 * phi
        dtheta = dp + 0.0 * phi
        dphi = np.zeros(np.broadcast(theta, phi).shape)
    elif m > 0:
        value = np.sqrt(2.0) * p * np.cos(m * phi)
        dtheta = np.sqrt(2.0) * dp * np.cos(m * phi)
        dphi = -np.sqrt(2.0) * m * q * np.sin(m * phi)
    else:
        value = np.sqrt(2.0) * p * np.sin(am * phi)
        dtheta = np.sqrt(2.0) * dp * np.sin(am * phi)
        dphi = np.sqrt(2.0) * am * q * np.cos(am * phi)

    return value, dtheta, dphi


def spherical_harmonic(n, m, theta, phi):
    """ Orthonormal complex spherical harmonic Y_n^m(theta, phi) """
    value = spherical_harmonic_terms(n, m, theta, phi)[0]
    if np.ndim(value) == 0:
        return complex(value)
    return value
