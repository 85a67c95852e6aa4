# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Ordered zero sequences of the Bessel, cross-product and Riccati-Bessel
functions that define the analytic spectra.

Zeros are bracketed by a sign-change scan whose step is a fraction of the
asymptotic zero spacing and refined with Brent's method.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import collections
import functools
import numbers

import numpy as np

from scipy import optimize, special

from ansible.utils.display import Display

from cavity_modes import specfun
from cavity_modes.errors import BracketingError, DomainError


display = Display()

J_ZERO = 'JZero'
J_PRIME_ZERO = 'JPrimeZero'
ANNULUS_DIRICHLET = 'AnnulusDirichlet'
ANNULUS_NEUMANN = 'AnnulusNeumann'
RICCATI_DIRICHLET = 'RiccatiDirichlet'
RICCATI_NEUMANN = 'RiccatiNeumann'

DIRICHLET = 'dirichlet'
NEUMANN = 'neumann'

# scan steps are fractions of the asymptotic zero spacing (pi in x)
SCAN_FRACTION = 0.125
CHUNK = 256
XTOL = 1e-15
TANGENCY_WIDTH = 1e-9


ZeroSequence = collections.namedtuple('ZeroSequence', ['family', 'n', 'params', 'zeros'])


def _check_count(count, limit):
    if count is None and limit is None:
        raise DomainError('either count or limit is required')
    if count is not None:
        if isinstance(count, bool) or not isinstance(count, numbers.Integral) or count < 1:
            raise DomainError('count must be a positive integer, got %r' % (count,))
    if limit is not None and not (limit > 0):
        raise DomainError('limit must be positive, got %r' % (limit,))


def _check_bc(bc):
    if bc not in (DIRICHLET, NEUMANN):
        raise DomainError('boundary condition must be %s or %s, got %r' % (DIRICHLET, NEUMANN, bc))


def _refine(func, a, b, fa, fb):
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    root = optimize.brentq(func, a, b, xtol=XTOL, rtol=4 * np.finfo(float).eps, maxiter=200)

    width = TANGENCY_WIDTH * max(1.0, abs(root))
    left, right = func(root - width), func(root + width)
    if left * right > 0:
        raise BracketingError('tangential zero near %.17g: the function does not change sign' % root)
    return root


def scan_zeros(func, start, step, stop, count=None, label='function'):
    """ Collect the positive zeros of func on (start, stop] in increasing order

    :param func: vectorized real function
    :param start: left end of the scan, func(start) must not vanish
    :param step: scan step, smaller than half the smallest zero spacing
    :param stop: right end of the scan
    :param count: stop after this many zeros when given
    :param label: name used in diagnostics

    :returns: list of zeros
    """
    zeros = list()
    left = float(start)
    f_left = float(func(np.array([left]))[0])

    while left < stop:
        grid = left + step * np.arange(1, CHUNK + 1)
        grid = grid[grid <= stop + step]
        if grid.size == 0:
            break
        values = np.asarray(func(grid), dtype=float)
        points = np.concatenate(([left], grid))
        samples = np.concatenate(([f_left], values))
        display.vvvv(u'scanning %s on [%.6g, %.6g]' % (label, points[0], points[-1]))

        for idx in range(points.size - 1):
            a, b = points[idx], points[idx + 1]
            fa, fb = samples[idx], samples[idx + 1]
            if fa == 0.0 and idx > 0:
                continue
            if fa * fb < 0 or fb == 0.0:
                root = _refine(lambda x: float(func(np.array([x]))[0]), a, b, fa, fb)
                if root > stop:
                    return zeros
                zeros.append(root)
                if count is not None and len(zeros) >= count:
                    return zeros

        left, f_left = points[-1], samples[-1]

    return zeros


def _finish(family, n, params, zeros, count, limit, stop):
    if count is not None and len(zeros) < count and limit is None:
        raise BracketingError('%s scan for n=%d reached %.6g with %d of %d zeros'
                              % (family, n, stop, len(zeros), count))
    if limit is not None:
        zeros = [z for z in zeros if z <= limit]
    if count is not None:
        zeros = zeros[:count]
    return ZeroSequence(family, n, params, tuple(zeros))


def _order_start(n):
    # the first zero of J_n, J'_n (n >= 1), psi_n and psi'_n lies beyond n
    return float(n) if n > 0 else 1e-6


def j_zeros(n, count=None, limit=None):
    """ First positive zeros of J_n

    :param n: non negative integer order
    :param count: number of zeros wanted
    :param limit: alternatively, return every zero not exceeding limit

    :returns: ZeroSequence
    """
    n = specfun._check_order(n)
    _check_count(count, limit)
    stop = limit if limit is not None else (count + n + 10) * 2 * np.pi

    func = functools.partial(special.jv, n)
    zeros = scan_zeros(func, _order_start(n), SCAN_FRACTION * np.pi, stop, count, 'J_%d' % n)
    return _finish(J_ZERO, n, {}, zeros, count, limit, stop)


def j_prime_zeros(n, count=None, limit=None):
    """ First positive zeros of J'_n; the zero of J'_0 at the origin is excluded """
    n = specfun._check_order(n)
    _check_count(count, limit)
    stop = limit if limit is not None else (count + n + 10) * 2 * np.pi

    func = functools.partial(special.jvp, n)
    zeros = scan_zeros(func, _order_start(n), SCAN_FRACTION * np.pi, stop, count, "J'_%d" % n)
    return _finish(J_PRIME_ZERO, n, {}, zeros, count, limit, stop)


def annulus_determinant(bc, n, r0, R):
    """ Cross-product whose zeros in k are the annulus eigen-wavenumbers

    Dirichlet: J_n(k r0) Y_n(k R) - Y_n(k r0) J_n(k R); Neumann uses the
    derivatives at both radii.
    """
    _check_bc(bc)
    if bc == DIRICHLET:
        f, g = special.jv, special.yv
    else:
        f, g = special.jvp, special.yvp

    def determinant(k):
        return f(n, k * r0) * g(n, k * R) - g(n, k * r0) * f(n, k * R)

    return determinant


def annulus_zeros(bc, n, r0, R, count=None, limit=None, k_max=None):
    """ First positive zeros of the annulus cross-product

    The scan runs in the dimensionless variable x = k R with ratio r0 / R,
    so rescaling both radii rescales the zeros exactly.

    :param bc: DIRICHLET or NEUMANN
    :param n: angular order
    :param r0: inner radius
    :param R: outer radius
    :param count: number of zeros wanted
    :param limit: alternatively, every zero k <= limit
    :param k_max: scan ceiling, default 200 / (R - r0)

    :returns: ZeroSequence of wavenumbers k
    """
    _check_bc(bc)
    n = specfun._check_order(n)
    _check_count(count, limit)
    if not (0 < r0 < R):
        raise DomainError('annulus radii must satisfy 0 < r0 < R, got r0=%r R=%r' % (r0, R))

    if limit is not None:
        if k_max is not None and limit > k_max:
            raise BracketingError('requested limit %.6g exceeds k_max=%.6g' % (limit, k_max))
        stop_k = limit
    else:
        stop_k = float(k_max) if k_max is not None else 200.0 / (R - r0)
    ratio = r0 / R
    determinant = annulus_determinant(bc, n, ratio, 1.0)
    step = SCAN_FRACTION * np.pi / (1.0 - ratio)
    start = float(n) if n > 0 else 1e-6

    family = ANNULUS_DIRICHLET if bc == DIRICHLET else ANNULUS_NEUMANN
    label = '%s n=%d r0/R=%.6g' % (family, n, ratio)
    xs = scan_zeros(determinant, start, step, stop_k * R, count, label)

    params = {'r0': r0, 'R': R}
    if count is not None and len(xs) < count and limit is None:
        raise BracketingError('%s scan for n=%d reached k_max=%.6g with %d of %d zeros'
                              % (family, n, stop_k, len(xs), count))
    zeros = [x / R for x in xs]
    if limit is not None:
        zeros = [z for z in zeros if z <= limit]
    if count is not None:
        zeros = zeros[:count]
    return ZeroSequence(family, n, params, tuple(zeros))


def riccati_zeros(bc, n, R=1.0, count=None, limit=None):
    """ Ball eigen-wavenumbers: zeros of k -> psi_n(k R) or psi'_n(k R)

    :param bc: DIRICHLET (psi_n) or NEUMANN (psi'_n)
    :param n: order
    :param R: ball radius
    :param count: number of zeros wanted
    :param limit: alternatively, every zero k <= limit

    :returns: ZeroSequence of wavenumbers k
    """
    _check_bc(bc)
    n = specfun._check_order(n)
    _check_count(count, limit)
    if not R > 0:
        raise DomainError('radius must be positive, got %r' % (R,))

    index = 0 if bc == DIRICHLET else 1

    def func(x):
        return specfun.riccati(specfun.PSI, n, x)[index]

    stop_x = limit * R if limit is not None else (count + n + 10) * 2 * np.pi
    family = RICCATI_DIRICHLET if bc == DIRICHLET else RICCATI_NEUMANN

    xs = scan_zeros(func, _order_start(n), SCAN_FRACTION * np.pi, stop_x, count, '%s n=%d' % (family, n))
    if count is not None and len(xs) < count and limit is None:
        raise BracketingError('%s scan for n=%d reached %.6g with %d of %d zeros'
                              % (family, n, stop_x, len(xs), count))
    zeros = [x / R for x in xs]
    if limit is not None:
        zeros = [z for z in zeros if z <= limit]
    if count is not None:
        zeros = zeros[:count]
    return ZeroSequence(family, n, {'R': R}, tuple(zeros))
