# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math
import numbers

import numpy as np

from cavity_modes.errors import DomainError


DIRICHLET = 'dirichlet'
NEUMANN = 'neumann'
MIXED_DIR_NEU = 'mixed_dir_neu'
MIXED_NEU_DIR = 'mixed_neu_dir'
AXIAL_BCS = (DIRICHLET, NEUMANN, MIXED_DIR_NEU, MIXED_NEU_DIR)


class AxialEigenpair(object):
    """ Closed-form eigenpair of -w'' = mu w on (0, length)

    Dirichlet and Neumann pairs use mu = (m pi / length)^2, the mixed pairs
    (m - 1/2)^2 (pi / length)^2.  Every w is L2(0, length) normalized.
    """

    def __init__(self, bc, m, length):
        self.bc = bc
        self.m = m
        self.length = float(length)

        if bc in (DIRICHLET, NEUMANN):
            self.frequency = m * (math.pi / self.length)
        else:
            self.frequency = (m - 0.5) * (math.pi / self.length)

        if bc == NEUMANN and m == 0:
            self.amplitude = math.sqrt(1.0 / self.length)
        else:
            self.amplitude = math.sqrt(2.0 / self.length)

        self.mu = self.frequency ** 2

    def __repr__(self):
        return 'AxialEigenpair(bc=%r, m=%d, mu=%.17g)' % (self.bc, self.m, self.mu)

    @property
    def wavenumber(self):
        return self.frequency

    def _is_sine(self):
        return self.bc in (DIRICHLET, MIXED_DIR_NEU)

    def value(self, x3):
        arg = self.frequency * np.asarray(x3, dtype=float)
        if self._is_sine():
            return self.amplitude * np.sin(arg)
        return self.amplitude * np.cos(arg)

    def derivative(self, x3):
        arg = self.frequency * np.asarray(x3, dtype=float)
        if self._is_sine():
            return self.amplitude * self.frequency * np.cos(arg)
        return -self.amplitude * self.frequency * np.sin(arg)

    def second_derivative(self, x3):
        return -self.mu * self.value(x3)


def _first_index(bc):
    return 0 if bc == NEUMANN else 1


def _check(bc, length):
    if bc not in AXIAL_BCS:
        raise DomainError('unknown axial boundary condition %r' % (bc,))
    if not (length > 0 and math.isfinite(length)):
        raise DomainError('interval length must be positive, got %r' % (length,))


def axial_spectrum(bc, length, count):
    """ The first count eigenpairs of -d^2/dx3^2 on (0, length)

    :param bc: one of DIRICHLET, NEUMANN, MIXED_DIR_NEU (w(0) = 0,
        w'(length) = 0) or MIXED_NEU_DIR (w'(0) = 0, w(length) = 0)
    :param length: interval length
    :param count: number of eigenpairs

    :returns: list of AxialEigenpair sorted by mu
    """
    _check(bc, length)
    if isinstance(count, bool) or not isinstance(count, numbers.Integral) or count < 1:
        raise DomainError('count must be a positive integer, got %r' % (count,))
    first = _first_index(bc)
    return [AxialEigenpair(bc, m, length) for m in range(first, first + count)]


def axial_below(bc, length, mu_max):
    """ Every axial eigenpair with mu <= mu_max """
    _check(bc, length)
    pairs = list()
    m = _first_index(bc)
    while True:
        pair = AxialEigenpair(bc, m, length)
        if pair.mu > mu_max:
            return pairs
        pairs.append(pair)
        m += 1
