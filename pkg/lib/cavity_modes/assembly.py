# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Maxwell modes of the product cavity omega x (0, length).

Every mode is a transverse factor (an eigenfunction or a topological
potential of the cross section) times an axial eigenfunction.  Fields
satisfy curl E = ik H and curl H = -ik E with k = +sqrt(Lambda); the axial
factors are L2 normalized, so a TEM field reads E = grad v sqrt(2/length)
sin(m pi x3 / length).
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import csv
import io
import math

import numpy as np

from ansible.module_utils.six import iteritems
from ansible.utils.display import Display

from cavity_modes import axial, rootfind, transverse
from cavity_modes.domains import FieldNorms, ProductDomain, as_points
from cavity_modes.errors import DomainError, OutsideDomainError


display = Display()

TE = 'TE'
TM = 'TM'
TEM = 'TEM'
MAGNETOSTATIC = 'MAGNETOSTATIC'
ELECTROSTATIC = 'ELECTROSTATIC'
HYBRID = 'HYBRID'
DIRICHLET_FAMILY = 'DIRICHLET'
NEUMANN_FAMILY = 'NEUMANN'
FAMILY_ORDER = (TE, TM, TEM, MAGNETOSTATIC, ELECTROSTATIC, HYBRID, DIRICHLET_FAMILY, NEUMANN_FAMILY)

CONDUCTING = 'conducting'
INSULATING = 'insulating'
MIXED = 'mixed'

WALL_FLAGS = {
    'cond': CONDUCTING,
    'ins-ends': INSULATING,
    'mixed-ends': MIXED,
}

# axial boundary condition of every family, per end wall configuration
AXIAL_BC = {
    CONDUCTING: {TE: axial.DIRICHLET, TM: axial.NEUMANN, TEM: axial.DIRICHLET},
    INSULATING: {TE: axial.NEUMANN, TM: axial.DIRICHLET, TEM: axial.NEUMANN},
    MIXED: {TE: axial.MIXED_DIR_NEU, TM: axial.MIXED_NEU_DIR, TEM: axial.MIXED_DIR_NEU},
}

STATIC_FAMILY = {
    CONDUCTING: MAGNETOSTATIC,
    INSULATING: ELECTROSTATIC,
    MIXED: None,
}

CSV_COLUMNS = ('Lambda', 'k', 'multiplicity', 'family', 'indices')


def index_key(index):
    return transverse.index_key(index)


class WallConfig(object):
    """ Wall types of the product cavity

    :param lateral: CONDUCTING, the only lateral wall supported
    :param ends: CONDUCTING, INSULATING or MIXED (conducting at x3 = 0,
        insulating at x3 = length)
    """

    def __init__(self, lateral=CONDUCTING, ends=CONDUCTING):
        if lateral != CONDUCTING:
            raise DomainError('lateral walls must be %s, got %r' % (CONDUCTING, lateral))
        if ends not in AXIAL_BC:
            raise DomainError('end walls must be one of %s, got %r' % (', '.join(sorted(AXIAL_BC)), ends))
        self.lateral = lateral
        self.ends = ends

    def __repr__(self):
        return 'WallConfig(lateral=%s, ends=%s)' % (self.lateral, self.ends)

    @classmethod
    def from_flag(cls, flag):
        try:
            return cls(ends=WALL_FLAGS[flag])
        except KeyError:
            raise DomainError('unknown wall configuration %r, expected one of %s' % (flag, ', '.join(sorted(WALL_FLAGS))))

    def axial_bc(self, family):
        return AXIAL_BC[self.ends][family]

    @property
    def static_family(self):
        return STATIC_FAMILY[self.ends]

    def end_kind(self, x3, length):
        """ Wall type of the end plane through x3 """
        if self.ends == MIXED:
            return CONDUCTING if x3 < 0.5 * length else INSULATING
        return self.ends


class ModeSpec(FieldNorms):
    """ One Maxwell mode of a product cavity

    :param polarization: TE, TM, TEM, MAGNETOSTATIC or ELECTROSTATIC
    :param factor: TransverseEigenpair (TE, TM) or TopologicalPotential
    :param axial_pair: AxialEigenpair
    :param domain: ProductDomain
    """

    def __init__(self, polarization, factor, axial_pair, domain):
        self.polarization = polarization
        self.factor = factor
        self.axial = axial_pair
        self.domain = domain
        if polarization in (TE, TM):
            self.Lambda = factor.eigenvalue + axial_pair.mu
        elif polarization == TEM:
            self.Lambda = axial_pair.mu
        else:
            self.Lambda = 0.0
        self.k = math.sqrt(self.Lambda)

    def __repr__(self):
        return 'ModeSpec(%s, Lambda=%.17g)' % (self.label, self.Lambda)

    @property
    def family(self):
        return self.polarization

    @property
    def indices(self):
        first = self.factor.index if self.polarization in (TE, TM) else (self.factor.d,)
        return (first, self.axial.m)

    @property
    def label(self):
        return '%s:%s:%d' % (self.polarization, self.factor.label, self.axial.m)

    @property
    def sort_key(self):
        first, m = self.indices
        return (self.Lambda, FAMILY_ORDER.index(self.polarization), index_key(first), m)

    def fields(self, points):
        """ Complex (E, H) at points, each shaped (N, 3) """
        points = as_points(points)
        x1, x2, x3 = points[:, 0], points[:, 1], points[:, 2]
        a = self.axial.value(x3)
        da = self.axial.derivative(x3)
        zero = np.zeros(x3.shape)
        pol = self.polarization

        if pol in (TE, TM):
            v, grad, lap = self.factor.evaluate(x1, x2)
        else:
            v, grad = self.factor.evaluate(x1, x2)
        g1, g2 = grad[0], grad[1]

        if pol == TE:
            E = np.column_stack((g2 * a, -g1 * a, zero))
            H = np.column_stack((g1 * da, g2 * da, -lap * a)) / (1j * self.k)
        elif pol == TM:
            E = np.column_stack((g1 * da, g2 * da, -lap * a))
            H = -1j * self.k * np.column_stack((g2 * a, -g1 * a, zero))
        elif pol == TEM:
            E = np.column_stack((g1 * a, g2 * a, zero))
            H = (1j / self.k) * np.column_stack((g2 * da, -g1 * da, zero))
        elif pol == MAGNETOSTATIC:
            E = np.zeros((x3.size, 3))
            H = np.column_stack((g2 * a, -g1 * a, zero))
        else:
            E = np.column_stack((g1 * a, g2 * a, zero))
            H = np.zeros((x3.size, 3))
        return E.astype(complex), H.astype(complex)

    def field(self, which, points):
        E, H = self.fields(points)
        return E if which == 'E' else H


def build_modes(cs, length, walls, lam_max):
    """ Every mode of cs x (0, length) with Lambda <= lam_max

    :param cs: transverse.CrossSection
    :param length: cavity length
    :param walls: WallConfig
    :param lam_max: positive eigenvalue ceiling

    :returns: list of ModeSpec sorted by Lambda, then TE < TM < TEM, then
        indices
    """
    if not (lam_max > 0 and math.isfinite(lam_max)):
        raise DomainError('Lambda_max must be positive, got %r' % (lam_max,))
    domain = ProductDomain(cs, length)
    backend = domain.backend
    modes = list()

    for family, bc in ((TE, transverse.NEUMANN), (TM, transverse.DIRICHLET)):
        axial_bc = walls.axial_bc(family)
        for pair in backend.eigenpairs_below(bc, lam_max):
            if pair.eigenvalue <= 0.0:
                continue
            for w in axial.axial_below(axial_bc, length, lam_max - pair.eigenvalue):
                modes.append(ModeSpec(family, pair, w, domain))

    potentials = backend.topological_potentials()
    for potential in potentials:
        for w in axial.axial_below(walls.axial_bc(TEM), length, lam_max):
            if w.mu > 0.0:
                modes.append(ModeSpec(TEM, potential, w, domain))

    static = walls.static_family
    if static is not None:
        constant = axial.AxialEigenpair(axial.NEUMANN, 0, length)
        for potential in potentials:
            modes.append(ModeSpec(static, potential, constant, domain))

    modes.sort(key=lambda mode: mode.sort_key)
    counts = dict()
    for mode in modes:
        counts[mode.polarization] = counts.get(mode.polarization, 0) + 1
    display.vvv(u'%r x (0, %.6g), %r: %s' % (cs, length, walls,
                ', '.join('%d %s' % (n, family) for family, n in sorted(iteritems(counts)))))
    return modes


class SpectrumEntry(object):

    def __init__(self, Lambda, contributors):
        self.Lambda = Lambda
        self.contributors = list(contributors)

    def __repr__(self):
        return 'SpectrumEntry(Lambda=%.17g, multiplicity=%d)' % (self.Lambda, self.multiplicity)

    @property
    def k(self):
        return math.sqrt(self.Lambda)

    @property
    def multiplicity(self):
        return len(self.contributors)

    @property
    def family(self):
        families = list()
        for mode in self.contributors:
            if mode.family not in families:
                families.append(mode.family)
        return '+'.join(families)

    @property
    def indices(self):
        return ' '.join(mode.label for mode in self.contributors)

    def to_dict(self, norms=False):
        """ Plain entry; with norms, also the L2 norms of E and H of every contributor """
        result = dict(Lambda=self.Lambda, k=self.k, multiplicity=self.multiplicity,
                      family=self.family, indices=self.indices)
        if norms:
            result['norms'] = [dict(mode=mode.label, norm_E=mode.norm_E, norm_H=mode.norm_H)
                                 for mode in self.contributors]
        return result


class SpectrumTable(object):
    """ Merged eigenvalue list with multiplicities and contributors """

    def __init__(self, entries, merge_tol):
        self.entries = list(entries)
        self.merge_tol = merge_tol

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, item):
        return self.entries[item]

    @property
    def modes(self):
        return [mode for entry in self.entries for mode in entry.contributors]

    @property
    def total(self):
        return sum(entry.multiplicity for entry in self.entries)

    def pairs(self):
        return [(entry.Lambda, entry.multiplicity) for entry in self.entries]

    def multiplicity_at(self, Lambda, tol=1e-9):
        for entry in self.entries:
            if abs(entry.Lambda - Lambda) <= tol * max(1.0, abs(Lambda)):
                return entry.multiplicity
        return 0

    def rows(self, norms=False):
        return [entry.to_dict(norms) for entry in self.entries]

    def to_csv(self):
        handle = io.StringIO()
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for entry in self.entries:
            writer.writerow(['%.17g' % entry.Lambda, '%.17g' % entry.k, entry.multiplicity,
                             entry.family, entry.indices])
        return handle.getvalue()


def merge_modes(modes, merge_tol):
    """ Group sorted modes whose eigenvalues lie within merge_tol max(1, Lambda)

    The entry carries the smallest eigenvalue of its group.
    """
    if not merge_tol >= 0:
        raise DomainError('merge_tol must be non negative, got %r' % (merge_tol,))
    modes = sorted(modes, key=lambda mode: mode.sort_key)
    entries = list()
    group = list()
    for mode in modes:
        if group and mode.Lambda - group[0].Lambda > merge_tol * max(1.0, group[0].Lambda):
            entries.append(SpectrumEntry(group[0].Lambda, group))
            group = list()
        group.append(mode)
    if group:
        entries.append(SpectrumEntry(group[0].Lambda, group))
    return SpectrumTable(entries, merge_tol)


def spectrum_table(cs, length, walls, lam_max, merge_tol=None):
    """ Sorted, merged eigenvalue table of cs x (0, length)

    :param merge_tol: relative merge tolerance, defaults to 1e-9 for the
        analytic backends and 10 h^2 for grids
    """
    if merge_tol is None:
        merge_tol = transverse.backend(cs).default_merge_tol
    return merge_modes(build_modes(cs, length, walls, lam_max), merge_tol)


def evaluate_field(mode, which, points):
    """ E or H of a mode at points inside its cavity (boundary included)

    :returns: complex array (N, 3) of Cartesian components
    """
    if which not in ('E', 'H'):
        raise DomainError("field must be 'E' or 'H', got %r" % (which,))
    points = as_points(points)
    inside = mode.domain.contains(points)
    if not inside.all():
        bad = points[np.flatnonzero(~inside)[0]]
        raise OutsideDomainError('point (%.6g, %.6g, %.6g) lies outside %r' % (bad[0], bad[1], bad[2], mode.domain))
    return mode.field(which, points)


def cuboid_scalar_table(a, b, length, lam_max, merge_tol=1e-9):
    """ Scalar enumeration of the Maxwell eigenvalues of (0,a) x (0,b) x (0,length)

    (pi k1/a)^2 + (pi k2/b)^2 + (pi k3/length)^2 counts once when exactly one
    index vanishes and twice when none does.

    :returns: list of (Lambda, multiplicity)
    """
    counts = list()
    f1, f2, f3 = math.pi / a, math.pi / b, math.pi / length
    for k1 in range(int(math.sqrt(lam_max) / f1) + 1):
        for k2 in range(int(math.sqrt(lam_max) / f2) + 1):
            for k3 in range(int(math.sqrt(lam_max) / f3) + 1):
                Lambda = (k1 * f1) ** 2 + (k2 * f2) ** 2 + (k3 * f3) ** 2
                if Lambda > lam_max:
                    continue
                zeros = (k1, k2, k3).count(0)
                if zeros <= 1:
                    counts.append((Lambda, 2 - zeros))
    counts.sort()

    table = list()
    for Lambda, weight in counts:
        if table and Lambda - table[-1][0] <= merge_tol * max(1.0, table[-1][0]):
            table[-1][1] += weight
        else:
            table.append([Lambda, weight])
    return [(Lambda, multiplicity) for Lambda, multiplicity in table]


def cylinder_lowest(R, length):
    """ Lowest Maxwell eigenvalue of the conducting cylinder of radius R

    min(z'_11^2 / R^2 + (pi / length)^2, z_01^2 / R^2)
    """
    te = rootfind.j_prime_zeros(1, count=1).zeros[0] / R
    tm = rootfind.j_zeros(0, count=1).zeros[0] / R
    return min(te * te + (math.pi / length) ** 2, tm * tm)
