# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Numerical checks of computed modes.

Fields are callables mapping points (N, 3) to values (N, 3) (or (N,) for
scalar functions).  Every check returns a CheckReport; suites submit their
checks to a thread pool and collect the reports in submission order.
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ansible.utils.display import Display

from cavity_modes import assembly, ball, specfun, transverse
from cavity_modes.domains import LATERAL, as_points
from cavity_modes.errors import BoundaryProximityError, DomainError
from cavity_modes.utils import thread_count


display = Display()

DIV = 'div'
CURL = 'curl'
CURLCURL = 'curlcurl'
OPERATORS = (DIV, CURL, CURLCURL)

DEFAULT_SEED = 0x5EED
DEFAULT_SAMPLES = 8
WORST = 3

DIV_STEP, DIV_TOL = 1e-4, 1e-6
RESIDUAL_STEP, RESIDUAL_TOL = 1e-3, 1e-4
COUPLING_STEP, COUPLING_TOL = 1e-4, 1e-6
BOUNDARY_TOL = 1e-8
ORTHOGONALITY_TOL = 1e-6
ORTHOGONALITY_ORDER = 24
STRICT_MERGE_TOL = 1e-9

# grid modes: difference step h, residuals of order h^2 Lambda, walls of order h k
GRID_FIELD_RTOL = 2.0
GRID_WALL_RTOL = 1.0


class CheckReport(object):
    """ Outcome of one check

    :param check_name: name shown in reports
    :param max_residual: worst residual found
    :param tolerance: residual bound
    :param samples: number of evaluated samples
    :param details: list of worst offenders, dicts with location and value
    """

    def __init__(self, check_name, max_residual, tolerance, samples, details=None):
        self.check_name = check_name
        self.max_residual = float(max_residual)
        self.tolerance = float(tolerance)
        self.samples = int(samples)
        self.details = list(details or [])

    def __repr__(self):
        return 'CheckReport(%s, %.3g <= %.3g: %s)' % (self.check_name, self.max_residual, self.tolerance,
                                                      'pass' if self.passed else 'FAIL')

    @property
    def passed(self):
        return bool(self.max_residual <= self.tolerance)

    def to_dict(self):
        return dict(check=self.check_name, residual=self.max_residual, tolerance=self.tolerance,
                    passed=self.passed, samples=self.samples, details=self.details)


def _worst(labels, points, residuals):
    order = np.argsort(-np.asarray(residuals))[:WORST]
    return [dict(mode=labels[i], location=[float(x) for x in points[i]], value=float(residuals[i]))
            for i in order]


def _values(field, points):
    values = np.asarray(field(points))
    return values.reshape(points.shape[0], -1)


def fd_operator(field, op, point, h_fd, domain=None):
    """ Central difference div, curl or curl curl of a vector field

    Second order accurate, exact for quadratic fields up to rounding.

    :param field: callable points (N, 3) -> values (N, 3)
    :param op: DIV, CURL or CURLCURL
    :param point: one point (3,) or points (N, 3)
    :param h_fd: difference step
    :param domain: when given, points must lie deeper than 2 h_fd inside it

    :returns: array (N,) for DIV, (N, 3) otherwise
    """
    if op not in OPERATORS:
        raise DomainError('unknown operator %r, expected one of %s' % (op, ', '.join(OPERATORS)))
    points = as_points(point)
    if domain is not None:
        depth = domain.distance_to_boundary(points)
        if np.any(depth <= 2.0 * h_fd):
            raise BoundaryProximityError('stencil of width %g leaves the domain at depth %.3g'
                                         % (2.0 * h_fd, float(depth.min())))
    count = points.shape[0]
    eye = np.eye(3) * h_fd

    if op in (DIV, CURL):
        stencil = [points + eye[j] for j in range(3)] + [points - eye[j] for j in range(3)]
        values = _values(field, np.vstack(stencil)).reshape(6, count, 3)
        # jac[j][:, i] = d_j F_i
        jac = [(values[j] - values[j + 3]) / (2.0 * h_fd) for j in range(3)]
        if op == DIV:
            return jac[0][:, 0] + jac[1][:, 1] + jac[2][:, 2]
        return np.column_stack((jac[1][:, 2] - jac[2][:, 1],
                                jac[2][:, 0] - jac[0][:, 2],
                                jac[0][:, 1] - jac[1][:, 0]))

    # curl curl F = grad div F - Lap F
    def unit(i, sign):
        return tuple(sign if a == i else 0 for a in range(3))

    def pair(i, si, j, sj):
        return tuple(si if a == i else (sj if a == j else 0) for a in range(3))

    keys = [(0, 0, 0)] + [unit(i, sign) for i in range(3) for sign in (1, -1)]
    keys += [pair(i, si, j, sj) for i in range(3) for j in range(i + 1, 3) for si in (1, -1) for sj in (1, -1)]
    values = _values(field, np.vstack([points + h_fd * np.array(key, dtype=float) for key in keys]))
    shifts = dict((key, values[n * count:(n + 1) * count]) for n, key in enumerate(keys))

    centre = shifts[(0, 0, 0)]
    second = [(shifts[unit(i, 1)] - 2.0 * centre + shifts[unit(i, -1)]) / h_fd ** 2 for i in range(3)]
    laplacian = second[0] + second[1] + second[2]
    grad_div = np.zeros(laplacian.shape, dtype=laplacian.dtype)
    for i in range(3):
        for j in range(3):
            if i == j:
                grad_div[:, i] += second[i][:, i]
                continue
            a, b = min(i, j), max(i, j)
            mixed = (shifts[pair(a, 1, b, 1)] - shifts[pair(a, 1, b, -1)]
                     - shifts[pair(a, -1, b, 1)] + shifts[pair(a, -1, b, -1)]) / (4.0 * h_fd ** 2)
            grad_div[:, i] += mixed[:, j]
    return grad_div - laplacian


def gram_matrix(fields, domain, quadrature_order):
    """ Hermitian matrix of L2(domain) inner products <f_i, f_j>

    :param fields: list of callables points (N, 3) -> values (N, 3) or (N,)
    :param domain: ProductDomain or BallDomain
    :param quadrature_order: Gauss-Legendre order per direction, >= 8
    """
    if quadrature_order < 8:
        raise DomainError('quadrature order must be at least 8, got %r' % (quadrature_order,))
    points, weights = domain.quadrature(quadrature_order)
    samples = np.array([_values(field, points) for field in fields])
    gram = np.einsum('w,iwc,jwc->ij', weights, np.conj(samples), samples)
    return 0.5 * (gram + np.conj(gram.T))


def rank_deficient(gram, tol=1e-12):
    """ True when the smallest singular value of gram is <= tol times the largest """
    singular = np.linalg.svd(gram, compute_uv=False)
    return bool(singular[-1] <= tol * max(singular[0], 1.0))


def convergence_order(values, rtol=0.1):
    """ Least squares slope of log(error) against log(h)

    :param values: list of (h, error), at least three levels
    :param rtol: allowed relative growth of the error as h decreases

    :returns: the observed order
    """
    values = sorted(values, key=lambda item: -item[0])
    if len(values) < 3:
        raise DomainError('convergence order needs at least 3 grid levels, got %d' % len(values))
    hs = np.array([float(h) for h, _ in values])
    errors = np.array([float(e) for _, e in values])
    if np.any(hs <= 0) or np.any(errors <= 0) or not np.all(np.isfinite(errors)):
        raise DomainError('grid sizes and errors must be positive and finite')
    if np.any(errors[1:] > errors[:-1] * (1.0 + rtol)):
        raise DomainError('errors grow as h decreases: %s' % ', '.join('%.3g' % e for e in errors))
    order = float(np.polyfit(np.log(hs), np.log(errors), 1)[0])
    if abs(order) < 0.5:
        display.warning(u'observed convergence order %.3g: the error does not decrease with h' % order)
    return order


def _field(mode, which):
    return lambda points: mode.field(which, points)


def _scale(values):
    return max(float(np.max(np.abs(values))), 1e-300)


def _interior_points(mode, samples, rng, h_fd, grid=None):
    points = mode.domain.sample_interior(samples, rng, margin=3.0 * h_fd)
    if grid is not None:
        # cell centres, so every stencil point is a cell centre too
        i, j = grid.cell_of(points[:, 0], points[:, 1])
        points[:, 0] = grid.origin[0] + (i + 0.5) * grid.h
        points[:, 1] = grid.origin[1] + (j + 0.5) * grid.h
    return points


def check_divergence(modes, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, h_fd=DIV_STEP, tol=DIV_TOL, grid=None):
    """ div E = div H = 0 relative to max|F| at interior points

    :param grid: GridMask of a grid cross section; samples are moved to its
        cell centres and h_fd should be its spacing
    """
    rng = np.random.default_rng(seed)
    labels, locations, residuals = list(), list(), list()
    for mode in modes:
        points = _interior_points(mode, samples, rng, h_fd, grid)
        for which in ('E', 'H'):
            values = mode.field(which, points)
            if not np.any(values):
                continue
            div = fd_operator(_field(mode, which), DIV, points, h_fd)
            residual = np.abs(div) / _scale(values)
            labels.extend(['%s %s' % (mode.label, which)] * points.shape[0])
            locations.extend(points)
            residuals.extend(residual)
    return _report('divergence', residuals, tol, labels, locations)


def check_eigen_residual(modes, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, h_fd=RESIDUAL_STEP, tol=RESIDUAL_TOL,
                         grid=None):
    """ |curl curl E - Lambda E| relative to max(1, Lambda) max|E| """
    rng = np.random.default_rng(seed)
    labels, locations, residuals = list(), list(), list()
    for mode in modes:
        points = _interior_points(mode, samples, rng, h_fd, grid)
        for which in ('E', 'H'):
            values = mode.field(which, points)
            if not np.any(values):
                continue
            curlcurl = fd_operator(_field(mode, which), CURLCURL, points, h_fd)
            residual = np.linalg.norm(curlcurl - mode.Lambda * values, axis=1) / (max(1.0, mode.Lambda) * _scale(values))
            labels.extend(['%s %s' % (mode.label, which)] * points.shape[0])
            locations.extend(points)
            residuals.extend(residual)
    return _report('eigen residual', residuals, tol, labels, locations)


def check_maxwell_coupling(modes, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, h_fd=COUPLING_STEP, tol=COUPLING_TOL,
                           grid=None):
    """ curl E = ik H and curl H = -ik E """
    rng = np.random.default_rng(seed)
    labels, locations, residuals = list(), list(), list()
    for mode in modes:
        points = _interior_points(mode, samples, rng, h_fd, grid)
        E, H = mode.fields(points)
        scale = max(1.0, mode.k) * max(_scale(E), _scale(H))
        curl_e = fd_operator(_field(mode, 'E'), CURL, points, h_fd)
        curl_h = fd_operator(_field(mode, 'H'), CURL, points, h_fd)
        residual = np.maximum(np.linalg.norm(curl_e - 1j * mode.k * H, axis=1),
                              np.linalg.norm(curl_h + 1j * mode.k * E, axis=1)) / scale
        labels.extend([mode.label] * points.shape[0])
        locations.extend(points)
        residuals.extend(residual)
    return _report('maxwell coupling', residuals, tol, labels, locations)


def check_boundary(modes, walls=None, samples=64, seed=DEFAULT_SEED, tol=BOUNDARY_TOL):
    """ Wall conditions at boundary samples

    Conducting walls need E x n = 0 and H . n = 0, insulating walls
    E . n = 0 and H x n = 0.  Lateral walls and the sphere are conducting.
    """
    walls = walls or assembly.WallConfig()
    rng = np.random.default_rng(seed)
    labels, locations, residuals = list(), list(), list()
    for mode in modes:
        boundary = mode.domain.sample_boundary(samples)
        points, normals = boundary['points'], boundary['normals']
        E, H = mode.fields(points)
        inner = mode.domain.sample_interior(samples, rng)
        E_in, H_in = mode.fields(inner)
        scale = max(_scale(E_in), _scale(H_in), _scale(E), _scale(H))

        kind = np.array([assembly.CONDUCTING] * points.shape[0], dtype=object)
        ends = boundary['wall'] != LATERAL
        if hasattr(mode.domain, 'length') and np.any(ends):
            kind[ends] = [walls.end_kind(x3, mode.domain.length) for x3 in points[ends, 2]]
        conducting = kind == assembly.CONDUCTING

        tangential_e = np.linalg.norm(np.cross(E, normals), axis=1)
        normal_h = np.abs(np.einsum('ij,ij->i', H, normals))
        normal_e = np.abs(np.einsum('ij,ij->i', E, normals))
        tangential_h = np.linalg.norm(np.cross(H, normals), axis=1)
        residual = np.where(conducting, np.maximum(tangential_e, normal_h),
                            np.maximum(normal_e, tangential_h)) / scale
        labels.extend([mode.label] * points.shape[0])
        locations.extend(points)
        residuals.extend(residual)
    return _report('boundary', residuals, tol, labels, locations)


def check_orthogonality(modes, order=ORTHOGONALITY_ORDER, tol=ORTHOGONALITY_TOL):
    """ Normalized off-diagonal Gram entries of the E fields (H where E vanishes) """
    if not modes:
        return CheckReport('orthogonality', 0.0, tol, 0)
    domain = modes[0].domain
    fields = list()
    for mode in modes:
        which = 'H' if mode.polarization == assembly.MAGNETOSTATIC else 'E'
        fields.append(_field(mode, which))
    gram = gram_matrix(fields, domain, order)
    norms = np.sqrt(np.abs(np.diag(gram)))
    if np.any(norms == 0):
        raise DomainError('a field of the orthogonality check vanishes identically')
    normalized = np.abs(gram) / np.outer(norms, norms)
    np.fill_diagonal(normalized, 0.0)
    worst = np.unravel_index(np.argmax(normalized), normalized.shape)
    details = [dict(mode='%s / %s' % (modes[worst[0]].label, modes[worst[1]].label),
                    location=[], value=float(normalized[worst]))]
    return CheckReport('orthogonality', normalized.max(), tol, gram.size, details)


def check_multiplicities(table, tol=None):
    """ Spread of eigenvalues inside each merged entry

    A table merged too coarsely joins distinct eigenvalues and fails.
    """
    tol = STRICT_MERGE_TOL if tol is None else tol
    worst, details = 0.0, list()
    for entry in table:
        spread = (entry.contributors[-1].Lambda - entry.Lambda) / max(1.0, entry.Lambda)
        if spread > worst:
            worst = spread
            details = [dict(mode=entry.indices, location=[], value=spread)]
    return CheckReport('multiplicities', worst, tol, len(table), details)


def check_counts(table, a, b, length, lam_max):
    """ Cuboid multiplicities against the scalar enumeration """
    expected = assembly.cuboid_scalar_table(a, b, length, lam_max)
    found = [(entry.Lambda, entry.multiplicity) for entry in table if entry.Lambda > 0.0]
    mismatches = list()
    for n in range(max(len(expected), len(found))):
        got = found[n] if n < len(found) else (float('nan'), 0)
        want = expected[n] if n < len(expected) else (float('nan'), 0)
        if got[1] != want[1] or not abs(got[0] - want[0]) <= STRICT_MERGE_TOL * max(1.0, want[0]):
            mismatches.append(dict(mode='entry %d' % (n + 1), location=[want[0], got[0]],
                                   value=float(got[1] - want[1])))
    return CheckReport('counts', len(mismatches), 0, len(expected), mismatches[:WORST])


def check_backend_counts(analytic, grid, lam_max, band=0.05):
    """ Transverse eigenvalue counts of two backends for the same shape

    Eigenvalues of the analytic backend within band lam_max of the ceiling
    may fall on either side on the grid and set the tolerance.
    """
    residual, tolerance, details = 0, 0, list()
    for bc in (transverse.DIRICHLET, transverse.NEUMANN):
        exact = [pair.eigenvalue for pair in transverse.eigenpairs_below(analytic, bc, lam_max * (1.0 + band))]
        approximate = transverse.eigenpairs_below(grid, bc, lam_max)
        below = sum(1 for value in exact if value <= lam_max)
        difference = abs(len(approximate) - below)
        residual += difference
        tolerance += sum(1 for value in exact if abs(value - lam_max) <= band * lam_max)
        details.append(dict(mode=bc, location=[], value=float(len(approximate) - below)))
    return CheckReport('backend counts', residual, tolerance, 2, details)


def check_tem_invariance(R, length, walls=None, lam_max=30.0, ratios=(0.1, 0.5)):
    """ TEM eigenvalues of annuli with different inner radii coincide """
    walls = walls or assembly.WallConfig()
    spectra = list()
    for ratio in ratios:
        cs = transverse.CrossSection.annulus(ratio * R, R)
        modes = assembly.build_modes(cs, length, walls, lam_max)
        spectra.append([mode.Lambda for mode in modes if mode.polarization == assembly.TEM])
    residual, details = 0.0, list()
    for ratio, values in zip(ratios[1:], spectra[1:]):
        if len(values) != len(spectra[0]):
            return CheckReport('TEM invariance', float('inf'), 0.0, len(values),
                               [dict(mode='r0 = %g R' % ratio, location=[], value=float(len(values)))])
        if values:
            worst = float(np.max(np.abs(np.array(values) - np.array(spectra[0]))))
            if worst > residual:
                residual = worst
                details = [dict(mode='r0 = %g R' % ratio, location=[], value=worst)]
    return CheckReport('TEM invariance', residual, 1e-14 * max(1.0, lam_max), len(spectra[0]), details)


def _report(name, residuals, tol, labels, locations):
    if not residuals:
        return CheckReport(name, 0.0, tol, 0)
    residuals = np.asarray(residuals, dtype=float)
    return CheckReport(name, float(residuals.max()), tol, residuals.size,
                       _worst(labels, np.asarray(locations), residuals))


def run_checks(checks, threads=None):
    """ Run (callable, args, kwargs) triples concurrently

    :returns: list of CheckReport in submission order
    """
    workers = threads or thread_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, *args, **kwargs) for func, args, kwargs in checks]
        reports = [future.result() for future in futures]
    for report in reports:
        display.vvv(u'%r' % report)
    return reports


def lowest_table(cs, length, walls, count, merge_tol=None):
    """ Spectrum table holding at least count modes """
    lam_max = transverse.backend(cs).initial_bound() / 4.0
    while True:
        table = assembly.spectrum_table(cs, length, walls, lam_max, merge_tol)
        if table.total >= count:
            return table
        lam_max *= 2.0


def product_suite(cs, length, walls, count=20, seed=DEFAULT_SEED, merge_tol=None, samples=DEFAULT_SAMPLES,
                  reference=None):
    """ Every check that applies to the lowest count modes of cs x (0, length)

    :param reference: analytic CrossSection of the same shape, compared with
        a grid cross section on transverse counts
    """
    table = lowest_table(cs, length, walls, count, merge_tol)
    modes = table.modes[:count]
    display.vvv(u'verifying %d modes of %r x (0, %.6g)' % (len(modes), cs, length))
    expected_tol = transverse.backend(cs).default_merge_tol

    dynamic = [mode for mode in modes if mode.Lambda > 0.0]
    if cs.is_analytic:
        field_args = dict(samples=samples, seed=seed)
        wall_tol, orthogonality_tol = BOUNDARY_TOL, ORTHOGONALITY_TOL
    else:
        h = cs.mask.h
        top = max([1.0] + [mode.Lambda for mode in modes])
        field_args = dict(samples=samples, seed=seed, h_fd=h, tol=GRID_FIELD_RTOL * h * h * top, grid=cs.mask)
        wall_tol = GRID_WALL_RTOL * h * np.sqrt(top)
        orthogonality_tol = GRID_WALL_RTOL * h

    checks = [
        (check_divergence, (modes,), field_args),
        (check_eigen_residual, (modes,), field_args),
        (check_maxwell_coupling, (dynamic,), field_args),
        (check_boundary, (modes,), dict(walls=walls, seed=seed, tol=wall_tol)),
        (check_orthogonality, (modes,), dict(tol=orthogonality_tol)),
    ]
    checks.append((check_multiplicities, (table,), dict(tol=max(expected_tol, STRICT_MERGE_TOL))))
    if cs.shape == transverse.RECTANGLE and walls.ends == assembly.CONDUCTING:
        lam_max = max(mode.Lambda for mode in table.modes)
        checks.append((check_counts, (table, cs.l1, cs.l2, length, lam_max), dict()))
    if cs.shape == transverse.ANNULUS:
        checks.append((check_tem_invariance, (cs.R, length), dict(walls=walls)))
    if reference is not None:
        lam_max = max(mode.Lambda for mode in modes)
        checks.append((check_backend_counts, (reference, cs, lam_max), dict()))
    return run_checks(checks)


def ball_suite(R, count=20, seed=DEFAULT_SEED, basis=None, samples=DEFAULT_SAMPLES):
    """ Field checks on the lowest count modes of the ball """
    basis = basis or specfun.COMPLEX_BASIS
    k_max = 3.0 / R
    while True:
        modes = ball.ball_spectrum(R, k_max, basis)
        if len(modes) >= count:
            break
        k_max *= 1.5
    modes = modes[:count]
    display.vvv(u'verifying %d ball modes, R=%.6g' % (len(modes), R))
    table = assembly.merge_modes(modes, STRICT_MERGE_TOL)
    return run_checks([
        (check_divergence, (modes,), dict(samples=samples, seed=seed)),
        (check_eigen_residual, (modes,), dict(samples=samples, seed=seed)),
        (check_maxwell_coupling, (modes,), dict(samples=samples, seed=seed)),
        (check_boundary, (modes,), dict(seed=seed)),
        (check_orthogonality, (modes,), dict()),
        (check_multiplicities, (table,), dict()),
    ])


def all_passed(reports):
    return all(report.passed for report in reports)

