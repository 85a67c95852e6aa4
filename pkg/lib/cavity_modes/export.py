# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
"""
Mode selection and field sampling on structured grids.

Formats (see docs/formats.md):

csv
    header x1,x2,x3,ReE1,ImE1,...,ReH3,ImH3 then one row per grid point
sgrid
    DIMS nx ny nz / ORIGIN x y z / SPACING dx dy dz, then one record of
    the twelve field values per point, x fastest, nan outside the cavity
json
    the sgrid content as one object, with the L2 norms of E and H
"""
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import csv
import io
import json

import numpy as np

from ansible.module_utils.six import iteritems
from ansible.utils.display import Display

from cavity_modes import transverse
from cavity_modes.errors import ConfigError, SelectorError


display = Display()

CSV = 'csv'
SGRID = 'sgrid'
JSON = 'json'
FORMATS = (CSV, SGRID, JSON)

FIELD_COLUMNS = tuple('%s%s%d' % (part, which, c) for which in 'EH' for c in (1, 2, 3) for part in ('Re', 'Im'))
CSV_FIELD_COLUMNS = ('x1', 'x2', 'x3') + FIELD_COLUMNS

SHAPE_KEYS = {
    transverse.RECTANGLE: ('k1', 'k2'),
    transverse.DISC: ('n', 'p', 'parity'),
    transverse.ANNULUS: ('n', 'p', 'parity'),
}

MAX_CANDIDATES = 12


def _number(value):
    return '%.17g' % value


def parse_selector(text):
    """ Split FAMILY:key=value,... into the family and a dict of keys """
    if not text or not text.strip():
        raise ConfigError('empty mode selector')
    family, _, rest = text.strip().partition(':')
    keys = dict()
    for item in rest.split(','):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition('=')
        if not sep or not key.strip() or not value.strip():
            raise ConfigError('invalid selector term %r in %r, expected key=value' % (item, text))
        keys[key.strip()] = value.strip()
    return family.strip().upper(), keys


def mode_keys(modes):
    """ Selector keys of every mode

    Product modes carry m (axial index) and either d (TEM and static modes)
    or j, the rank of the transverse eigenfunction within its family, plus
    the shape specific indices.  Ball modes carry n, m, p.
    """
    ranks = dict()
    for mode in modes:
        factor = getattr(mode, 'factor', None)
        if isinstance(factor, transverse.TransverseEigenpair):
            ranks.setdefault(mode.family, dict())[factor.index] = factor

    ordinal = dict()
    for family, factors in iteritems(ranks):
        ordered = sorted(factors.values(), key=lambda factor: factor.sort_key)
        ordinal[family] = dict((factor.index, j) for j, factor in enumerate(ordered, 1))

    result = list()
    for mode in modes:
        factor = getattr(mode, 'factor', None)
        if isinstance(factor, transverse.TransverseEigenpair):
            keys = dict(j=ordinal[mode.family][factor.index], m=mode.axial.m)
            shape = mode.domain.cs.shape
            if shape == transverse.GRID:
                keys['j'] = factor.index[0]
            for name, value in zip(SHAPE_KEYS.get(shape, ()), factor.index):
                keys[name] = value
        elif factor is not None:
            keys = dict(d=factor.d, m=mode.axial.m)
        elif hasattr(mode, 'potential'):
            keys = dict(n=mode.n, m=mode.m, p=mode.p)
        else:
            keys = dict(j=mode.pair.index, m=mode.m)
        result.append(dict((key, str(value)) for key, value in iteritems(keys)))
    return result


def select_mode(modes, selector):
    """ The single mode matching selector

    :raises SelectorError: when no mode or several modes match
    """
    family, wanted = parse_selector(selector)
    matches = list()
    for mode, keys in zip(modes, mode_keys(modes)):
        if mode.family != family:
            continue
        if all(keys.get(key) == value for key, value in iteritems(wanted)):
            matches.append(mode)
    if len(matches) == 1:
        display.vvv(u'selector %s resolved to %s' % (selector, matches[0].label))
        return matches[0]
    pool = matches or [mode for mode in modes if mode.family == family] or modes
    candidates = [mode.label for mode in pool[:MAX_CANDIDATES]]
    if matches:
        raise SelectorError('selector %r matches %d modes' % (selector, len(matches)), candidates)
    raise SelectorError('selector %r matches no mode' % selector, candidates)


def parse_grid(text):
    """ nx,ny,nz from the --grid flag """
    try:
        dims = tuple(int(part) for part in str(text).split(','))
    except ValueError:
        raise ConfigError('invalid grid %r, expected nx,ny,nz' % (text,))
    if len(dims) != 3 or min(dims) < 1:
        raise ConfigError('invalid grid %r, expected three positive integers' % (text,))
    return dims


def grid_points(bounds, dims):
    """ Points of the box bounds on a dims grid, x fastest

    :returns: tuple (origin, spacing, points (N, 3))
    """
    lo, hi = np.asarray(bounds[0], dtype=float), np.asarray(bounds[1], dtype=float)
    dims = np.asarray(dims)
    spacing = np.where(dims > 1, (hi - lo) / np.maximum(dims - 1, 1), 0.0)
    axes = [lo[c] + spacing[c] * np.arange(dims[c]) for c in range(3)]
    zz, yy, xx = np.meshgrid(axes[2], axes[1], axes[0], indexing='ij')
    return lo, spacing, np.column_stack((xx.ravel(), yy.ravel(), zz.ravel()))


def sample_fields(mode, points):
    """ (N, 12) array of Re/Im parts of E and H, nan outside the cavity """
    values = np.full((points.shape[0], len(FIELD_COLUMNS)), np.nan)
    inside = mode.domain.contains(points)
    if inside.any():
        E, H = mode.fields(points[inside])
        stacked = np.hstack((E, H))
        values[inside, 0::2] = stacked.real
        values[inside, 1::2] = stacked.imag
    display.vvv(u'sampled %s at %d of %d grid points' % (mode.label, int(inside.sum()), points.shape[0]))
    return values


def to_csv(points, values):
    handle = io.StringIO()
    writer = csv.writer(handle, lineterminator='\n')
    writer.writerow(CSV_FIELD_COLUMNS)
    for point, row in zip(points, values):
        writer.writerow([_number(x) for x in point] + [_number(x) for x in row])
    return handle.getvalue()


def to_sgrid(dims, origin, spacing, values):
    lines = ['DIMS %d %d %d' % tuple(dims),
             'ORIGIN %s' % ' '.join(_number(x) for x in origin),
             'SPACING %s' % ' '.join(_number(x) for x in spacing)]
    lines.extend(' '.join(_number(x) for x in row) for row in values)
    return '\n'.join(lines) + '\n'


def to_json(dims, origin, spacing, values, mode):
    records = [[None if np.isnan(x) else float(x) for x in row] for row in values]
    document = dict(mode=mode.label, norm_E=mode.norm_E, norm_H=mode.norm_H, dims=list(dims),
                    origin=[float(x) for x in origin], spacing=[float(x) for x in spacing],
                    columns=list(FIELD_COLUMNS), values=records)
    return json.dumps(document, sort_keys=True) + '\n'


def export_field(mode, dims, fmt=SGRID):
    """ Text of the fields of mode sampled on a dims grid over its bounding box """
    if fmt not in FORMATS:
        raise ConfigError('unknown format %r, expected one of %s' % (fmt, ', '.join(FORMATS)))
    origin, spacing, points = grid_points(mode.domain.bounds(), dims)
    values = sample_fields(mode, points)
    display.v(u'%s: L2 norms |E| = %.17g, |H| = %.17g' % (mode.label, mode.norm_E, mode.norm_H))
    if fmt == CSV:
        return to_csv(points, values)
    if fmt == JSON:
        return to_json(dims, origin, spacing, values, mode)
    return to_sgrid(dims, origin, spacing, values)


def read_sgrid(text):
    """ Parse an sgrid document back into (dims, origin, spacing, values) """
    lines = text.splitlines()
    try:
        dims = tuple(int(x) for x in lines[0].split()[1:])
        origin = np.array([float(x) for x in lines[1].split()[1:]])
        spacing = np.array([float(x) for x in lines[2].split()[1:]])
        values = np.array([[float(x) for x in line.split()] for line in lines[3:] if line.strip()])
    except (IndexError, ValueError) as exc:
        raise ConfigError('malformed sgrid document: %s' % exc)
    if values.shape != (int(np.prod(dims)), len(FIELD_COLUMNS)):
        raise ConfigError('sgrid document holds %s values for dims %s' % (values.shape, dims))
    return dims, origin, spacing, values


def spectrum_text(table, fmt=CSV):
    """ Spectrum table as CSV or JSON text """
    if fmt == JSON:
        return json.dumps(dict(merge_tol=table.merge_tol, entries=table.rows(norms=True)), sort_keys=True) + '\n'
    if fmt != CSV:
        raise ConfigError('spectra are written as %s or %s, got %r' % (CSV, JSON, fmt))
    return table.to_csv()
