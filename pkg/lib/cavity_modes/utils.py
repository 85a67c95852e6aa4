# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
#
# You should have received a copy of the GNU General Public License
# along with Ansible.  If not, see <http://www.gnu.org/licenses/>.
#
from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math
import os
import re

from ansible.module_utils.six import iteritems, string_types
from ansible.utils.display import Display

from cavity_modes.errors import ConfigError


display = Display()

THREADS_ENV = 'CAVITY_MODES_THREADS'

DIMENSION_RE = re.compile(r'^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(pi)?\s*(?:/\s*(\d+\.?\d*))?\s*$')


def dict_merge(base, other):
    """ Return a new dict object that combines base and other

    Keys present in both take the value from other unless that value is None,
    in which case the base value is kept; this lets unset command line flags
    fall through to the configuration file.  Nested dicts are merged
    recursively.

    :param base: dict object to serve as base
    :param other: dict object to combine with base

    :returns: new combined dict object
    """
    if not isinstance(base, dict):
        raise AssertionError("`base` must be of type <dict>")
    if not isinstance(other, dict):
        raise AssertionError("`other` must be of type <dict>")

    combined = dict()

    for key, value in iteritems(base):
        item = other.get(key)
        if item is None:
            combined[key] = value
        elif isinstance(value, dict) and isinstance(item, dict):
            combined[key] = dict_merge(value, item)
        else:
            combined[key] = item

    for key in set(other.keys()).difference(base.keys()):
        if other[key] is not None:
            combined[key] = other[key]

    return combined


def parse_dimension(value):
    """ Convert a length given as a number or a pi token to float

    Accepted tokens are decimals and multiples of pi written as ``pi``,
    ``2pi``, ``0.5pi`` or ``2*pi``, optionally divided as in ``pi/32``.

    :param value: int, float or text token

    :returns: the length as float
    """
    if isinstance(value, bool):
        raise ValueError('dimension must be a number or a pi token, got %s' % type(value))

    if isinstance(value, (int, float)):
        result = float(value)
    elif isinstance(value, string_types):
        match = DIMENSION_RE.match(value)
        if not match or not (match.group(1) or match.group(2)):
            raise ValueError('unable to parse dimension %r' % value)
        coefficient = float(match.group(1)) if match.group(1) else 1.0
        result = coefficient * math.pi if match.group(2) else coefficient
        if match.group(3):
            divisor = float(match.group(3))
            if divisor == 0:
                raise ValueError('division by zero in dimension %r' % value)
            result /= divisor
    else:
        raise ValueError('dimension must be a number or a pi token, got %s' % type(value))

    if not math.isfinite(result):
        raise ValueError('dimension %r is not finite' % value)
    return result


def thread_count():
    """ Number of worker threads allowed by CAVITY_MODES_THREADS """
    value = os.environ.get(THREADS_ENV)
    if value is None or value == '':
        return max(1, min(4, os.cpu_count() or 1))
    try:
        count = int(value)
    except ValueError:
        raise ConfigError('%s must be a positive integer, got %r' % (THREADS_ENV, value))
    if count < 1:
        raise ConfigError('%s must be a positive integer, got %r' % (THREADS_ENV, value))
    display.vvvv(u'thread pool capped at %d workers' % count)
    return count
