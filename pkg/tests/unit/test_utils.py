# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import pytest

from cavity_modes.errors import ConfigError
from cavity_modes.utils import THREADS_ENV, dict_merge, parse_dimension, thread_count


def test_dict_merge_keeps_base_values_for_unset_keys():
    base = dict(shape='cube', a=1.0, nested=dict(x=1, y=2))
    other = dict(a=None, lmax=5, nested=dict(y=3), kmax=None)
    assert dict_merge(base, other) == dict(shape='cube', a=1.0, lmax=5, nested=dict(x=1, y=3))
    assert base['nested'] == dict(x=1, y=2)


def test_dict_merge_needs_dicts():
    with pytest.raises(AssertionError):
        dict_merge([], {})
    with pytest.raises(AssertionError):
        dict_merge({}, 'a=1')


@pytest.mark.parametrize('token, expected', [
    ('pi', math.pi),
    ('2pi', 2 * math.pi),
    ('0.5*pi', 0.5 * math.pi),
    ('pi/32', math.pi / 32),
    (' 3pi / 4 ', 3 * math.pi / 4),
    ('1.5', 1.5),
    ('1e-2', 0.01),
    (3, 3.0),
    (0.25, 0.25),
])
def test_parse_dimension(token, expected):
    assert parse_dimension(token) == expected


@pytest.mark.parametrize('token', ['', 'tau', 'pi/0', '2pi2', True, None, [1.0], float('inf')])
def test_parse_dimension_rejects(token):
    with pytest.raises(ValueError):
        parse_dimension(token)


def test_thread_count(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, '3')
    assert thread_count() == 3
    monkeypatch.delenv(THREADS_ENV)
    assert 1 <= thread_count() <= 4
    for value in ('x', '0', '-2'):
        monkeypatch.setenv(THREADS_ENV, value)
        with pytest.raises(ConfigError):
            thread_count()
