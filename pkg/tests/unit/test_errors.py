# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import pytest

from ansible.errors import AnsibleError

from cavity_modes import errors


@pytest.mark.parametrize('cls, code', [
    (errors.DomainError, 3),
    (errors.BracketingError, 3),
    (errors.TruncationError, 3),
    (errors.SolverError, 3),
    (errors.OutsideDomainError, 3),
    (errors.BoundaryProximityError, 3),
    (errors.ConfigError, 2),
    (errors.SelectorError, 2),
])
def test_exit_codes(cls, code):
    exc = cls('boom')
    assert exc.exit_code == code
    assert isinstance(exc, errors.CavityModesError)
    assert isinstance(exc, AnsibleError)


def test_selector_error_lists_candidates():
    exc = errors.SelectorError('selector matches no mode', ['TE:0.1:1', 'TM:1.1:0'])
    assert exc.candidates == ['TE:0.1:1', 'TM:1.1:0']
    assert exc.message == 'selector matches no mode; candidates: TE:0.1:1, TM:1.1:0'
    assert errors.SelectorError('nothing').message == 'nothing'
