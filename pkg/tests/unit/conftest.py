# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.path.pardir, os.path.pardir, 'lib'))

from cavity_modes import transverse  # noqa: E402
from cavity_modes.assembly import WallConfig  # noqa: E402


@pytest.fixture
def cube():
    return transverse.CrossSection.rectangle(math.pi, math.pi)


@pytest.fixture
def unit_disc():
    return transverse.CrossSection.disc(1.0)


@pytest.fixture
def coax():
    return transverse.CrossSection.annulus(0.3, 1.0)


@pytest.fixture
def conducting():
    return WallConfig.from_flag('cond')


@pytest.fixture(autouse=True)
def thread_cap(monkeypatch):
    monkeypatch.setenv('CAVITY_MODES_THREADS', '2')
