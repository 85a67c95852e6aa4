# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np
import pytest

from cavity_modes.errors import ConfigError
from cavity_modes.gridmask import GridMask

HOLED = """6 5 0.5
######
#....#
#.11.#
#....#
######
"""

TWO_HOLES = """7 5 1
.......
.2...1.
.......
.......
.......
"""


def test_from_text_orientation():
    mask = GridMask.from_text("3 2 1\n..#\n...\n")
    assert (mask.nx, mask.ny, mask.h) == (3, 2, 1.0)
    # the first row is the top row, j = ny - 1
    assert not mask.interior[2, 1]
    assert mask.interior[2, 0]
    assert mask.size == 5
    assert mask.boundary_components == 1


def test_hole_is_a_second_boundary_component():
    mask = GridMask.from_text(HOLED, source='holed.mask')
    assert mask.boundary_components == 2
    assert mask.size == 10
    assert mask.component[2, 2] == 1
    assert mask.component[0, 0] == 0
    assert mask.area == pytest.approx(2.5)


def test_hole_labels_fix_the_numbering():
    mask = GridMask.from_text(TWO_HOLES)
    assert mask.boundary_components == 3
    # hole labelled 1 sits at column 5, hole labelled 2 at column 1
    assert mask.component[5, 3] == 1
    assert mask.component[1, 3] == 2


def test_text_round_trip():
    mask = GridMask.from_text(HOLED)
    again = GridMask.from_text(mask.to_text())
    assert np.array_equal(again.interior, mask.interior)
    assert np.array_equal(again.component, mask.component)


@pytest.mark.parametrize('text, message', [
    ('', 'empty mask'),
    ('3 2\n...\n...\n', 'expected "nx ny h"'),
    ('3 2 1\n...\n', 'expected 2 rows'),
    ('3 2 1\n...\n..\n', 'line 3: expected 3 cells'),
    ('3 2 1\n...\n.x.\n', 'line 3 column 2'),
    ('3 1 1\n.#.\n', 'not 4-connected'),
    ('3 1 1\n###\n', 'no interior'),
    ('3 2 1\n.1.\n...\n', 'touch the outer boundary'),
])
def test_malformed_masks(text, message):
    with pytest.raises(ConfigError) as exc:
        GridMask.from_text(text)
    assert message in str(exc.value)


def test_from_file(tmp_path):
    path = tmp_path / 'square.mask'
    path.write_text(u'2 2 0.25\n..\n..\n')
    mask = GridMask.from_file(str(path))
    assert mask.source == str(path)
    assert mask.bounds() == ((0.0, 0.0), (0.5, 0.5))
    with pytest.raises(ConfigError):
        GridMask.from_file(str(tmp_path / 'missing.mask'))


def test_rectangle_needs_a_multiple_of_h():
    mask = GridMask.rectangle(math.pi, math.pi / 2, math.pi / 8)
    assert (mask.nx, mask.ny) == (8, 4)
    assert mask.interior.all()
    with pytest.raises(ConfigError):
        GridMask.rectangle(1.0, 1.0, 0.3)


def test_staircase_disc_and_annulus():
    disc = GridMask.disc(1.0, 1.0 / 32)
    assert abs(disc.area - math.pi) < 0.1
    assert disc.boundary_components == 1
    annulus = GridMask.annulus(0.3, 1.0, 1.0 / 32)
    assert annulus.boundary_components == 2
    assert abs(annulus.area - math.pi * (1.0 - 0.09)) < 0.1
    hole = GridMask.square_with_hole(1.0, 0.5, 0.125)
    assert hole.boundary_components == 2
    assert hole.size == 64 - 16


def test_contains_and_cell_of():
    mask = GridMask.from_text(HOLED)
    centers = mask.cell_centers()
    assert mask.contains(centers[0][1, 1], centers[1][1, 1])
    assert not mask.contains(centers[0][2, 2], centers[1][2, 2])
    # the outer edge of an interior cell belongs to the closure
    assert mask.contains(0.5, 1.0)
    assert not mask.contains(-0.1, 1.0)
    i, j = mask.cell_of(np.array([0.6, 2.9]), np.array([0.6, 2.4]))
    assert list(i) == [1, 5]
    assert list(j) == [1, 4]


def test_boundary_faces_record_components():
    mask = GridMask.from_text(HOLED)
    faces = mask.boundary_faces()
    assert set(faces['component'].tolist()) == {0, 1}
    # the 2 x 1 hole has a perimeter of 6 faces
    assert int(np.sum(faces['component'] == 1)) == 6
    assert int(np.sum(faces['component'] == 0)) == 4 * 2 + 3 * 2
