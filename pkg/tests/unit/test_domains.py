# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np
import pytest

from cavity_modes import domains, transverse
from cavity_modes.errors import DomainError
from cavity_modes.gridmask import GridMask


def test_as_points_shapes():
    assert domains.as_points([1.0, 2.0, 3.0]).shape == (1, 3)
    with pytest.raises(DomainError):
        domains.as_points(np.zeros((4, 2)))


def test_product_bounds_and_membership(coax):
    domain = domains.ProductDomain(coax, 2.0)
    assert domain.bounds() == ((-1.0, -1.0, 0.0), (1.0, 1.0, 2.0))
    points = np.array([[0.5, 0.0, 1.0], [0.1, 0.0, 1.0], [0.5, 0.0, 2.5], [1.0, 0.0, 0.0]])
    assert list(domain.contains(points)) == [True, False, False, True]
    assert domain.distance_to_boundary(points[:1])[0] == pytest.approx(0.2)


def test_product_domain_needs_positive_length(cube):
    with pytest.raises(DomainError):
        domains.ProductDomain(cube, 0.0)


@pytest.mark.parametrize('cs', [
    transverse.CrossSection.rectangle(1.0, 2.0),
    transverse.CrossSection.disc(1.5),
    transverse.CrossSection.annulus(0.2, 1.0),
])
def test_quadrature_integrates_volume(cs):
    domain = domains.ProductDomain(cs, 3.0)
    points, weights = domain.quadrature(10)
    assert points.shape == (weights.size, 3)
    if cs.shape == transverse.RECTANGLE:
        area = 2.0
    else:
        area = math.pi * (cs.R ** 2 - (cs.r0 or 0.0) ** 2)
    assert np.sum(weights) == pytest.approx(3.0 * area, rel=1e-12)
    assert np.sum(weights * points[:, 2]) == pytest.approx(4.5 * area, rel=1e-12)


def test_interior_samples_respect_the_margin(unit_disc):
    domain = domains.ProductDomain(unit_disc, 1.0)
    rng = np.random.RandomState(3)
    points = domain.sample_interior(50, rng, margin=0.1)
    assert points.shape == (50, 3)
    assert np.all(domain.distance_to_boundary(points) > 0.1)
    again = domain.sample_interior(50, np.random.RandomState(3), margin=0.1)
    assert np.array_equal(points, again)
    with pytest.raises(DomainError):
        domain.sample_interior(5, rng, margin=0.5)


def test_boundary_samples_lie_on_the_walls(coax):
    domain = domains.ProductDomain(coax, 2.0)
    sample = domain.sample_boundary(64)
    points, normals = sample['points'], sample['normals']
    assert np.allclose(np.linalg.norm(normals, axis=1), 1.0)
    lateral = sample['wall'] == domains.LATERAL
    r = np.hypot(points[lateral, 0], points[lateral, 1])
    on_outer = sample['component'][lateral] == 0
    assert np.allclose(r[on_outer], 1.0)
    assert np.allclose(r[~on_outer], 0.3)
    ends = sample['wall'] == domains.END
    assert set(points[ends, 2].tolist()) == {0.0, 2.0}
    assert np.all(sample['component'][ends] == -1)
    # normals point out of the cavity, towards the axis on the inner wall
    radial = (points[lateral, 0] * normals[lateral, 0] + points[lateral, 1] * normals[lateral, 1]) / r
    assert np.allclose(radial[on_outer], 1.0)
    assert np.allclose(radial[~on_outer], -1.0)


def test_grid_domain_boundary_samples():
    cs = transverse.CrossSection.grid(GridMask.square_with_hole(1.0, 0.5, 0.125))
    domain = domains.ProductDomain(cs, 1.0)
    sample = domain.sample_boundary(40)
    lateral = sample['wall'] == domains.LATERAL
    assert set(sample['component'][lateral].tolist()) <= {0, 1}
    assert np.all(domain.contains(sample['points']))


def test_ball_domain():
    domain = domains.BallDomain(2.0)
    sample = domain.sample_boundary(30)
    assert np.allclose(np.linalg.norm(sample['points'], axis=1), 2.0)
    assert np.allclose(sample['points'], 2.0 * sample['normals'])
    points, weights = domain.quadrature(12)
    assert np.sum(weights) == pytest.approx(4.0 / 3.0 * math.pi * 8.0, rel=1e-12)
    inside = domain.sample_interior(20, np.random.RandomState(0), margin=0.5)
    assert np.all(np.linalg.norm(inside, axis=1) < 1.5)
    with pytest.raises(DomainError):
        domains.BallDomain(-1.0)
