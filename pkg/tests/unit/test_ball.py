# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np
import pytest

from cavity_modes import ball, specfun
from cavity_modes.assembly import DIRICHLET_FAMILY, NEUMANN_FAMILY
from cavity_modes.domains import BallDomain
from cavity_modes.errors import DomainError, OutsideDomainError


def _sphere(R, count=40):
    sample = BallDomain(R).sample_boundary(count)
    return sample['points'], sample['normals']


def test_lowest_ball_modes():
    modes = ball.ball_spectrum(1.0, 3.0)
    assert len(modes) == 3
    assert {mode.family for mode in modes} == {NEUMANN_FAMILY}
    assert [mode.m for mode in modes] == [-1, 0, 1]
    assert modes[0].k == pytest.approx(2.743707, abs=1e-6)
    assert modes[0].label == 'NEUMANN:1.-1.1'


def test_degree_multiplicities():
    modes = ball.ball_spectrum(1.0, 6.0)
    counts = dict()
    for mode in modes:
        key = (mode.family, mode.n, mode.p)
        counts[key] = counts.get(key, 0) + 1
    assert all(count == 2 * n + 1 for (_, n, _), count in counts.items())
    # psi_1 vanishes at 4.4934, the first Dirichlet level
    assert counts[(DIRICHLET_FAMILY, 1, 1)] == 3
    k = [mode.k for mode in modes]
    assert k == sorted(k)


def test_radius_scales_wavenumbers():
    small = ball.ball_spectrum(0.5, 6.0)
    assert small[0].k == pytest.approx(2.0 * 2.743707, abs=2e-6)


def test_argument_checks():
    with pytest.raises(DomainError):
        ball.ball_spectrum(1.0, 0.0)
    with pytest.raises(DomainError):
        ball.ball_spectrum(-1.0, 3.0)
    with pytest.raises(DomainError):
        ball.ball_spectrum(1.0, 3.0, basis='spherical')
    with pytest.raises(DomainError):
        ball.BallMode(NEUMANN_FAMILY, 1, 2, 1, 2.7, BallDomain(1.0))
    with pytest.raises(DomainError):
        ball.BallMode('TE', 1, 0, 1, 2.7, BallDomain(1.0))


def test_laplace_wavenumbers():
    assert np.allclose(ball.laplace_wavenumbers(2.0, 4), np.arange(1, 5) * math.pi / 2.0, rtol=1e-12)


@pytest.mark.parametrize('basis', specfun.HARMONIC_BASES)
def test_boundary_conditions_on_the_sphere(basis):
    points, normals = _sphere(1.0)
    for mode in ball.ball_spectrum(1.0, 5.0, basis=basis):
        E, H = mode.fields(points)
        assert np.allclose(np.cross(E, normals), 0.0, atol=1e-10)
        assert np.allclose(np.einsum('ij,ij->i', H, normals), 0.0, atol=1e-10)


def test_real_basis_gives_real_electric_fields():
    points = BallDomain(1.0).sample_interior(10, np.random.RandomState(5))
    for mode in ball.ball_spectrum(1.0, 5.0, basis=specfun.REAL_BASIS):
        assert np.allclose(mode.field('E', points).imag, 0.0)


@pytest.mark.parametrize('basis', specfun.HARMONIC_BASES)
def test_centre_values_are_the_limits(basis):
    for mode in ball.ball_spectrum(1.0, 4.0, basis=basis):
        centre = mode.vector_functions(np.zeros(3))[1][0]
        if mode.n > 1:
            assert np.allclose(centre, 0.0)
            continue
        near = mode.vector_functions(np.array([1e-4, -2e-4, 1.5e-4]))[1][0]
        assert np.allclose(centre, near, atol=1e-6)
        assert np.allclose(mode.vector_functions(np.zeros(3))[0], 0.0)


def test_ball_field_checks():
    mode = ball.ball_spectrum(1.0, 3.0)[0]
    with pytest.raises(OutsideDomainError):
        ball.ball_field(mode, 'E', [0.0, 0.0, 1.5])
    with pytest.raises(DomainError):
        ball.ball_field(mode, 'D', [0.0, 0.0, 0.5])
    assert ball.ball_field(mode, 'H', [0.0, 0.0, 1.0]).shape == (1, 3)


def test_electric_and_magnetic_norms_agree():
    for mode in ball.ball_spectrum(1.0, 4.0)[:6]:
        assert mode.norm_E > 0.0
        assert mode.norm_H == pytest.approx(mode.norm_E, rel=1e-8)
