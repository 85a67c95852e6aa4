# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np
import pytest

from cavity_modes import epsvar, gridops, transverse
from cavity_modes.assembly import HYBRID, TM
from cavity_modes.errors import ConfigError, DomainError
from cavity_modes.gridmask import GridMask

H = math.pi / 16


@pytest.fixture
def mask():
    return GridMask.rectangle(math.pi, math.pi, H)


@pytest.fixture
def vacuum(mask):
    return epsvar.PermittivityMap.constant(mask, 1.0)


def _physical(pairs):
    return np.array([pair.Lambda for pair in pairs if pair.physical])


def test_staggered_complex_is_exact():
    grid = epsvar.StaggeredGrid(GridMask.square_with_hole(1.0, 0.5, 0.125))
    assert grid.gradient.shape == (grid.n_faces, grid.n_cells)
    assert grid.curl.shape == (grid.n_vertices, grid.n_faces)
    assert abs(grid.curl @ grid.gradient).max() <= 1e-9
    assert abs(grid.divergence + grid.gradient.T).max() == 0.0


def test_neumann_laplacian_is_divergence_of_gradient(mask):
    grid = epsvar.StaggeredGrid(mask)
    product = grid.gradient.T @ grid.gradient
    assert abs(product - gridops.laplacian(mask, gridops.NEUMANN)).max() <= 1e-9


@pytest.mark.parametrize('m', [0, 2])
def test_constant_coefficient_form(mask, m):
    grid = epsvar.StaggeredGrid(mask)
    eps = epsvar.PermittivityMap.constant(mask, 2.0)
    A = epsvar.assemble(grid, eps, m, 1.0)[0]
    B = epsvar.constant_coefficient_form(grid, 2.0, m)
    assert A.shape == B.shape
    assert abs(A - B).max() <= 1e-12 * abs(B).max()


def test_vacuum_spectrum_m0(cube, vacuum):
    values = _physical(epsvar.reduced_spectrum(cube, vacuum, 0, count=6))
    assert np.allclose(values, [2.0, 5.0, 5.0, 8.0, 10.0, 10.0], atol=50 * H ** 2)
    k = np.array([[1, 1], [1, 2], [2, 1], [2, 2], [1, 3], [3, 1]])
    exact = (4.0 / H ** 2) * np.sum(np.sin(k * H / 2) ** 2, axis=1)
    assert np.allclose(values, np.sort(exact), rtol=1e-9)


def test_vacuum_spectrum_m1(cube, vacuum):
    values = _physical(epsvar.reduced_spectrum(cube, vacuum, 1, count=5))
    assert np.allclose(values, [2.0, 2.0, 3.0, 3.0, 5.0], atol=50 * H ** 2)


def test_quarter_spectrum_for_eps_four(cube, mask, vacuum):
    dense = epsvar.PermittivityMap.constant(mask, 4.0)
    one = _physical(epsvar.reduced_spectrum(cube, vacuum, 0, count=5))
    four = _physical(epsvar.reduced_spectrum(cube, dense, 0, count=5))
    assert np.allclose(four, 0.25 * one, rtol=1e-9)

    tm = [pair.Lambda for pair in epsvar.tm_family_m0(cube, dense, 5)]
    assert np.allclose(tm, four, rtol=1e-9)


def test_dielectric_slab_lies_between_the_bounds(cube, mask, vacuum):
    slab = epsvar.PermittivityMap.from_callable(mask, lambda x, y: np.where(x < math.pi / 2, 4.0, 1.0))
    assert not slab.is_constant
    one = _physical(epsvar.reduced_spectrum(cube, vacuum, 0, count=4))
    mixed = _physical(epsvar.reduced_spectrum(cube, slab, 0, count=4))
    four = 0.25 * one
    assert np.all(mixed <= one * (1 + 1e-9))
    assert np.all(mixed >= four * (1 - 1e-9))


def test_regularization_only_moves_spurious_pairs(cube, mask, vacuum):
    low = epsvar.reduced_spectrum(cube, vacuum, 1, s=0.5, count=4, include_spurious=True)
    high = epsvar.reduced_spectrum(cube, vacuum, 1, s=2.0, count=4)
    assert np.allclose(_physical(low), _physical(high), rtol=1e-9)

    neumann = gridops.smallest_eigenpairs(gridops.laplacian(mask, gridops.NEUMANN), 20)[0]
    spurious = [pair for pair in low if not pair.physical]
    assert spurious
    for pair in spurious:
        assert pair.div_residual > epsvar.PHYSICAL_RTOL
        assert pair.s_shift == pytest.approx(pair.Lambda, rel=1e-8)
        assert np.min(np.abs(pair.Lambda / 0.5 - 1.0 - neumann)) <= 1e-8 * max(1.0, pair.Lambda)
    for pair in low:
        if pair.physical:
            assert pair.div_residual <= epsvar.PHYSICAL_RTOL * max(1.0, math.sqrt(pair.Lambda))
            assert pair.s_shift <= epsvar.STATIONARY_RTOL * max(1.0, pair.Lambda)


def test_s_sensitivity_alone_flags_spurious_pairs(cube, vacuum):
    pairs = epsvar.reduced_spectrum(cube, vacuum, 1, s=0.5, count=4, tau=np.inf, include_spurious=True)
    spurious = [pair for pair in pairs if not pair.physical]
    assert spurious
    assert all(pair.s_shift == pytest.approx(pair.Lambda, rel=1e-8) for pair in spurious)
    assert len(pairs) - len(spurious) == 4


def test_reduced_spectrum_argument_checks(cube, vacuum, unit_disc):
    with pytest.raises(DomainError):
        epsvar.reduced_spectrum(cube, vacuum, -1)
    with pytest.raises(DomainError):
        epsvar.reduced_spectrum(cube, vacuum, 1.5)
    with pytest.raises(DomainError):
        epsvar.reduced_spectrum(cube, vacuum, 0, s=0.0)
    with pytest.raises(DomainError):
        epsvar.reduced_spectrum(unit_disc, vacuum, 0)
    with pytest.raises(DomainError):
        epsvar.reduced_spectrum(transverse.CrossSection.rectangle(1.0, 1.0), vacuum, 0)


def test_permittivity_map_checks(mask):
    with pytest.raises(DomainError):
        epsvar.PermittivityMap(mask, np.ones((3, 3)))
    with pytest.raises(DomainError):
        epsvar.PermittivityMap.constant(mask, 0.5)


def test_permittivity_from_text():
    small = GridMask.from_text("3 2 1\n...\n...\n")
    eps = epsvar.PermittivityMap.from_text(small, "1 2 3\n4 5 6\n")
    # the first row is the top row
    assert eps.values[0, 1] == 1.0
    assert eps.values[2, 0] == 6.0
    assert eps.at(np.array([0.5]), np.array([1.5]))[0] == 1.0

    for text, message in (("1 2 3\n", 'expected 2 rows'),
                          ("1 2 3\n4 5\n", 'line 2: expected 3 values'),
                          ("1 2 3\nx 5 6\n", 'line 2 column 1'),
                          ("1 2 3\n4 5 0.5\n", '>= 1')):
        with pytest.raises(ConfigError) as exc:
            epsvar.PermittivityMap.from_text(small, text)
        assert message in str(exc.value)


def test_permittivity_from_file(tmp_path):
    small = GridMask.from_text("2 1 1\n..\n")
    path = tmp_path / 'eps.txt'
    path.write_text(u'1.5 2.5\n')
    assert list(epsvar.PermittivityMap.from_file(small, str(path)).cell_values) == [1.5, 2.5]
    with pytest.raises(ConfigError):
        epsvar.PermittivityMap.from_file(small, str(tmp_path / 'missing.txt'))


def test_lift_to_3d(cube, vacuum):
    pairs = epsvar.reduced_spectrum(cube, vacuum, 1, s=0.5, count=1, include_spurious=True)
    spurious = [pair for pair in pairs if not pair.physical]
    with pytest.raises(DomainError):
        epsvar.lift_to_3d(spurious[0])

    mode = epsvar.lift_to_3d(pairs[-1])
    assert mode.family == HYBRID
    assert mode.label == 'HYBRID:1:1'
    electric, magnetic = mode.fields(np.array([[0.4, 1.3, 0.7], [2.0, 2.5, 2.9]]))
    assert electric.shape == magnetic.shape == (2, 3)
    assert np.allclose(magnetic.imag, 0.0)


def test_epsvar_modes(cube, vacuum):
    modes = epsvar.epsvar_modes(cube, vacuum, 3.5)
    assert len(modes) == 5
    assert modes[0].family == TM
    assert modes[0].label == 'TM:1:0'
    assert [mode.family for mode in modes[1:]] == [HYBRID] * 4
    values = [mode.Lambda for mode in modes]
    assert values == sorted(values)
    with pytest.raises(DomainError):
        epsvar.epsvar_modes(cube, vacuum, 0.0)


def test_lowest_modes_grow_the_ceiling(cube, vacuum):
    modes = epsvar.lowest_modes(cube, vacuum, 6)
    assert len(modes) >= 6
    assert modes[0].Lambda == pytest.approx(2.0, rel=1e-2)
    assert len(epsvar.epsvar_modes(cube, vacuum, modes[-1].Lambda / 2.0)) < 6


def test_lifted_modes_report_their_norms(cube, vacuum):
    mode = epsvar.epsvar_modes(cube, vacuum, 2.5)[0]
    assert mode.norm_H > 0.0
    # vacuum: electric and magnetic energies agree up to the discretization
    assert mode.norm_E == pytest.approx(mode.norm_H, rel=0.2)
