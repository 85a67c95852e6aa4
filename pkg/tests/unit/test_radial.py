# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import numpy as np
import pytest

from cavity_modes import radial, rootfind
from cavity_modes.errors import DomainError
from cavity_modes.plugins.backend import polar_quadrature


def _norm(mode, r_inner, R):
    x1, x2, weights = polar_quadrature(40, r_inner, R)
    return np.sum(weights * mode.evaluate(x1, x2)[0] ** 2)


def test_disc_dirichlet_mode_vanishes_on_the_rim():
    k = rootfind.j_zeros(2, count=1).zeros[0]
    mode = radial.RadialMode(radial.DIRICHLET, 2, k, radial.SINE, 1.0)
    phi = np.linspace(0.0, 2.0 * np.pi, 13)
    assert np.allclose(mode.evaluate(np.cos(phi), np.sin(phi))[0], 0.0, atol=1e-12)
    assert mode.eigenvalue == pytest.approx(k * k)


@pytest.mark.parametrize('bc, n, parity', [
    (radial.DIRICHLET, 0, radial.COSINE),
    (radial.DIRICHLET, 1, radial.SINE),
    (radial.NEUMANN, 1, radial.COSINE),
    (radial.NEUMANN, 3, radial.SINE),
])
def test_disc_modes_are_normalized(bc, n, parity):
    zeros = rootfind.j_zeros(n, count=2) if bc == radial.DIRICHLET else rootfind.j_prime_zeros(n, count=2)
    mode = radial.RadialMode(bc, n, zeros.zeros[1], parity, 1.0)
    assert abs(_norm(mode, 0.0, 1.0) - 1.0) < 1e-10


def test_annulus_modes_are_normalized_and_satisfy_bc():
    r0, R = 0.4, 1.0
    for bc in (radial.DIRICHLET, radial.NEUMANN):
        k = rootfind.annulus_zeros(bc, 2, r0, R, count=1).zeros[0]
        mode = radial.RadialMode(bc, 2, k, radial.COSINE, R, r0)
        assert abs(_norm(mode, r0, R) - 1.0) < 1e-10
        value, slope, _ = mode.radial(np.array([r0, R]))
        trace = value if bc == radial.DIRICHLET else slope
        scale = np.max(np.abs(mode.radial(np.linspace(r0, R, 50))[0]))
        assert np.all(np.abs(trace) < 1e-9 * max(1.0, scale * k))


def test_gradient_and_helmholtz_relation():
    k = rootfind.j_prime_zeros(1, count=1).zeros[0]
    mode = radial.RadialMode(radial.NEUMANN, 1, k, radial.COSINE, 1.0)
    x1, x2, step = 0.31, -0.22, 1e-4
    v, grad, lap = mode.evaluate(x1, x2)
    d1 = (mode.evaluate(x1 + step, x2)[0] - mode.evaluate(x1 - step, x2)[0]) / (2 * step)
    d2 = (mode.evaluate(x1, x2 + step)[0] - mode.evaluate(x1, x2 - step)[0]) / (2 * step)
    assert abs(d1 - grad[0]) < 1e-7
    assert abs(d2 - grad[1]) < 1e-7

    second = sum(mode.evaluate(x1 + a, x2 + b)[0] for a, b in ((step, 0), (-step, 0), (0, step), (0, -step)))
    assert abs((second - 4 * v) / step ** 2 - lap) < 1e-5
    assert lap == pytest.approx(-k * k * v)


def test_centre_limits():
    k = rootfind.j_zeros(1, count=1).zeros[0]
    mode = radial.RadialMode(radial.DIRICHLET, 1, k, radial.COSINE, 1.0)
    v, grad, _ = mode.evaluate(0.0, 0.0)
    near = mode.evaluate(1e-7, 0.0)[1]
    assert v == 0.0
    assert np.allclose(grad, near, atol=1e-6)


def test_invalid_parity_and_wavenumber():
    with pytest.raises(DomainError):
        radial.RadialMode(radial.DIRICHLET, 0, 2.4, radial.SINE, 1.0)
    with pytest.raises(DomainError):
        radial.RadialMode(radial.DIRICHLET, 1, 0.0, radial.COSINE, 1.0)


def test_log_potential_is_harmonic():
    potential = radial.LogPotential()
    x1, x2, step = 0.5, 0.6, 1e-4
    v = potential.evaluate(x1, x2)[0]
    second = sum(potential.evaluate(x1 + a, x2 + b)[0] for a, b in ((step, 0), (-step, 0), (0, step), (0, -step)))
    assert abs(second - 4 * v) / step ** 2 < 1e-5
    grad = potential.evaluate(x1, x2)[1]
    assert np.allclose(grad, np.array([x1, x2]) / (x1 ** 2 + x2 ** 2))
