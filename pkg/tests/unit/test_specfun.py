# (c) 2026, cavity-modes contributors
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from __future__ import (absolute_import, division, print_function)
__metaclass__ = type

import math

import numpy as np
import pytest

from cavity_modes import specfun
from cavity_modes.errors import DomainError


def test_bessel_j_scalar_and_array():
    assert specfun.bessel_j(0, 0.0) == 1.0
    assert isinstance(specfun.bessel_j(1, 1.5), float)
    values = specfun.bessel_j(0, np.array([0.0, 2.404825557695773]))
    assert values.shape == (2,)
    assert abs(values[1]) < 1e-14


def test_j_prime_of_order_zero_is_minus_j1():
    x = np.linspace(0.1, 20.0, 50)
    assert np.allclose(specfun.bessel_j_prime(0, x), -specfun.bessel_j(1, x), atol=1e-14)


def test_y_prime_recurrence():
    x = np.linspace(0.5, 15.0, 30)
    n = 2
    expected = specfun.bessel_y(n - 1, x) - n / x * specfun.bessel_y(n, x)
    assert np.allclose(specfun.bessel_y_prime(n, x), expected, atol=1e-12)


def test_kind_dispatch():
    assert specfun.bessel(specfun.FIRST_KIND, 2, 3.0) == specfun.bessel_j(2, 3.0)
    assert specfun.bessel_prime(specfun.SECOND_KIND, 1, 3.0) == specfun.bessel_y_prime(1, 3.0)
    with pytest.raises(DomainError):
        specfun.bessel('K', 0, 1.0)


@pytest.mark.parametrize('n, x', [(-1, 1.0), (1.5, 1.0), (True, 1.0)])
def test_invalid_order(n, x):
    with pytest.raises(DomainError):
        specfun.bessel_j(n, x)


def test_invalid_arguments():
    with pytest.raises(DomainError):
        specfun.bessel_j(0, -1.0)
    with pytest.raises(DomainError):
        specfun.bessel_y(0, 0.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(0, float('nan'))


def test_riccati_low_orders():
    x = np.linspace(0.2, 12.0, 40)
    psi0, dpsi0 = specfun.riccati(specfun.PSI, 0, x)
    assert np.allclose(psi0, np.sin(x), atol=1e-15)
    assert np.allclose(dpsi0, np.cos(x), atol=1e-15)

    psi1, dpsi1 = specfun.riccati(specfun.PSI, 1, x)
    assert np.allclose(psi1, np.sin(x) / x - np.cos(x), atol=1e-13)
    assert np.allclose(dpsi1, np.cos(x) / x - np.sin(x) / x ** 2 + np.sin(x), atol=1e-13)

    chi0, dchi0 = specfun.riccati(specfun.CHI, 0, x)
    assert np.allclose(chi0, np.cos(x), atol=1e-15)
    assert np.allclose(dchi0, -np.sin(x), atol=1e-15)


def test_riccati_wronskian():
    x = np.linspace(0.5, 10.0, 20)
    for n in range(4):
        psi, dpsi = specfun.riccati(specfun.PSI, n, x)
        chi, dchi = specfun.riccati(specfun.CHI, n, x)
        assert np.allclose(psi * dchi - dpsi * chi, -1.0, atol=1e-10)


def test_riccati_rejects_unknown_kind():
    with pytest.raises(DomainError):
        specfun.riccati('xi', 0, 1.0)


def test_low_degree_harmonics():
    theta = np.array([0.3, 1.1, 2.5])
    phi = np.array([0.2, 1.7, 4.0])
    assert np.allclose(specfun.spherical_harmonic(0, 0, theta, phi), 1.0 / math.sqrt(4.0 * math.pi))
    assert np.allclose(specfun.spherical_harmonic(1, 0, theta, phi), math.sqrt(3.0 / (4.0 * math.pi)) * np.cos(theta))
    expected = -math.sqrt(3.0 / (8.0 * math.pi)) * np.sin(theta) * np.exp(1j * phi)
    assert np.allclose(specfun.spherical_harmonic(1, 1, theta, phi), expected)


def test_negative_order_conjugate_symmetry():
    theta, phi = 0.9, 2.1
    for m in (1, 2, 3):
        left = specfun.spherical_harmonic(3, -m, theta, phi)
        right = (-1) ** m * np.conj(specfun.spherical_harmonic(3, m, theta, phi))
        assert abs(left - right) < 1e-14


def _sphere_quadrature(order):
    t, wt = np.polynomial.legendre.leggauss(order)
    theta = np.arccos(t)
    count = 2 * order
    phi = 2.0 * np.pi * np.arange(count) / count
    tt, pp = np.meshgrid(theta, phi, indexing='ij')
    weights = np.outer(wt, np.full(count, 2.0 * np.pi / count))
    return tt.ravel(), pp.ravel(), weights.ravel()


@pytest.mark.parametrize('basis', [specfun.COMPLEX_BASIS, specfun.REAL_BASIS])
def test_harmonics_are_orthonormal(basis):
    theta, phi, weights = _sphere_quadrature(12)
    indices = [(n, m) for n in range(4) for m in range(-n, n + 1)]
    table = np.array([specfun.spherical_harmonic_terms(n, m, theta, phi, basis)[0] for n, m in indices])
    gram = np.einsum('w,iw,jw->ij', weights, np.conj(table), table)
    assert np.allclose(gram, np.eye(len(indices)), atol=1e-12)


def test_angular_derivatives_match_differences():
    theta, phi, step = 0.8, 1.3, 1e-6
    value, dtheta, dphi = specfun.spherical_harmonic_terms(3, 2, theta, phi)
    plus = specfun.spherical_harmonic_terms(3, 2, theta + step, phi)[0]
    minus = specfun.spherical_harmonic_terms(3, 2, theta - step, phi)[0]
    assert abs((plus - minus) / (2 * step) - dtheta) < 1e-8
    plus = specfun.spherical_harmonic_terms(3, 2, theta, phi + step)[0]
    minus = specfun.spherical_harmonic_terms(3, 2, theta, phi - step)[0]
    assert abs((plus - minus) / (2 * step) / math.sin(theta) - dphi) < 1e-8


def test_azimuthal_term_is_finite_at_the_poles():
    for m in (-1, 1):
        dphi = specfun.spherical_harmonic_terms(1, m, 0.0, 0.0)[2]
        assert np.isfinite(dphi)
        assert abs(dphi) > 0.1


def test_harmonic_index_checks():
    with pytest.raises(DomainError):
        specfun.spherical_harmonic(1, 2, 0.5, 0.5)
    with pytest.raises(DomainError):
        specfun.spherical_harmonic_terms(2, 1, 0.5, 0.5, basis='spinor')
