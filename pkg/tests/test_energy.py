"""Tests the anisotropic energies and the energy functionals"""

import math

import numpy as np
import pytest

from camckit.datatypes import GridSpec, Interval, JetMode
from camckit.energy import (
    AxiallySymmetricEnergy,
    ENERGIES,
    cleared_reciprocals,
    dirichlet_energy,
    discrete_graph_energy,
    hyperboloid_energy,
    isotropic_energy,
    sample_graph,
    surface_energy_quadrature,
    verify_derivatives,
    wulff_profile,
    wulff_reciprocals,
)
from camckit.errors import DomainError, GridTooSmall
from camckit.families import rotational_solution, rotational_surface
from camckit.surface import cylinder_surface, plane_surface, polynomial_graph


def test_dirichlet_density() -> None:
    """Tests F = 1/x - x and its evenness"""
    energy = dirichlet_energy()
    assert energy.density(0.5) == pytest.approx(1.5)
    assert energy.density(-0.5) == pytest.approx(1.5)
    assert energy.density(1.0) == pytest.approx(0.0)


def test_dirichlet_reciprocals() -> None:
    """Tests 1/mu2 = 2/x and 1/mu1 = 2/x^3 for the Dirichlet energy"""
    energy = dirichlet_energy()
    x = np.array([0.2, 0.5, 0.9])
    reciprocals = wulff_reciprocals(energy, x)
    np.testing.assert_allclose(reciprocals.inv_mu2, 2.0 / x, rtol=1e-12)
    np.testing.assert_allclose(reciprocals.inv_mu1, 2.0 / x**3, rtol=1e-12)


def test_reciprocals_even() -> None:
    """Tests that both orientations give the same reciprocals"""
    energy = dirichlet_energy()
    up, down = wulff_reciprocals(energy, 0.3), wulff_reciprocals(energy, -0.3)
    assert up.inv_mu1 == pytest.approx(down.inv_mu1)
    assert up.inv_mu2 == pytest.approx(down.inv_mu2)


def test_cleared_reciprocals_match() -> None:
    """Tests the pole-free Dirichlet form against w times the reciprocals"""
    energy = dirichlet_energy()
    x = np.linspace(0.05, 1.0, 20)
    weighted1, weighted2, weight = cleared_reciprocals(energy, x)
    reciprocals = wulff_reciprocals(energy, x)
    np.testing.assert_allclose(weighted1, weight * reciprocals.inv_mu1, rtol=1e-12)
    np.testing.assert_allclose(weighted2, weight * reciprocals.inv_mu2, rtol=1e-12)


def test_cleared_reciprocals_at_zero() -> None:
    """Tests that the cleared Dirichlet form is finite at nu3 = 0"""
    weighted1, weighted2, weight = cleared_reciprocals(dirichlet_energy(), 0.0)
    assert float(weighted1) == 1.0
    assert float(weighted2) == 0.0
    assert float(weight) == 0.0


def test_isotropic_reciprocals() -> None:
    """Tests that the area functional has a round Wulff shape"""
    reciprocals = wulff_reciprocals(isotropic_energy(), np.array([-1.0, 0.0, 0.7]))
    np.testing.assert_allclose(reciprocals.inv_mu1, 1.0)
    np.testing.assert_allclose(reciprocals.inv_mu2, 1.0)


def test_domain_errors() -> None:
    """Tests that values outside the energy domain are refused"""
    with pytest.raises(DomainError):
        dirichlet_energy().density(0.0)
    with pytest.raises(DomainError):
        wulff_reciprocals(hyperboloid_energy(), 0.5)
    with pytest.raises(DomainError):
        wulff_reciprocals(dirichlet_energy(), np.array([0.5, 0.0]))


def test_verify_derivatives() -> None:
    """Tests the derivative check on good and broken energies"""
    for constructor in ENERGIES.values():
        assert verify_derivatives(constructor())
    broken = AxiallySymmetricEnergy(
        label="broken",
        F=lambda x: 1.0 / x - x,
        dF=lambda x: -1.0 / (x * x),
        d2F=lambda x: 2.0 / x**3,
        domain=Interval(0.0, 1.0, upper_open=False),
    )
    assert not verify_derivatives(broken)


def test_wulff_profile_dirichlet_paraboloid() -> None:
    """Tests that the Dirichlet Wulff shape is the paraboloid z = -rho^2/4"""
    x = np.linspace(0.1, 1.0, 10)
    rho, z = wulff_profile(dirichlet_energy(), x)
    np.testing.assert_allclose(z, -rho * rho / 4.0, atol=1e-12)


def test_wulff_profile_isotropic_sphere() -> None:
    """Tests that the isotropic Wulff shape is the unit sphere"""
    rho, z = wulff_profile(isotropic_energy(), np.array([0.0, 0.3, 0.8]))
    np.testing.assert_allclose(rho**2 + z**2, 1.0, rtol=1e-12)


def test_quadrature_plane() -> None:
    """Tests the energy of a horizontal plane patch"""
    grid = GridSpec(0.0, 2.0, 10, 16, theta_max=3.0)
    assert surface_energy_quadrature(plane_surface(), dirichlet_energy(), grid) == 0.0
    area = surface_energy_quadrature(plane_surface(), isotropic_energy(), grid)
    assert area == pytest.approx(6.0, rel=1e-12)


def test_quadrature_cylinder_area() -> None:
    """Tests the area of a cylinder piece"""
    grid = GridSpec(0.0, 1.0, 4, 32)
    area = surface_energy_quadrature(cylinder_surface(2.0), isotropic_energy(), grid)
    assert area == pytest.approx(4.0 * math.pi, rel=1e-12)


def test_quadrature_dirichlet_graph() -> None:
    """Tests that F dA of a graph is |Du|^2 dx dy for the paraboloid"""
    surface = rotational_surface(rotational_solution(0.0, 0.0, 8.0))
    value = surface_energy_quadrature(surface, dirichlet_energy(), GridSpec(0.5, 2.0, 400, 16))
    assert value == pytest.approx(2.0 * math.pi * (16.0 - 0.0625), rel=1e-4)


def test_quadrature_outside_domain() -> None:
    """Tests that a vertical cylinder has no Dirichlet energy"""
    with pytest.raises(DomainError):
        surface_energy_quadrature(cylinder_surface(), dirichlet_energy(), GridSpec(0, 1, 4, 8))


def test_discrete_graph_energy_linear() -> None:
    """Tests |Du|^2 + lambda u for u = x on the unit square"""
    samples = sample_graph(lambda x, y: x, 8, 8)
    assert discrete_graph_energy(samples, 2.0) == pytest.approx(2.0, abs=1e-12)


def test_discrete_graph_energy_converges() -> None:
    """Tests second order convergence of the discrete Dirichlet energy"""

    def saddle(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x * x - y * y

    errors = []
    for n in (10, 20):
        value = discrete_graph_energy(sample_graph(saddle, n, n), 0.0)
        errors.append(abs(value - 8.0 / 3.0))
    assert errors[0] == pytest.approx(2.0 / 300.0, rel=1e-9)
    assert 3.0 <= errors[0] / errors[1] <= 5.0


def test_discrete_graph_energy_too_small() -> None:
    """Tests that fewer than three samples per axis are refused"""
    with pytest.raises(GridTooSmall):
        discrete_graph_energy(sample_graph(lambda x, y: x + y, 2, 5), 0.0)


def test_quadrature_matches_discrete_graph_energy() -> None:
    """Tests that the parametric and the graph forms agree on graph patches"""
    grid = GridSpec(0.0, 1.0, 200, 200, theta_max=1.0)
    cases = [
        ({"x": 1.0}, lambda x, y: x, 1.0),
        ({"x": 1.0, "y": 2.0}, lambda x, y: x + 2.0 * y, 5.0),
        ({"xx": 1.0, "yy": -1.0}, lambda x, y: x * x - y * y, 8.0 / 3.0),
    ]
    for coefficients, u, exact in cases:
        parametric = surface_energy_quadrature(
            polynomial_graph(coefficients), dirichlet_energy(), grid
        )
        graph = discrete_graph_energy(sample_graph(u, 200, 200), 0.0)
        assert parametric == pytest.approx(graph, rel=1e-3)
        assert graph == pytest.approx(exact, rel=1e-3)


def test_mask_floor_by_jet_mode() -> None:
    """Tests that finite difference jets are masked further from nu3 = 0"""
    dirichlet = dirichlet_energy()
    assert dirichlet.mask_floor() == 0.05
    assert dirichlet.mask_floor(JetMode.FINITE_DIFFERENCE) == 0.3
    assert isotropic_energy().mask_floor(JetMode.FINITE_DIFFERENCE) == 0.0
