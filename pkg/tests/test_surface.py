"""Tests jets, frames and the anisotropic mean curvature"""

import math

import numpy as np
import pytest

from camckit.datatypes import JetMode
from camckit.energy import dirichlet_energy, hyperboloid_energy, isotropic_energy
from camckit.errors import DegenerateJet, DomainError, VerticalNormalDegeneracy
from camckit.surface import (
    ParametricSurface,
    SurfaceJet,
    camc_lambda,
    camc_residual_sign_convention,
    catenoid_surface,
    cylinder_surface,
    dirichlet_lambda_h2,
    frame,
    jet,
    plane_surface,
    polynomial_graph,
    reverse_theta,
    rotation_about_y,
    rotation_about_z,
    stack,
    swap_parameters,
    transform_surface,
)


def test_graph_lambda_is_twice_laplacian() -> None:
    """Tests Lambda = 2 (u_xx + u_yy) of Dirichlet graphs"""
    surface = polynomial_graph({"xx": 1.0, "yy": 1.0})
    sample = jet(surface, np.array([0.3, -0.7, 1.5]), np.array([0.4, 0.2, -1.0]))
    np.testing.assert_allclose(camc_lambda(sample, dirichlet_energy()), 8.0, rtol=1e-10)


def test_random_quadratic_graphs() -> None:
    """Tests Lambda against the Laplacian on random quadratic graphs"""
    rng = np.random.default_rng(1234)
    energy = dirichlet_energy()
    for _ in range(20):
        coefficients = dict(zip(("x", "y", "xx", "xy", "yy"), rng.uniform(-2.0, 2.0, 5)))
        surface = polynomial_graph(coefficients)
        s, theta = rng.uniform(-1.0, 1.0, 2)
        data = frame(jet(surface, s, theta), strict=False)
        nu3 = float(data.nu3)
        if 1.0 - nu3 * nu3 < 1e-3 or abs(nu3) < 0.05:
            continue
        expected = 4.0 * (coefficients["xx"] + coefficients["yy"])
        assert camc_lambda(jet(surface, s, theta), energy) == pytest.approx(
            expected, rel=1e-8, abs=1e-8
        )


def test_dirichlet_reduction_agrees() -> None:
    """Tests the closed Dirichlet reduction against the general formula"""
    surface = polynomial_graph({"xx": 0.5, "xy": 0.3, "yy": -1.2, "x": 0.1})
    sample = jet(surface, np.array([0.4, 0.9]), np.array([-0.6, 0.25]))
    np.testing.assert_allclose(
        dirichlet_lambda_h2(frame(sample)), camc_lambda(sample, dirichlet_energy()), rtol=1e-10
    )


def test_isotropic_lambda_cylinder() -> None:
    """Tests Lambda = 2H = 1/R on a cylinder with inward normal"""
    sample = jet(cylinder_surface(2.0), 0.3, 1.1)
    assert camc_lambda(sample, isotropic_energy()) == pytest.approx(0.5)
    assert float(frame(sample).H) == pytest.approx(0.25)


def test_isotropic_lambda_random_jets() -> None:
    """Tests Lambda = 2H from the fundamental forms on random jets"""
    rng = np.random.default_rng(2024)
    X, Xs, Xt, Xss, Xst, Xtt = rng.normal(size=(6, 2000, 3))  # pylint: disable=invalid-name
    cross = np.cross(Xs, Xt)
    area = np.linalg.norm(cross, axis=-1)
    nu3 = cross[:, 2] / area
    keep = np.nonzero((area > 0.5) & (1.0 - nu3 * nu3 > 0.05))[0][:500]
    assert len(keep) == 500
    sample = SurfaceJet(X[keep], Xs[keep], Xt[keep], Xss[keep], Xst[keep], Xtt[keep])

    normal = cross[keep] / area[keep, None]
    first = [np.sum(u * v, axis=-1) for u, v in ((Xs, Xs), (Xs, Xt), (Xt, Xt))]
    e, f, g = (term[keep] for term in first)
    hss, hst, htt = (np.sum(d[keep] * normal, axis=-1) for d in (Xss, Xst, Xtt))
    twice_mean = (e * htt - 2.0 * f * hst + g * hss) / (e * g - f * f)

    values = camc_lambda(sample, isotropic_energy())
    np.testing.assert_allclose(values, twice_mean, rtol=1e-10, atol=1e-10)


def test_catenoid_minimal() -> None:
    """Tests that the catenoid has vanishing isotropic Lambda"""
    s, theta = np.meshgrid(np.linspace(-1.0, 1.0, 7), np.linspace(0.1, 6.0, 9))
    values = camc_lambda(jet(catenoid_surface(1.5), s, theta), isotropic_energy())
    np.testing.assert_allclose(values, 0.0, atol=1e-12)


def test_catenoid_width() -> None:
    """Tests W = det g / r^2 on the catenoid"""
    data = frame(jet(catenoid_surface(1.0), np.array([0.0, 0.5]), 0.3))
    np.testing.assert_allclose(data.W, np.cosh([0.0, 0.5]) ** 2, rtol=1e-12)


def test_frame_vertical_normal() -> None:
    """Tests strict and lenient handling of a vertical normal"""
    sample = jet(plane_surface(1.0), np.array([0.0, 1.0]), np.array([0.0, 2.0]))
    with pytest.raises(VerticalNormalDegeneracy):
        frame(sample)
    data = frame(sample, strict=False)
    assert np.all(data.degenerate)


def test_frame_directions() -> None:
    """Tests that E1 and E2 are tangent, orthogonal and of length^2 1 - nu3^2"""
    sample = jet(polynomial_graph({"xx": 1.0, "xy": 0.5}), 0.4, -0.3)
    data = frame(sample)
    length = 1.0 - float(data.nu3) ** 2
    assert float(np.dot(data.E1, data.nu)) == pytest.approx(0.0, abs=1e-14)
    assert float(np.dot(data.E2, data.nu)) == pytest.approx(0.0, abs=1e-14)
    assert float(np.dot(data.E1, data.E2)) == pytest.approx(0.0, abs=1e-14)
    assert float(np.dot(data.E1, data.E1)) == pytest.approx(length)
    assert float(np.dot(data.E2, data.E2)) == pytest.approx(length)
    rebuilt = data.c11 * sample.Xs + data.c12 * sample.Xt
    np.testing.assert_allclose(rebuilt, data.E1, atol=1e-13)


def test_degenerate_jet() -> None:
    """Tests that a parametrization collapsing theta is refused"""
    collapsed = ParametricSurface(
        lambda s, t: stack(s, 0.0 * t, 0.0 * s), jet_mode=JetMode.FINITE_DIFFERENCE
    )
    with pytest.raises(DegenerateJet):
        jet(collapsed, 0.0, 0.0)


def test_dirichlet_needs_tilted_normal() -> None:
    """Tests that the Dirichlet Lambda is undefined on a vertical cylinder"""
    with pytest.raises(DomainError):
        camc_lambda(jet(cylinder_surface(), 0.0, 0.0), dirichlet_energy())


def test_hyperboloid_domain() -> None:
    """Tests the hyperboloid energy on a gently sloped graph"""
    surface = polynomial_graph({"xx": 0.1, "yy": 0.1})
    value = camc_lambda(jet(surface, 0.5, 0.5), hyperboloid_energy())
    assert math.isfinite(value)
    with pytest.raises(DomainError):
        camc_lambda(jet(polynomial_graph({"xx": 5.0}), 1.0, 0.0), hyperboloid_energy())


def test_fd_matches_analytic() -> None:
    """Tests finite difference jets against closed-form ones"""
    surface = catenoid_surface(1.0)
    s, theta = np.array([-0.5, 0.2, 0.8]), np.array([0.3, 2.0, 4.0])
    exact, approx = jet(surface, s, theta), jet(surface.with_fd(1e-4), s, theta)
    np.testing.assert_allclose(approx.Xs, exact.Xs, atol=1e-7)
    np.testing.assert_allclose(approx.Xss, exact.Xss, atol=1e-5)
    np.testing.assert_allclose(approx.Xst, exact.Xst, atol=1e-5)
    np.testing.assert_allclose(
        camc_lambda(approx, isotropic_energy()), camc_lambda(exact, isotropic_energy()), atol=1e-5
    )


def test_orientation_flip() -> None:
    """Tests that reversing an orientation flips the sign of Lambda"""
    energy = dirichlet_energy()
    surface = polynomial_graph({"xx": 1.0, "yy": 0.5})
    forward = camc_lambda(jet(surface, 0.3, 0.4), energy)
    backward = camc_lambda(jet(reverse_theta(surface), 0.3, -0.4), energy)
    swapped = camc_lambda(jet(swap_parameters(surface), 0.4, 0.3), energy)
    assert forward == pytest.approx(6.0)
    assert backward == pytest.approx(-forward)
    assert swapped == pytest.approx(-forward)


def test_sign_convention_record() -> None:
    """Tests the orientation record of an upward graph"""
    record = camc_residual_sign_convention(jet(polynomial_graph({"x": 1.0}), 0.0, 0.0))
    assert record.convention == "Xs x Xtheta"
    assert record.upward
    assert record.nu3 == pytest.approx(1.0 / math.sqrt(2.0))


def test_rotation_about_z_invariance() -> None:
    """Tests that Lambda is invariant under rotations about the z-axis and translations"""
    energy = dirichlet_energy()
    surface = polynomial_graph({"xx": 0.7, "xy": -0.4, "yy": 0.2, "y": 0.3})
    moved = transform_surface(surface, rotation_about_z(0.7), (1.0, -2.0, 3.0))
    s, theta = np.array([0.2, 0.6]), np.array([0.5, -0.3])
    np.testing.assert_allclose(
        camc_lambda(jet(moved, s, theta), energy),
        camc_lambda(jet(surface, s, theta), energy),
        rtol=1e-10,
    )


def test_isotropic_rotation_invariance() -> None:
    """Tests that the area functional does not see a tilt"""
    tilted = transform_surface(catenoid_surface(1.0), rotation_about_y(0.4))
    values = camc_lambda(jet(tilted, np.array([0.1, 0.7]), 1.3), isotropic_energy())
    np.testing.assert_allclose(values, 0.0, atol=1e-12)
