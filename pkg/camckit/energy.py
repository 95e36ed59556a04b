"""
Module for axially symmetric anisotropic surface energies.

An energy is a positive density F(nu3) of the third component of the unit
normal. The two quantities every other module needs from it are the
reciprocal principal curvatures of its Wulff shape,

    1/mu2 = F - nu3 F'(nu3),    1/mu1 = (1 - nu3^2) F''(nu3) + 1/mu2,

which weight the second fundamental form in the anisotropic mean curvature.

Graph-type energies (Dirichlet, hyperboloid) are even in the normal: they
are evaluated at |nu3| so that both orientations of a surface are admitted.
"""

__author__ = "camc-kit developers"
__license__ = "MIT"

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Optional, Tuple

import numpy as np

from camckit.datatypes import GridSpec, Interval, JetMode
from camckit.errors import DomainError, GridTooSmall

if TYPE_CHECKING:
    from camckit.surface import ParametricSurface

DIRICHLET_FLOOR = 0.05
# finite difference jets carry rounding of order eps |X| / h^2, which 1/nu3^3 amplifies
DIRICHLET_FD_FLOOR = 0.3

ScalarMap = Callable[[Any], Any]
ClearedMap = Callable[[Any], Tuple[Any, Any, Any]]


def _out(value: Any) -> Any:
    """Unwraps 0-d arrays so that scalar input gives float output."""
    array = np.asarray(value, dtype=float)
    return float(array) if array.ndim == 0 else array


@dataclass(frozen=True)
class AxiallySymmetricEnergy:  # pylint: disable=invalid-name
    """
    An anisotropic surface energy F(nu3) with its first two derivatives.

    Attributes:
        label: short name used in reports
        F, dF, d2F: the density and its derivatives, numpy-vectorised
        domain: admissible values of nu3 (of |nu3| when even is set)
        even: F(nu) = F(-nu), evaluate at |nu3|
        conditioning_floor: |nu3| below which Lambda is too ill-conditioned
            to be reported on a grid
        fd_conditioning_floor: the same for finite difference jets
        cleared: optional map nu3 -> (w/mu1, w/mu2, w) with a weight w that
            removes the poles of the reciprocals
    """

    label: str
    F: ScalarMap
    dF: ScalarMap
    d2F: ScalarMap
    domain: Interval
    even: bool = True
    conditioning_floor: float = 0.0
    fd_conditioning_floor: float = 0.0
    cleared: Optional[ClearedMap] = None

    def effective(self, nu3: Any) -> np.ndarray:
        """The argument F is actually evaluated at."""
        nu3 = np.asarray(nu3, dtype=float)
        return np.abs(nu3) if self.even else nu3

    def mask_floor(self, jet_mode: JetMode = JetMode.ANALYTIC) -> float:
        """The conditioning floor for jets of the given mode."""
        if jet_mode is JetMode.FINITE_DIFFERENCE:
            return max(self.conditioning_floor, self.fd_conditioning_floor)
        return self.conditioning_floor

    def admissible(self, nu3: Any) -> Any:
        """Elementwise domain membership of nu3."""
        return self.domain.contains(self.effective(nu3))

    def density(self, nu3: Any) -> Any:
        """F at nu3, DomainError outside the domain."""
        _check_domain(self, nu3)
        return _out(self.F(self.effective(nu3)))


@dataclass(frozen=True)
class WulffReciprocals:
    """Reciprocal principal curvatures of the Wulff shape at some nu3"""

    inv_mu1: Any
    inv_mu2: Any


def _check_domain(energy: AxiallySymmetricEnergy, nu3: Any) -> None:
    if not np.all(energy.admissible(nu3)):
        bad = np.asarray(nu3, dtype=float)
        raise DomainError(
            f"nu3 outside the {energy.label} domain {energy.domain}: "
            f"{bad if bad.ndim == 0 else bad[~np.asarray(energy.admissible(nu3))][:5]}"
        )


def _reciprocals(energy: AxiallySymmetricEnergy, x: np.ndarray) -> Tuple[Any, Any]:
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_mu2 = energy.F(x) - x * energy.dF(x)
        inv_mu1 = (1.0 - x * x) * energy.d2F(x) + inv_mu2
    return inv_mu1, inv_mu2


def wulff_reciprocals(energy: AxiallySymmetricEnergy, nu3: Any) -> WulffReciprocals:
    """Returns (1/mu1, 1/mu2) of the Wulff shape of energy at nu3."""
    _check_domain(energy, nu3)
    inv_mu1, inv_mu2 = _reciprocals(energy, energy.effective(nu3))
    return WulffReciprocals(_out(inv_mu1), _out(inv_mu2))


def cleared_reciprocals(energy: AxiallySymmetricEnergy, nu3: Any) -> Tuple[Any, Any, Any]:
    """Returns (w/mu1, w/mu2, w).

    Without a cleared form w is 1 and the values are NaN or infinite
    outside the domain; the caller masks those nodes.
    """
    nu3 = np.asarray(nu3, dtype=float)
    if energy.cleared is not None:
        return energy.cleared(nu3)
    inv_mu1, inv_mu2 = _reciprocals(energy, energy.effective(nu3))
    return inv_mu1, inv_mu2, np.ones_like(nu3)


def wulff_profile(energy: AxiallySymmetricEnergy, nu3: Any) -> Tuple[Any, Any]:
    """Meridian point (rho, z) of the Wulff shape xi = DF + F nu at the
    normal with third component nu3 (taken in the upper hemisphere)."""
    _check_domain(energy, nu3)
    x = np.abs(energy.effective(nu3))
    inv_mu2 = energy.F(x) - x * energy.dF(x)
    rho = np.sqrt(1.0 - x * x) * inv_mu2
    z = energy.dF(x) * (1.0 - x * x) + energy.F(x) * x
    return _out(rho), _out(z)


def _stencil_derivatives(
    func: ScalarMap, x: float, h: float
) -> Tuple[float, float]:
    f_m2, f_m1, f_0, f_p1, f_p2 = (float(func(x + k * h)) for k in (-2, -1, 0, 1, 2))
    first = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) / (12.0 * h)
    second = (-f_p2 + 16.0 * f_p1 - 30.0 * f_0 + 16.0 * f_m1 - f_m2) / (12.0 * h * h)
    return first, second


def verify_derivatives(
    energy: AxiallySymmetricEnergy, samples: int = 9, rel_tol: float = 1e-6
) -> bool:
    """Checks F > 0, dF and d2F against central differences of F at
    interior points of the domain."""
    lower, upper = energy.domain.lower, energy.domain.upper
    width = upper - lower
    for x in np.linspace(lower + 0.2 * width, upper - 0.2 * width, samples):
        x = float(x)
        if float(energy.F(x)) <= 0:
            return False
        scale = min(x - lower, upper - x)
        if abs(x) > 0:
            scale = min(scale, abs(x))
        first, second = _stencil_derivatives(energy.F, x, 1e-3 * scale)
        for exact, approx in ((float(energy.dF(x)), first), (float(energy.d2F(x)), second)):
            if abs(exact - approx) > rel_tol * max(abs(exact), 1.0):
                return False
    return True


def _dirichlet_cleared(nu3: Any) -> Tuple[Any, Any, Any]:
    nu3 = np.asarray(nu3, dtype=float)
    return np.ones_like(nu3), nu3 * nu3, 0.5 * np.abs(nu3) ** 3


def dirichlet_energy() -> AxiallySymmetricEnergy:
    """The Dirichlet energy F = 1/nu3 - nu3 on (0, 1]."""
    energy = AxiallySymmetricEnergy(
        label="dirichlet",
        F=lambda x: 1.0 / x - x,
        dF=lambda x: -1.0 / (x * x) - 1.0,
        d2F=lambda x: 2.0 / (x * x * x),
        domain=Interval(0.0, 1.0, lower_open=True, upper_open=False),
        conditioning_floor=DIRICHLET_FLOOR,
        fd_conditioning_floor=DIRICHLET_FD_FLOOR,
        cleared=_dirichlet_cleared,
    )
    assert verify_derivatives(energy), "dirichlet derivatives are inconsistent"
    return energy


def hyperboloid_energy() -> AxiallySymmetricEnergy:
    """The energy sqrt(2 nu3^2 - 1)/nu3 on (1/sqrt2, 1], whose Wulff shape
    is a hyperboloid."""

    def d2f(x: Any) -> Any:
        q = 2.0 * x * x - 1.0
        return -2.0 * (3.0 * x * x - 1.0) / (x**3 * q**1.5)

    energy = AxiallySymmetricEnergy(
        label="hyperboloid",
        F=lambda x: np.sqrt(2.0 * x * x - 1.0) / x,
        dF=lambda x: 1.0 / (x * x * np.sqrt(2.0 * x * x - 1.0)),
        d2F=d2f,
        domain=Interval(1.0 / math.sqrt(2.0), 1.0, lower_open=True, upper_open=False),
    )
    assert verify_derivatives(energy), "hyperboloid derivatives are inconsistent"
    return energy


def isotropic_energy() -> AxiallySymmetricEnergy:
    """The area functional F = 1, for which Lambda = 2H."""
    return AxiallySymmetricEnergy(
        label="isotropic",
        F=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        dF=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        d2F=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        domain=Interval(-1.0, 1.0, lower_open=False, upper_open=False),
    )


ENERGIES = {
    "dirichlet": dirichlet_energy,
    "hyperboloid": hyperboloid_energy,
    "isotropic": isotropic_energy,
}


def surface_energy_quadrature(
    surface: "ParametricSurface", energy: AxiallySymmetricEnergy, grid: GridSpec
) -> float:
    """Midpoint-rule value of the integral of F(nu3) over the surface patch
    covered by grid."""
    from camckit.surface import jet  # pylint: disable=import-outside-toplevel

    s, theta = grid.mesh()
    sample = jet(surface, s, theta)
    cross = np.cross(sample.Xs, sample.Xt)
    area = np.linalg.norm(cross, axis=-1)
    nu3 = cross[..., 2] / area
    _check_domain(energy, nu3)
    values = energy.F(energy.effective(nu3)) * area
    return float(np.sum(values) * grid.ds * grid.dtheta)


@dataclass(frozen=True)
class PlanarSamples:
    """
    Values of a function u(x, y) at the cell centres of a uniform grid.

    values[i, j] belongs to x_i = x_min + (i + 1/2) dx, y_j likewise.
    """

    values: np.ndarray
    x_min: float = 0.0
    x_max: float = 1.0
    y_min: float = 0.0
    y_max: float = 1.0

    @property
    def dx(self) -> float:
        """Cell width along x"""
        return (self.x_max - self.x_min) / self.values.shape[0]

    @property
    def dy(self) -> float:
        """Cell width along y"""
        return (self.y_max - self.y_min) / self.values.shape[1]


def sample_graph(
    u: Callable[[np.ndarray, np.ndarray], np.ndarray],
    nx: int,
    ny: int,
    bounds: Tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0),
) -> PlanarSamples:
    """Samples u at the cell centres of an nx by ny grid over bounds."""
    x_min, x_max, y_min, y_max = bounds
    x = x_min + (np.arange(nx) + 0.5) * (x_max - x_min) / nx
    y = y_min + (np.arange(ny) + 0.5) * (y_max - y_min) / ny
    xx, yy = np.meshgrid(x, y, indexing="ij")
    values = np.asarray(u(xx, yy), dtype=float) + np.zeros_like(xx)
    return PlanarSamples(values, x_min, x_max, y_min, y_max)


def discrete_graph_energy(u_samples: PlanarSamples, lambda_: float) -> float:
    """Returns int |Du|^2 + lambda_ int u over the sampled rectangle."""
    nx, ny = u_samples.values.shape
    if nx < 3 or ny < 3:
        raise GridTooSmall(f"Need at least 3 samples per axis, got {nx}x{ny}")
    u_x, u_y = np.gradient(u_samples.values, u_samples.dx, u_samples.dy, edge_order=2)
    cell = u_samples.dx * u_samples.dy
    dirichlet = float(np.sum(u_x * u_x + u_y * u_y) * cell)
    volume = float(np.sum(u_samples.values) * cell)
    return dirichlet + lambda_ * volume
