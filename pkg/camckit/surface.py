"""
Module for parametric surfaces, their jets and the anisotropic mean
curvature of an axially symmetric energy.

Every function here is vectorised: s and theta may be arrays of any common
shape, vectors then carry a trailing axis of length 3.

The orientation is always nu = Xs x Xtheta / |Xs x Xtheta|, so the sign of
Lambda follows the order of the parameters.
"""

__author__ = "camc-kit developers"
__license__ = "MIT"

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional

import numpy as np

from camckit.datatypes import Interval, JetMode
from camckit.energy import AxiallySymmetricEnergy, wulff_reciprocals
from camckit.errors import (
    DegenerateJet,
    DomainError,
    OutOfDomain,
    VerticalNormalDegeneracy,
)

EPS_FRAME = 1e-10
EPS_IMMERSION = 1e-12
DEFAULT_FD_STEP = 1e-4

E3 = np.array([0.0, 0.0, 1.0])
REAL_LINE = Interval(-math.inf, math.inf)


def stack(x: Any, y: Any, z: Any) -> np.ndarray:
    """Stacks three broadcastable components into (..., 3) vectors."""
    components = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    return np.stack(components, axis=-1)


def dot(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Dot product over the trailing axis"""
    return np.sum(u * v, axis=-1)


def _out(value: np.ndarray) -> Any:
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class SurfaceJet:  # pylint: disable=invalid-name
    """
    Position and derivatives of a parametrization X(s, theta).

    The suffix t stands for theta, so Xst is the mixed derivative.
    """

    X: np.ndarray
    Xs: np.ndarray
    Xt: np.ndarray
    Xss: np.ndarray
    Xst: np.ndarray
    Xtt: np.ndarray
    radius: Optional[np.ndarray] = None


SurfacePoints = Callable[[np.ndarray, np.ndarray], np.ndarray]
SurfaceDerivatives = Callable[[np.ndarray, np.ndarray], SurfaceJet]


@dataclass(frozen=True)
class ParamDomain:
    """The parameter rectangle of a surface"""

    s: Interval = REAL_LINE
    theta: Interval = REAL_LINE


@dataclass(frozen=True)
class ParametricSurface:  # pylint: disable=too-many-instance-attributes
    """
    A parametrized surface X(s, theta).

    Attributes:
        evaluate: vectorised map (s, theta) -> points
        param_domain: where evaluate is defined
        derivatives: closed-form jets, required for analytic mode
        jet_mode: analytic or finite differences
        fd_step: step of the finite difference jets
        radius: circle radius r(s) of a cyclic parametrization, if any
        descriptor: JSON-compatible record of how the surface was made
    """

    evaluate: SurfacePoints
    param_domain: ParamDomain = ParamDomain()
    derivatives: Optional[SurfaceDerivatives] = None
    jet_mode: JetMode = JetMode.ANALYTIC
    fd_step: float = DEFAULT_FD_STEP
    radius: Optional[Callable[[np.ndarray], np.ndarray]] = None
    descriptor: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert self.fd_step > 0, "fd_step must be positive"
        assert (
            self.jet_mode is JetMode.FINITE_DIFFERENCE or self.derivatives is not None
        ), "analytic surfaces need closed-form derivatives"

    def __call__(self, s: Any, theta: Any) -> np.ndarray:
        return self.evaluate(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))

    def with_fd(self, step: float = DEFAULT_FD_STEP) -> "ParametricSurface":
        """The same surface with finite difference jets"""
        return replace(self, jet_mode=JetMode.FINITE_DIFFERENCE, fd_step=step)


def _fd_jet(surface: ParametricSurface, s: np.ndarray, t: np.ndarray) -> SurfaceJet:
    h = surface.fd_step
    f = surface.evaluate
    x = f(s, t)
    s_plus, s_minus = f(s + h, t), f(s - h, t)
    t_plus, t_minus = f(s, t + h), f(s, t - h)
    mixed = f(s + h, t + h) - f(s + h, t - h) - f(s - h, t + h) + f(s - h, t - h)
    return SurfaceJet(
        X=x,
        Xs=(s_plus - s_minus) / (2.0 * h),
        Xt=(t_plus - t_minus) / (2.0 * h),
        Xss=(s_plus - 2.0 * x + s_minus) / (h * h),
        Xst=mixed / (4.0 * h * h),
        Xtt=(t_plus - 2.0 * x + t_minus) / (h * h),
    )


def jet(surface: ParametricSurface, s: Any, theta: Any) -> SurfaceJet:
    """Returns position and first and second derivatives at (s, theta)."""
    s, theta = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))
    margin = 2.0 * surface.fd_step if surface.jet_mode is JetMode.FINITE_DIFFERENCE else 0.0
    domain = surface.param_domain
    for values, interval, name in ((s, domain.s, "s"), (theta, domain.theta, "theta")):
        inside = np.logical_and(
            interval.contains(values - margin), interval.contains(values + margin)
        )
        if not np.all(inside):
            raise OutOfDomain(f"{name} is not inside {interval} with margin {margin}")

    if surface.jet_mode is JetMode.FINITE_DIFFERENCE:
        result = _fd_jet(surface, s, theta)
    else:
        assert surface.derivatives is not None
        result = surface.derivatives(s, theta)
    if surface.radius is not None:
        result = replace(result, radius=np.asarray(surface.radius(s), dtype=float))

    normal = np.linalg.norm(np.cross(result.Xs, result.Xt), axis=-1)
    if not np.all(normal >= EPS_IMMERSION):
        raise DegenerateJet(f"|Xs x Xtheta| < {EPS_IMMERSION} at some sample")
    return result


@dataclass(frozen=True)
class FrameData:  # pylint: disable=too-many-instance-attributes
    """
    Gauss map, fundamental forms and the principal-direction frame.

    hss, hst, htt use the unnormalised scaling <Xs x Xtheta, X..>.
    """

    nu: np.ndarray
    nu3: np.ndarray
    g11: np.ndarray
    g12: np.ndarray
    g22: np.ndarray
    detg: np.ndarray
    hss: np.ndarray
    hst: np.ndarray
    htt: np.ndarray
    E1: np.ndarray  # pylint: disable=invalid-name
    E2: np.ndarray  # pylint: disable=invalid-name
    c11: np.ndarray
    c12: np.ndarray
    c21: np.ndarray
    c22: np.ndarray
    H: np.ndarray  # pylint: disable=invalid-name
    W: Optional[np.ndarray] = None  # pylint: disable=invalid-name
    degenerate: Optional[np.ndarray] = None

    def quadratic(self, first: np.ndarray, second: np.ndarray) -> np.ndarray:
        """c^T (hss hst; hst htt) c, the unnormalised h(E, E)"""
        return (
            first * first * self.hss
            + 2.0 * first * second * self.hst
            + second * second * self.htt
        )

    @property
    def q1(self) -> np.ndarray:
        """Unnormalised h(E1, E1)"""
        return self.quadratic(self.c11, self.c12)

    @property
    def q2(self) -> np.ndarray:
        """Unnormalised h(E2, E2)"""
        return self.quadratic(self.c21, self.c22)

    def h_e1(self) -> np.ndarray:
        """h(E1, E1)"""
        return self.q1 / np.sqrt(self.detg)

    def h_e2(self) -> np.ndarray:
        """h(E2, E2)"""
        return self.q2 / np.sqrt(self.detg)


def frame(sample: SurfaceJet, strict: bool = True, eps_frame: float = EPS_FRAME) -> FrameData:
    """
    Computes the Gauss map, the fundamental forms and the frame
    E1 = e3 - nu3 nu, E2 = nu x E1 in the coordinates of {Xs, Xtheta}.

    With strict set, a vertical normal anywhere raises
    VerticalNormalDegeneracy; otherwise such nodes are flagged in
    degenerate and E1, E2 are left (nearly) zero there.
    """
    cross = np.cross(sample.Xs, sample.Xt)
    norm = np.linalg.norm(cross, axis=-1)
    if not np.all(norm >= EPS_IMMERSION):
        raise DegenerateJet(f"|Xs x Xtheta| < {EPS_IMMERSION} at some sample")
    nu = cross / norm[..., None]
    nu3 = nu[..., 2]
    degenerate = 1.0 - nu3 * nu3 <= eps_frame
    if strict and np.any(degenerate):
        raise VerticalNormalDegeneracy("The normal is vertical, E1 = e3 - nu3 nu vanishes")

    g11 = dot(sample.Xs, sample.Xs)
    g12 = dot(sample.Xs, sample.Xt)
    g22 = dot(sample.Xt, sample.Xt)
    detg = g11 * g22 - g12 * g12
    hss = dot(cross, sample.Xss)
    hst = dot(cross, sample.Xst)
    htt = dot(cross, sample.Xtt)

    e1 = E3 - nu3[..., None] * nu
    e2 = np.cross(nu, e1)

    def coordinates(vector: np.ndarray) -> Any:
        p, q = dot(vector, sample.Xs), dot(vector, sample.Xt)
        return (g22 * p - g12 * q) / detg, (g11 * q - g12 * p) / detg

    c11, c12 = coordinates(e1)
    c21, c22 = coordinates(e2)
    mean = (htt * g11 - 2.0 * hst * g12 + hss * g22) / (2.0 * detg**1.5)
    width = None
    if sample.radius is not None:
        width = detg / sample.radius**2
    return FrameData(
        nu=nu,
        nu3=nu3,
        g11=g11,
        g12=g12,
        g22=g22,
        detg=detg,
        hss=hss,
        hst=hst,
        htt=htt,
        E1=e1,
        E2=e2,
        c11=c11,
        c12=c12,
        c21=c21,
        c22=c22,
        H=mean,
        W=width,
        degenerate=degenerate,
    )


def camc_lambda(sample: SurfaceJet, energy: AxiallySymmetricEnergy) -> Any:
    """
    Anisotropic mean curvature

        Lambda = (1/mu1) h(E1^, E1^) + (1/mu2) h(E2^, E2^)

    with E^ the unit principal directions, |E1|^2 = |E2|^2 = 1 - nu3^2.
    """
    data = frame(sample)
    reciprocals = wulff_reciprocals(energy, data.nu3)
    value = (reciprocals.inv_mu1 * data.h_e1() + reciprocals.inv_mu2 * data.h_e2()) / (
        1.0 - data.nu3**2
    )
    return _out(value)


def dirichlet_lambda_h2(data: FrameData) -> Any:
    """Closed Dirichlet reduction 2(h(E1,E1) + nu3^2 h(E2,E2)) / (|nu3|^3 (1 - nu3^2))."""
    nu3 = data.nu3
    if np.any(nu3 == 0):
        raise DomainError("The Dirichlet reduction is undefined at nu3 = 0")
    value = 2.0 * (data.h_e1() + nu3 * nu3 * data.h_e2()) / (np.abs(nu3) ** 3 * (1.0 - nu3 * nu3))
    return _out(value)


@dataclass(frozen=True)
class OrientationRecord:
    """How the sign of Lambda was fixed at a sample"""

    convention: str
    nu: np.ndarray
    nu3: Any
    upward: Any


def camc_residual_sign_convention(sample: SurfaceJet) -> OrientationRecord:
    """Records the orientation nu = Xs x Xtheta / |Xs x Xtheta| at a sample.

    Reversing the order of the parameters flips nu and therefore the sign of
    Lambda for even energies.
    """
    cross = np.cross(sample.Xs, sample.Xt)
    nu = cross / np.linalg.norm(cross, axis=-1)[..., None]
    upward = nu[..., 2] > 0
    return OrientationRecord(
        convention="Xs x Xtheta",
        nu=nu,
        nu3=_out(nu[..., 2]),
        upward=bool(upward) if upward.ndim == 0 else upward,
    )


def swap_parameters(surface: ParametricSurface) -> ParametricSurface:
    """The surface reparametrized by (s, theta) -> (theta, s)."""
    derivatives = None
    if surface.derivatives is not None:
        original = surface.derivatives

        def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
            sample = original(t, s)
            return SurfaceJet(sample.X, sample.Xt, sample.Xs, sample.Xtt, sample.Xst, sample.Xss)

    return replace(
        surface,
        evaluate=lambda s, t: surface.evaluate(t, s),
        param_domain=ParamDomain(surface.param_domain.theta, surface.param_domain.s),
        derivatives=derivatives,
        radius=None,
        descriptor={**surface.descriptor, "reparametrized": "swap"},
    )


def reverse_theta(surface: ParametricSurface) -> ParametricSurface:
    """The surface reparametrized by theta -> -theta."""
    derivatives = None
    if surface.derivatives is not None:
        original = surface.derivatives

        def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
            sample = original(s, -t)
            return SurfaceJet(
                sample.X, sample.Xs, -sample.Xt, sample.Xss, -sample.Xst, sample.Xtt
            )

    theta = surface.param_domain.theta
    return replace(
        surface,
        evaluate=lambda s, t: surface.evaluate(s, -t),
        param_domain=ParamDomain(
            surface.param_domain.s,
            Interval(-theta.upper, -theta.lower, theta.upper_open, theta.lower_open),
        ),
        derivatives=derivatives,
        descriptor={**surface.descriptor, "reparametrized": "reverse_theta"},
    )


def rotation_about_z(angle: float) -> np.ndarray:
    """Rotation matrix by angle about the z-axis"""
    cos, sin = math.cos(angle), math.sin(angle)
    return np.array([[cos, -sin, 0.0], [sin, cos, 0.0], [0.0, 0.0, 1.0]])


def rotation_about_y(angle: float) -> np.ndarray:
    """Rotation matrix by angle about the y-axis"""
    cos, sin = math.cos(angle), math.sin(angle)
    return np.array([[cos, 0.0, sin], [0.0, 1.0, 0.0], [-sin, 0.0, cos]])


def transform_surface(
    surface: ParametricSurface, rotation: Any, shift: Any = (0.0, 0.0, 0.0)
) -> ParametricSurface:
    """The rigid (or orthogonal) image x -> rotation x + shift of a surface."""
    matrix = np.asarray(rotation, dtype=float)
    offset = np.asarray(shift, dtype=float)
    assert matrix.shape == (3, 3) and offset.shape == (3,)

    derivatives = None
    if surface.derivatives is not None:
        original = surface.derivatives

        def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
            sample = original(s, t)
            return SurfaceJet(
                sample.X @ matrix.T + offset,
                sample.Xs @ matrix.T,
                sample.Xt @ matrix.T,
                sample.Xss @ matrix.T,
                sample.Xst @ matrix.T,
                sample.Xtt @ matrix.T,
            )

    return replace(
        surface,
        evaluate=lambda s, t: surface.evaluate(s, t) @ matrix.T + offset,
        derivatives=derivatives,
        descriptor={
            **surface.descriptor,
            "rotation": matrix.tolist(),
            "shift": offset.tolist(),
        },
    )


def plane_surface(height: float = 0.0) -> ParametricSurface:
    """The horizontal plane X = (s, theta, height)"""

    def points(s: np.ndarray, t: np.ndarray) -> np.ndarray:
        return stack(s, t, height)

    def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
        zero = stack(0.0 * s, 0.0 * t, 0.0)
        return SurfaceJet(
            points(s, t),
            stack(1.0, 0.0 * t, 0.0 * s),
            stack(0.0 * s, 1.0, 0.0 * t),
            zero,
            zero,
            zero,
        )

    return ParametricSurface(
        points, derivatives=derivatives, descriptor={"surface": "plane", "height": height}
    )


def cylinder_surface(radius: float = 1.0) -> ParametricSurface:
    """The vertical cylinder X = (R cos theta, R sin theta, s)"""
    if radius <= 0:
        raise DomainError(f"Cylinder radius must be positive, got {radius}")

    def points(s: np.ndarray, t: np.ndarray) -> np.ndarray:
        return stack(radius * np.cos(t), radius * np.sin(t), s)

    def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
        zero = stack(0.0 * s, 0.0 * t, 0.0)
        cos, sin = np.cos(t) + 0.0 * s, np.sin(t) + 0.0 * s
        return SurfaceJet(
            points(s, t),
            stack(0.0 * cos, 0.0 * cos, 1.0),
            stack(-radius * sin, radius * cos, 0.0),
            zero,
            zero,
            stack(-radius * cos, -radius * sin, 0.0),
        )

    return ParametricSurface(
        points, derivatives=derivatives, descriptor={"surface": "cylinder", "radius": radius}
    )


GraphFunction = Callable[[np.ndarray, np.ndarray], Any]


def graph_surface(
    u: GraphFunction,
    gradient: Callable[[np.ndarray, np.ndarray], Any],
    hessian: Callable[[np.ndarray, np.ndarray], Any],
    label: str = "graph",
) -> ParametricSurface:
    """
    The graph X = (x, y, u(x, y)) with s = x and theta = y.

    gradient returns (u_x, u_y), hessian returns (u_xx, u_xy, u_yy).
    """

    def points(s: np.ndarray, t: np.ndarray) -> np.ndarray:
        return stack(s, t, u(s, t))

    def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
        u_x, u_y = gradient(s, t)
        u_xx, u_xy, u_yy = hessian(s, t)
        zero = 0.0 * s + 0.0 * t
        return SurfaceJet(
            points(s, t),
            stack(1.0 + zero, zero, u_x),
            stack(zero, 1.0 + zero, u_y),
            stack(zero, zero, u_xx),
            stack(zero, zero, u_xy),
            stack(zero, zero, u_yy),
        )

    return ParametricSurface(points, derivatives=derivatives, descriptor={"surface": label})


def polynomial_graph(coefficients: Dict[str, float]) -> ParametricSurface:
    """
    Graph of a quadratic polynomial u = c + cx x + cy y + cxx x^2 + cxy x y
    + cyy y^2, keys named after the monomials ("1", "x", "y", "xx", "xy", "yy").
    """
    unknown = set(coefficients) - {"1", "x", "y", "xx", "xy", "yy"}
    if unknown:
        raise DomainError(f"Unknown monomials {sorted(unknown)}")
    k = {key: float(coefficients.get(key, 0.0)) for key in ("1", "x", "y", "xx", "xy", "yy")}

    def u(x: np.ndarray, y: np.ndarray) -> Any:
        linear = k["1"] + k["x"] * x + k["y"] * y
        return linear + k["xx"] * x * x + k["xy"] * x * y + k["yy"] * y * y

    def gradient(x: np.ndarray, y: np.ndarray) -> Any:
        return k["x"] + 2.0 * k["xx"] * x + k["xy"] * y, k["y"] + k["xy"] * x + 2.0 * k["yy"] * y

    def hessian(x: np.ndarray, y: np.ndarray) -> Any:
        zero = 0.0 * x + 0.0 * y
        return 2.0 * k["xx"] + zero, k["xy"] + zero, 2.0 * k["yy"] + zero

    surface = graph_surface(u, gradient, hessian, label="polynomial graph")
    return replace(surface, descriptor={"surface": "polynomial graph", "coefficients": k})


def catenoid_surface(c1: float = 1.0) -> ParametricSurface:
    """The catenoid X = (c1 cosh(s/c1) cos theta, c1 cosh(s/c1) sin theta, s)"""
    if c1 <= 0:
        raise DomainError(f"Catenoid neck must be positive, got {c1}")

    def profile(s: np.ndarray) -> np.ndarray:
        return c1 * np.cosh(s / c1)

    def points(s: np.ndarray, t: np.ndarray) -> np.ndarray:
        rho = profile(s)
        return stack(rho * np.cos(t), rho * np.sin(t), s)

    def derivatives(s: np.ndarray, t: np.ndarray) -> SurfaceJet:
        rho, drho, ddrho = profile(s), np.sinh(s / c1), np.cosh(s / c1) / c1
        cos, sin = np.cos(t), np.sin(t)
        return SurfaceJet(
            points(s, t),
            stack(drho * cos, drho * sin, 1.0),
            stack(-rho * sin, rho * cos, 0.0),
            stack(ddrho * cos, ddrho * sin, 0.0),
            stack(-drho * sin, drho * cos, 0.0),
            stack(-rho * cos, -rho * sin, 0.0),
        )

    return ParametricSurface(
        points,
        derivatives=derivatives,
        radius=profile,
        descriptor={"surface": "catenoid", "c1": c1},
    )
