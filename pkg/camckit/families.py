"""
Module with the closed-form anisotropic minimal surfaces foliated by
horizontal circles, the rotational CAMC graphs, and predicates for their
geometry.

A cyclic surface is X(s, theta) = (a(s), b(s), s) + r(s)(cos theta, sin theta, 0).
With a' = lambda r^2 and b' = mu r^2 the remaining equation
(lambda^2 + mu^2) r^4 + r'^2 - r r'' = 0 has a first integral whose sign
splits the solutions into three types, written below with
L = sqrt(lambda^2 + mu^2) and K = L^2:

    Type I    r = c / (L cos(cs)),   a = c lambda tan(cs) / K
    Type II   r = 1 / (L s + c),     a = -lambda / (K s + c L)
    Type III  r = c / (L sinh(cs)),  a = -c lambda coth(cs) / K

b is a with lambda replaced by mu.
"""

__author__ = "camc-kit developers"
__license__ = "MIT"

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from camckit.datatypes import FamilyKind, Interval
from camckit.errors import DegenerateRadius, DomainError, UnsupportedExtension
from camckit.surface import (
    ParamDomain,
    ParametricSurface,
    SurfaceJet,
    rotation_about_z,
    stack,
    transform_surface,
)

DEFAULT_MARGIN = 1e-3


def _out(value: Any) -> Any:
    array = np.asarray(value, dtype=float)
    return float(array) if array.ndim == 0 else array


@dataclass(frozen=True)
class CyclicFamilyParams:
    """Parameters (kind, lambda, mu, c) of one member of a family"""

    kind: FamilyKind
    lam: float
    mu: float
    c: float

    def __post_init__(self) -> None:
        if self.lam == 0 and self.mu == 0:
            raise DomainError("Need lambda^2 + mu^2 != 0")
        if self.kind is not FamilyKind.TYPE_II and self.c == 0:
            raise DomainError(f"{self.kind.value} needs c != 0")

    @property
    def norm(self) -> float:
        """sqrt(lambda^2 + mu^2)"""
        return math.hypot(self.lam, self.mu)

    @property
    def norm2(self) -> float:
        """lambda^2 + mu^2"""
        return self.lam * self.lam + self.mu * self.mu

    def as_dict(self) -> Dict[str, Any]:
        """JSON-compatible description"""
        return {"family": self.kind.value, "lambda": self.lam, "mu": self.mu, "c": self.c}


@dataclass(frozen=True)
class CyclicProfile:  # pylint: disable=too-many-instance-attributes
    """Radius and centre of the circle at height s, with two derivatives"""

    r: Any
    a: Any
    b: Any
    rp: Any
    ap: Any
    bp: Any
    rpp: Any
    app: Any
    bpp: Any


def domain_interval(params: CyclicFamilyParams) -> Interval:
    """The maximal interval of heights on which r is positive and finite."""
    c = params.c
    if params.kind is FamilyKind.TYPE_I:
        half = math.pi / (2.0 * abs(c))
        return Interval(-half, half) if c > 0 else Interval(half, 3.0 * half)
    if params.kind is FamilyKind.TYPE_II:
        return Interval(-c / params.norm, math.inf)
    # r and a of Type III are even in c
    return Interval(0.0, math.inf)


def family_profile(params: CyclicFamilyParams, s: Any) -> CyclicProfile:
    """Evaluates the closed-form profile at s (scalar or array)."""
    s = np.asarray(s, dtype=float)
    interval = domain_interval(params)
    if not np.all(interval.contains(s)):
        raise DomainError(f"s outside the {params.kind.value} domain {interval}")

    lam, mu, c = params.lam, params.mu, params.c
    norm, norm2 = params.norm, params.norm2
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if params.kind is FamilyKind.TYPE_I:
            cos, sin = np.cos(c * s), np.sin(c * s)
            r = c / (norm * cos)
            rp = c * c * sin / (norm * cos**2)
            rpp = c**3 * (1.0 + sin**2) / (norm * cos**3)
            center = c * np.tan(c * s) / norm2
        elif params.kind is FamilyKind.TYPE_II:
            denominator = norm * s + c
            r = 1.0 / denominator
            rp = -norm / denominator**2
            rpp = 2.0 * norm2 / denominator**3
            center = -1.0 / (norm * denominator)
        else:
            sinh, cosh = np.sinh(c * s), np.cosh(c * s)
            r = c / (norm * sinh)
            rp = -c * c * cosh / (norm * sinh**2)
            rpp = c**3 * (1.0 + cosh**2) / (norm * sinh**3)
            center = -c * cosh / (sinh * norm2)

    if not (np.all(np.isfinite(r)) and np.all(r > 0)):
        raise DomainError(f"r <= 0 or infinite for {params.kind.value} at the given s")
    # a' = lambda r^2, so a'' = 2 lambda r r'
    return CyclicProfile(
        r=_out(r),
        a=_out(lam * center),
        b=_out(mu * center),
        rp=_out(rp),
        ap=_out(lam * r * r),
        bp=_out(mu * r * r),
        rpp=_out(rpp),
        app=_out(2.0 * lam * r * rp),
        bpp=_out(2.0 * mu * r * rp),
    )


def cyclic_jet(profile: CyclicProfile, s: np.ndarray, theta: np.ndarray) -> SurfaceJet:
    """Jet of (a, b, s) + r (cos theta, sin theta, 0) from a profile at s."""
    cos, sin = np.cos(theta), np.sin(theta)
    r, rp, rpp = profile.r, profile.rp, profile.rpp
    return SurfaceJet(
        X=stack(profile.a + r * cos, profile.b + r * sin, s),
        Xs=stack(profile.ap + rp * cos, profile.bp + rp * sin, 1.0 + 0.0 * cos),
        Xt=stack(-r * sin, r * cos, 0.0),
        Xss=stack(profile.app + rpp * cos, profile.bpp + rpp * sin, 0.0),
        Xst=stack(-rp * sin, rp * cos, 0.0),
        Xtt=stack(-r * cos, -r * sin, 0.0),
        radius=np.asarray(r + 0.0 * cos),
    )


def cyclic_surface(params: CyclicFamilyParams) -> ParametricSurface:
    """The family member as an analytic parametric surface."""

    def points(s: np.ndarray, theta: np.ndarray) -> np.ndarray:
        profile = family_profile(params, s)
        return stack(
            profile.a + profile.r * np.cos(theta), profile.b + profile.r * np.sin(theta), s
        )

    def derivatives(s: np.ndarray, theta: np.ndarray) -> SurfaceJet:
        return cyclic_jet(family_profile(params, s), s, theta)

    return ParametricSurface(
        points,
        param_domain=ParamDomain(s=domain_interval(params)),
        derivatives=derivatives,
        radius=lambda s: family_profile(params, s).r,
        descriptor=params.as_dict(),
    )


@dataclass(frozen=True)
class RotationalProfile:
    """The rotational graph u(r) = c1 log r + (lambda_camc / 8) r^2 + c2"""

    c1: float
    c2: float
    lambda_camc: float

    @staticmethod
    def _check(r: Any) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if not np.all(r > 0):
            raise DegenerateRadius("The polar radius must be positive")
        return r

    def u(self, r: Any) -> Any:
        """Height of the graph"""
        r = self._check(r)
        return _out(self.c1 * np.log(r) + self.lambda_camc * r * r / 8.0 + self.c2)

    def du(self, r: Any) -> Any:
        """u'(r)"""
        r = self._check(r)
        return _out(self.c1 / r + self.lambda_camc * r / 4.0)

    def d2u(self, r: Any) -> Any:
        """u''(r)"""
        r = self._check(r)
        return _out(-self.c1 / (r * r) + self.lambda_camc / 4.0)

    def as_dict(self) -> Dict[str, Any]:
        """JSON-compatible description"""
        return {
            "family": "rotational",
            "c1": self.c1,
            "c2": self.c2,
            "lambda0": self.lambda_camc,
        }


def rotational_solution(c1: float, c2: float, lambda_camc: float) -> RotationalProfile:
    """The rotational solution of u'' + u'/r = lambda_camc / 2."""
    return RotationalProfile(float(c1), float(c2), float(lambda_camc))


def rotational_surface(profile: RotationalProfile) -> ParametricSurface:
    """The surface of revolution (r cos theta, r sin theta, u(r)), s = r."""

    def points(r: np.ndarray, theta: np.ndarray) -> np.ndarray:
        return stack(r * np.cos(theta), r * np.sin(theta), profile.u(r))

    def derivatives(r: np.ndarray, theta: np.ndarray) -> SurfaceJet:
        cos, sin = np.cos(theta), np.sin(theta)
        return SurfaceJet(
            X=points(r, theta),
            Xs=stack(cos, sin, profile.du(r)),
            Xt=stack(-r * sin, r * cos, 0.0),
            Xss=stack(0.0 * cos, 0.0 * sin, profile.d2u(r)),
            Xst=stack(-sin, cos, 0.0),
            Xtt=stack(-r * cos, -r * sin, 0.0),
        )

    return ParametricSurface(
        points,
        param_domain=ParamDomain(s=Interval(0.0, math.inf)),
        derivatives=derivatives,
        descriptor=profile.as_dict(),
    )


def normalize_by_rotation(params: CyclicFamilyParams) -> Tuple[CyclicFamilyParams, float]:
    """
    Returns the parameters with mu = 0 and the angle phi such that rotating
    the normalized surface by phi about the z-axis gives the original one.
    """
    phi = math.atan2(params.mu, params.lam)
    return CyclicFamilyParams(params.kind, params.norm, 0.0, params.c), phi


def overlap_predicate(params: CyclicFamilyParams, s1: float, s2: float) -> bool:
    """Whether the projections of the circles at s1 and s2 onto the
    xy-plane overlap."""
    first, second = family_profile(params, s1), family_profile(params, s2)
    distance = math.hypot(first.a - second.a, first.b - second.b)
    return distance < first.r + second.r


def symmetry_check(params: CyclicFamilyParams, s: float, theta: float) -> float:
    """Returns |R(X(s, theta)) - X(-s, pi - theta)| with R(x, y, z) = (-x, y, -z).

    Defined for normalized Type I members, whose domain is symmetric in s.
    """
    if params.kind is not FamilyKind.TYPE_I or params.mu != 0:
        raise DomainError("The point symmetry holds for normalized Type I members only")
    surface = cyclic_surface(params)
    image = surface(s, theta) * np.array([-1.0, 1.0, -1.0])
    return float(np.linalg.norm(image - surface(-s, math.pi - theta)))


def mirror_symmetry_check(params: CyclicFamilyParams, s: float, theta: float) -> float:
    """Returns |M(X(s, theta)) - X(s, 2 phi - theta)|.

    M is the reflection in the vertical plane -mu x + lambda y = 0 holding
    the curve of centres, phi = atan2(mu, lambda).
    """
    surface = cyclic_surface(params)
    normal = np.array([-params.mu, params.lam, 0.0]) / params.norm
    point = surface(s, theta)
    image = point - 2.0 * float(np.dot(point, normal)) * normal
    phi = math.atan2(params.mu, params.lam)
    return float(np.linalg.norm(image - surface(s, 2.0 * phi - theta)))


def dilate(params: CyclicFamilyParams, k: float) -> CyclicFamilyParams:
    """Parameters of the image of the surface under x -> k x.

    The dilated surface satisfies X_new(k s, theta) = k X_old(s, theta).
    """
    if k <= 0:
        raise DomainError(f"Dilation factor must be positive, got {k}")
    return CyclicFamilyParams(params.kind, params.lam / k**2, params.mu / k**2, params.c / k)


@dataclass(frozen=True)
class LimitLine:
    """A straight line bounding a surface piece, as point and direction"""

    point: Tuple[float, float, float]
    direction: Tuple[float, float, float]

    def distance(self, x: Any) -> float:
        """Distance from a point to the line"""
        offset = np.asarray(x, dtype=float) - np.asarray(self.point)
        along = np.dot(offset, self.direction) * np.asarray(self.direction)
        return float(np.linalg.norm(offset - along))


def line_rotation(line: LimitLine) -> Tuple[np.ndarray, np.ndarray]:
    """Matrix and shift of the 180 degree rotation about a line."""
    d = np.asarray(line.direction, dtype=float)
    p = np.asarray(line.point, dtype=float)
    matrix = 2.0 * np.outer(d, d) - np.eye(3)
    return matrix, p - matrix @ p


@dataclass
class ExtendedSurface:
    """Surface pieces of a Schwarz extension and the lines they share"""

    params: CyclicFamilyParams
    pieces: List[ParametricSurface]
    limit_lines: List[LimitLine] = field(default_factory=list)


def _boundary_direction(params: CyclicFamilyParams) -> Tuple[float, float, float]:
    return (-params.mu / params.norm, params.lam / params.norm, 0.0)


def schwarz_extend(params: CyclicFamilyParams, copies: int = 1) -> ExtendedSurface:
    """
    Extends a family member across its boundary lines.

    Type I is tiled by vertical translations of period pi/|c|, copies is the
    number of slabs. Types II and III are completed by the 180 degree
    rotation about their boundary line, which exists once: copies must be 1.
    """
    if copies < 1:
        raise UnsupportedExtension(f"copies must be at least 1, got {copies}")
    base = cyclic_surface(params)
    direction = _boundary_direction(params)
    interval = domain_interval(params)

    if params.kind is FamilyKind.TYPE_I:
        period = math.pi / abs(params.c)
        pieces = [
            transform_surface(base, np.eye(3), (0.0, 0.0, k * period)) for k in range(copies)
        ]
        heights = [interval.lower + k * period for k in range(copies + 1)]
        lines = [LimitLine((0.0, 0.0, z), direction) for z in heights]
        return ExtendedSurface(params, pieces, lines)

    if copies != 1:
        raise UnsupportedExtension(
            f"{params.kind.value} extends once by a rotation, got copies={copies}"
        )
    height = interval.lower if params.kind is FamilyKind.TYPE_II else 0.0
    line = LimitLine((0.0, 0.0, height), direction)
    matrix, shift = line_rotation(line)
    rotated = transform_surface(base, matrix, shift)
    return ExtendedSurface(params, [base, rotated], [line])


@dataclass
class AsymptoteReport:
    """Distances from a sequence of probe points to a claimed limit"""

    limit_kind: str
    limit: Dict[str, Any]
    theta: float
    parameters: List[float]
    distances: List[float]
    horizontal_extent: List[float]

    @property
    def final_distance(self) -> float:
        """Distance at the last probe"""
        return self.distances[-1]

    @property
    def converged(self) -> bool:
        """Distances do not increase and end below 1e-3"""
        settling = all(b <= a for a, b in zip(self.distances, self.distances[1:]))
        return settling and self.final_distance < 1e-3

    @property
    def diverges(self) -> bool:
        """The probe points run off to horizontal infinity"""
        return self.horizontal_extent[-1] > 1e3


def _meeting_angle(params: CyclicFamilyParams, s: float) -> float:
    """The theta whose point on the circle at s faces the z-axis."""
    profile = family_profile(params, s)
    return math.atan2(-profile.b, -profile.a)


def asymptote_probe(  # pylint: disable=too-many-locals
    params: CyclicFamilyParams, end: str = "upper", theta: Optional[float] = None
) -> AsymptoteReport:
    """
    Follows the curve theta = const towards one end of the domain and
    measures the distance to the limit the end is claimed to have.

    At a finite end the circles blow up inside the plane z = limit. The
    distance is then the horizontal distance to the boundary line in that
    plane: the curve facing the z-axis meets the line, every other curve
    diverges horizontally. At an infinite end the limit is the z-axis for
    Type II and a vertical line for Type III.

    theta defaults to the curve meeting the boundary line at a finite end,
    to a curve off the axis for Type II and to 0 for Type III.
    """
    if end not in ("upper", "lower"):
        raise DomainError(f"end must be 'upper' or 'lower', got {end!r}")
    interval = domain_interval(params)
    surface = cyclic_surface(params)
    sign = 1.0 if end == "upper" else -1.0
    limit = interval.upper if end == "upper" else interval.lower
    # the curve of centres runs along u, the boundary lines along u rotated by 90 degrees
    u = np.array([params.lam, params.mu]) / params.norm

    if math.isfinite(limit):
        probes = [limit - sign * 10.0**-k for k in range(1, 7)]
        angle = _meeting_angle(params, probes[-1]) if theta is None else theta
        points = surface(np.array(probes), angle)
        distances = list(np.abs(points[:, :2] @ u))
        kind = "plane"
        description: Dict[str, Any] = {
            "z": limit,
            "line_direction": [float(v) for v in _boundary_direction(params)],
        }
    elif params.kind is FamilyKind.TYPE_II:
        probes = [interval.lower + 10.0**k for k in range(6)]
        # theta = atan2(mu, lambda) is the curve lying on the axis
        angle = math.atan2(params.mu, params.lam) + math.pi / 2 if theta is None else theta
        points = surface(np.array(probes), angle)
        distances = list(np.hypot(points[:, 0], points[:, 1]))
        kind, description = "vertical line", {"x": 0.0, "y": 0.0}
    else:
        probes = [m / abs(params.c) for m in (2.0, 4.0, 8.0, 16.0, 24.0, 32.0)]
        angle = 0.0 if theta is None else theta
        # coth(cs) tends to sign(c)
        x_limit = -abs(params.c) * params.lam / params.norm2
        y_limit = -abs(params.c) * params.mu / params.norm2
        points = surface(np.array(probes), angle)
        distances = list(np.hypot(points[:, 0] - x_limit, points[:, 1] - y_limit))
        kind, description = "vertical line", {"x": x_limit, "y": y_limit}

    return AsymptoteReport(
        limit_kind=kind,
        limit=description,
        theta=float(angle),
        parameters=[float(p) for p in probes],
        distances=[float(d) for d in distances],
        horizontal_extent=[float(h) for h in np.hypot(points[:, 0], points[:, 1])],
    )


def rotated_family_surface(params: CyclicFamilyParams) -> ParametricSurface:
    """The normalized member rotated back by its angle; coincides with
    cyclic_surface(params)."""
    normalized, phi = normalize_by_rotation(params)
    return transform_surface(cyclic_surface(normalized), rotation_about_z(phi))
