"""
Module for residual analysis of candidate CAMC surfaces.

It samples Lambda over a grid, projects the theta-periodic residual of
every s-slice onto cos(n theta), sin(n theta), builds cyclic surfaces whose
circles lie in non-horizontal planes (along a Frenet-framed curve), checks
harmonicity of the height of a local graph and bundles everything into a
pass/fail certificate.
"""

__author__ = "camc-kit developers"
__license__ = "MIT"

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from camckit.datatypes import GridSpec, Interval, JetMode
from camckit.energy import AxiallySymmetricEnergy, cleared_reciprocals, wulff_reciprocals
from camckit.errors import (
    AliasingRisk,
    DomainError,
    FrameUndefined,
    NewtonDivergence,
    NotAGraph,
    VerticalNormalDegeneracy,
)
from camckit.families import (
    CyclicFamilyParams,
    RotationalProfile,
    cyclic_surface,
    rotational_surface,
)
from camckit.surface import (
    ParamDomain,
    ParametricSurface,
    dot,
    frame,
    jet,
    rotation_about_y,
    transform_surface,
)

DEFAULT_MODES = 12
NEWTON_TOL = 1e-12
NEWTON_MAXITER = 50
KAPPA_FLOOR = 1e-12
CURVE_FD_STEP = 1e-3
GRAPH_NU3_FLOOR = 0.3


class DegenerateNode(NamedTuple):
    """A grid node left out of a residual field"""

    i: int
    j: int
    s: float
    theta: float
    reason: str


@dataclass
class ResidualField:  # pylint: disable=too-many-instance-attributes
    """
    Lambda sampled on the midpoint nodes of a grid.

    Masked nodes hold NaN in values and are listed in degenerate; cleared
    holds the pole-free residual used for the Fourier spectra.
    """

    grid: GridSpec
    values: np.ndarray
    cleared: np.ndarray
    target: float
    max_abs_dev: float
    degenerate: List[DegenerateNode] = field(default_factory=list)
    floor: float = 0.0

    @property
    def partial(self) -> bool:
        """Whether some node was masked"""
        return bool(self.degenerate)

    @property
    def evaluated(self) -> int:
        """Number of unmasked nodes"""
        return int(np.count_nonzero(np.isfinite(self.values)))

    @property
    def spread(self) -> float:
        """Half the range of Lambda, the least deviation from any constant"""
        finite = self.values[np.isfinite(self.values)]
        return float(finite.max() - finite.min()) / 2.0


def cleared_residual(
    data: Any, energy: AxiallySymmetricEnergy, lambda0: float
) -> np.ndarray:
    """
    w sqrt(det g) (1 - nu3^2) (Lambda - lambda0), computed without dividing
    by the poles of the Wulff reciprocals. Zero where the normal is vertical.
    """
    weighted1, weighted2, weight = cleared_reciprocals(energy, data.nu3)
    with np.errstate(invalid="ignore", over="ignore"):
        residual = (
            weighted1 * data.q1
            + weighted2 * data.q2
            - weight * lambda0 * (1.0 - data.nu3**2) * np.sqrt(data.detg)
        )
    return np.where(data.degenerate, 0.0, residual)


def lambda_field(
    surface: ParametricSurface,
    energy: AxiallySymmetricEnergy,
    grid: GridSpec,
    target: Optional[float] = None,
    nu3_floor: Optional[float] = None,
) -> ResidualField:
    """
    Samples Lambda on the grid.

    Nodes with a vertical normal, with |nu3| outside the energy domain or
    below the conditioning floor are masked and reported. The floor is the
    energy's one for the jet mode of the surface unless nu3_floor is given.
    Deviations are measured from target, or from the mean of the field when
    it is None.
    """
    s, theta = grid.mesh()
    data = frame(jet(surface, s, theta), strict=False)
    floor = energy.mask_floor(surface.jet_mode) if nu3_floor is None else nu3_floor

    vertical = np.asarray(data.degenerate)
    outside = ~np.asarray(energy.admissible(data.nu3)) & ~vertical
    ill = (np.abs(data.nu3) < floor) & ~vertical & ~outside
    usable = ~(vertical | outside | ill)
    if not np.any(usable):
        if np.all(vertical):
            raise VerticalNormalDegeneracy("The normal is vertical at every node")
        raise DomainError(f"No node has |nu3| inside the {energy.label} domain above {floor}")

    values = np.full(s.shape, np.nan)
    nu3 = data.nu3[usable]
    reciprocals = wulff_reciprocals(energy, nu3)
    values[usable] = (
        reciprocals.inv_mu1 * data.h_e1()[usable] + reciprocals.inv_mu2 * data.h_e2()[usable]
    ) / (1.0 - nu3 * nu3)

    reasons = ((vertical, "vertical normal"), (outside, "outside domain"), (ill, "ill-conditioned"))
    degenerate = [
        DegenerateNode(int(i), int(j), float(s[i, j]), float(theta[i, j]), reason)
        for mask, reason in reasons
        for i, j in zip(*np.nonzero(mask))
    ]
    degenerate.sort()

    level = float(np.mean(values[usable])) if target is None else float(target)
    return ResidualField(
        grid=grid,
        values=values,
        cleared=cleared_residual(data, energy, level),
        target=level,
        max_abs_dev=float(np.max(np.abs(values[usable] - level))),
        degenerate=degenerate,
        floor=floor,
    )


@dataclass(frozen=True)
class FourierSpectrum:
    """
    Coefficients of sum A_n cos(n theta) + B_n sin(n theta), n <= N.

    A holds A_0..A_N, B holds B_1..B_N.
    """

    s: float
    A: Tuple[float, ...]  # pylint: disable=invalid-name
    B: Tuple[float, ...]  # pylint: disable=invalid-name
    N: int  # pylint: disable=invalid-name

    def a(self, n: int) -> float:
        """A_n"""
        return self.A[n]

    def b(self, n: int) -> float:
        """B_n, zero for n = 0"""
        return 0.0 if n == 0 else self.B[n - 1]

    def max_abs(self) -> float:
        """Largest coefficient magnitude, the mean included"""
        return float(max(np.max(np.abs(self.A)), np.max(np.abs(self.B), initial=0.0)))

    def reconstruct(self, theta: Any) -> np.ndarray:
        """Evaluates the truncated series at theta"""
        theta = np.asarray(theta, dtype=float)
        result = np.full(theta.shape, self.A[0])
        for n in range(1, self.N + 1):
            result = result + self.A[n] * np.cos(n * theta) + self.B[n - 1] * np.sin(n * theta)
        return result

    def as_dict(self) -> Dict[str, Any]:
        """JSON-compatible description"""
        return {"s": self.s, "A": list(self.A), "B": list(self.B), "N": self.N}


def fourier_project(
    residual_slice: Any,
    N: int = DEFAULT_MODES,  # pylint: disable=invalid-name
    s: float = math.nan,
    theta0: float = 0.0,
) -> FourierSpectrum:
    """
    Projects samples at theta_j = theta0 + 2 pi j / M onto the first N
    harmonics, using the FFT for the discrete orthogonal sums.
    """
    values = np.asarray(residual_slice, dtype=float)
    count = values.shape[0]
    if count < 4 * N:
        raise AliasingRisk(f"{count} samples cannot resolve {N} modes, need {4 * N}")
    modes = np.arange(N + 1)
    coefficients = np.fft.rfft(values)[: N + 1] * np.exp(-1j * modes * theta0)
    cosine = 2.0 * coefficients.real / count
    cosine[0] = coefficients[0].real / count
    sine = -2.0 * coefficients.imag[1:] / count
    return FourierSpectrum(
        s=float(s),
        A=tuple(float(v) for v in cosine),
        B=tuple(float(v) for v in sine),
        N=N,
    )


CurveMap = Callable[[Any], np.ndarray]
ScalarFunction = Callable[[Any], Any]


@dataclass(frozen=True)
class FrenetCurve:  # pylint: disable=too-many-instance-attributes
    """
    A space curve gamma(s) with its Frenet apparatus.

    Derivatives are analytic when d1, d2, d3 are given, central finite
    differences otherwise; the frame is re-orthonormalised by Gram-Schmidt
    either way. center_offset (p, q) moves the circle centres to
    gamma + p n + q b.
    """

    gamma: CurveMap
    d1: Optional[CurveMap] = None
    d2: Optional[CurveMap] = None
    d3: Optional[CurveMap] = None
    fd_step: float = CURVE_FD_STEP
    center_offset: Optional[Tuple[ScalarFunction, ScalarFunction]] = None
    label: str = "curve"

    def derivatives(self, s: Any) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """gamma', gamma'', gamma''' at s"""
        s = np.asarray(s, dtype=float)
        if self.d1 is not None and self.d2 is not None and self.d3 is not None:
            return self.d1(s), self.d2(s), self.d3(s)
        h, g = self.fd_step, self.gamma
        minus2, minus1, centre, plus1, plus2 = (g(s + k * h) for k in (-2, -1, 0, 1, 2))
        return (
            (plus1 - minus1) / (2.0 * h),
            (plus1 - 2.0 * centre + minus1) / (h * h),
            (plus2 - 2.0 * plus1 + 2.0 * minus1 - minus2) / (2.0 * h**3),
        )

    def kappa(self, s: Any) -> Any:
        """Curvature |g' x g''| / |g'|^3"""
        g1, g2, _ = self.derivatives(s)
        return np.linalg.norm(np.cross(g1, g2), axis=-1) / np.linalg.norm(g1, axis=-1) ** 3

    def tau(self, s: Any) -> Any:
        """Torsion det(g', g'', g''') / |g' x g''|^2"""
        g1, g2, g3 = self.derivatives(s)
        cross = np.cross(g1, g2)
        return dot(cross, g3) / dot(cross, cross)

    def frame(self, s: Any) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(t, n, b) at s, FrameUndefined where the curvature vanishes"""
        g1, g2, _ = self.derivatives(s)
        kappa = np.linalg.norm(np.cross(g1, g2), axis=-1) / np.linalg.norm(g1, axis=-1) ** 3
        if not np.all(kappa >= KAPPA_FLOOR):
            raise FrameUndefined(f"Curvature of {self.label} vanishes, no normal")
        tangent = g1 / np.linalg.norm(g1, axis=-1)[..., None]
        normal = g2 - dot(g2, tangent)[..., None] * tangent
        normal = normal / np.linalg.norm(normal, axis=-1)[..., None]
        return tangent, normal, np.cross(tangent, normal)

    def offsets(self, s: Any) -> Tuple[Any, Any]:
        """(p, q) at s"""
        s = np.asarray(s, dtype=float)
        if self.center_offset is None:
            return 0.0 * s, 0.0 * s
        p, q = self.center_offset
        return p(s) + 0.0 * s, q(s) + 0.0 * s

    def center(self, s: Any) -> np.ndarray:
        """Circle centre gamma + p n + q b"""
        _, normal, binormal = self.frame(s)
        p, q = self.offsets(s)
        point = self.gamma(np.asarray(s, dtype=float))
        return point + p[..., None] * normal + q[..., None] * binormal

    def _offset_slopes(self, s: Any) -> Tuple[Any, Any]:
        h = self.fd_step
        p_plus, q_plus = self.offsets(np.asarray(s) + h)
        p_minus, q_minus = self.offsets(np.asarray(s) - h)
        return (p_plus - p_minus) / (2.0 * h), (q_plus - q_minus) / (2.0 * h)

    def alpha(self, s: Any) -> Any:
        """Tangential part of the centre velocity, |g'| (1 - kappa p)"""
        g1, _, _ = self.derivatives(s)
        p, _ = self.offsets(s)
        return np.linalg.norm(g1, axis=-1) * (1.0 - self.kappa(s) * p)

    def beta(self, s: Any) -> Any:
        """Normal part of the centre velocity, p' - |g'| tau q"""
        g1, _, _ = self.derivatives(s)
        _, q = self.offsets(s)
        dp, _ = self._offset_slopes(s)
        return dp - np.linalg.norm(g1, axis=-1) * self.tau(s) * q

    def gamma_coeff(self, s: Any) -> Any:
        """Binormal part of the centre velocity, q' + |g'| tau p"""
        g1, _, _ = self.derivatives(s)
        p, _ = self.offsets(s)
        _, dq = self._offset_slopes(s)
        return dq + np.linalg.norm(g1, axis=-1) * self.tau(s) * p


def circular_arc(radius: float = 5.0, plane: str = "xz") -> FrenetCurve:
    """
    Arc-length parametrized circle of the given radius.

    In the xz-plane it is (R sin(s/R), 0, R - R cos(s/R)), lowest at s = 0;
    in the xy-plane (R cos(s/R), R sin(s/R), 0).
    """
    if radius <= 0:
        raise DomainError(f"Arc radius must be positive, got {radius}")
    if plane not in ("xz", "xy"):
        raise DomainError(f"plane must be 'xz' or 'xy', got {plane!r}")
    k = 1.0 / radius

    def embed(first: Any, second: Any) -> np.ndarray:
        zero = 0.0 * first
        if plane == "xz":
            return np.stack([first, zero, second], axis=-1)
        return np.stack([first, second, zero], axis=-1)

    if plane == "xz":
        return FrenetCurve(
            gamma=lambda s: embed(radius * np.sin(k * s), radius - radius * np.cos(k * s)),
            d1=lambda s: embed(np.cos(k * s), np.sin(k * s)),
            d2=lambda s: embed(-k * np.sin(k * s), k * np.cos(k * s)),
            d3=lambda s: embed(-k * k * np.cos(k * s), -k * k * np.sin(k * s)),
            label=f"arc(R={radius}, xz)",
        )
    return FrenetCurve(
        gamma=lambda s: embed(radius * np.cos(k * s), radius * np.sin(k * s)),
        d1=lambda s: embed(-np.sin(k * s), np.cos(k * s)),
        d2=lambda s: embed(-k * np.cos(k * s), -k * np.sin(k * s)),
        d3=lambda s: embed(k * k * np.sin(k * s), -k * k * np.cos(k * s)),
        label=f"arc(R={radius}, xy)",
    )


def helix(a: float = 1.0, b: float = 0.5) -> FrenetCurve:
    """Arc-length parametrized helix (a cos(s/w), a sin(s/w), b s/w),
    w = sqrt(a^2 + b^2); kappa = a/w^2 and tau = b/w^2."""
    if a <= 0:
        raise DomainError(f"Helix radius must be positive, got {a}")
    w = math.hypot(a, b)

    def vector(x: Any, y: Any, z: Any) -> np.ndarray:
        return np.stack(np.broadcast_arrays(x, y, z), axis=-1)

    return FrenetCurve(
        gamma=lambda s: vector(a * np.cos(s / w), a * np.sin(s / w), b * s / w),
        d1=lambda s: vector(-a * np.sin(s / w) / w, a * np.cos(s / w) / w, b / w + 0.0 * s),
        d2=lambda s: vector(-a * np.cos(s / w) / w**2, -a * np.sin(s / w) / w**2, 0.0 * s),
        d3=lambda s: vector(a * np.sin(s / w) / w**3, -a * np.cos(s / w) / w**3, 0.0 * s),
        label=f"helix(a={a}, b={b})",
    )


def straight_line(direction: Tuple[float, float, float] = (1.0, 0.0, 0.0)) -> FrenetCurve:
    """The line s d through the origin, d normalised; it has no Frenet frame."""
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    return FrenetCurve(
        gamma=lambda s: np.asarray(s, dtype=float)[..., None] * d, label="straight line"
    )


def frenet_e3_coordinates(curve: FrenetCurve, s: float) -> Tuple[float, float, float]:
    """Coordinates (e11, e22, e33) of e3 = (0, 0, 1) in the frame (t, n, b)."""
    tangent, normal, binormal = curve.frame(s)
    return float(tangent[2]), float(normal[2]), float(binormal[2])


def _radius_function(radius: Any) -> ScalarFunction:
    if callable(radius):
        return radius
    value = float(radius)
    if value <= 0:
        raise DomainError(f"Circle radius must be positive, got {value}")
    return lambda s: value + 0.0 * np.asarray(s, dtype=float)


def tilted_cyclic_surface(
    curve: FrenetCurve,
    radius: Any,
    s_range: Tuple[float, float] = (-1.0, 1.0),
    center_offset: Optional[Tuple[ScalarFunction, ScalarFunction]] = None,
    fd_step: float = 1e-4,
) -> ParametricSurface:
    """
    The cyclic surface c(s) + r(s)(cos theta n(s) + sin theta b(s)) whose
    circles lie in the normal planes of curve, in finite difference mode.

    radius is a constant or a function of s. The frame is checked over
    s_range up front, so a curve without curvature fails here.
    """
    if center_offset is not None:
        curve = FrenetCurve(
            curve.gamma, curve.d1, curve.d2, curve.d3, curve.fd_step, center_offset, curve.label
        )
    profile = _radius_function(radius)
    lower, upper = s_range
    curve.frame(np.linspace(lower, upper, 33))

    def points(s: np.ndarray, theta: np.ndarray) -> np.ndarray:
        s, theta = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))
        _, normal, binormal = curve.frame(s)
        r = np.asarray(profile(s), dtype=float)[..., None]
        circle = np.cos(theta)[..., None] * normal + np.sin(theta)[..., None] * binormal
        return curve.center(s) + r * circle

    # room for the 2h jet stencil around the probed range
    margin = 3.0 * fd_step
    return ParametricSurface(
        points,
        param_domain=ParamDomain(s=Interval(lower - margin, upper + margin)),
        jet_mode=JetMode.FINITE_DIFFERENCE,
        fd_step=fd_step,
        radius=lambda s: np.asarray(profile(s), dtype=float),
        descriptor={"surface": "tilted", "curve": curve.label, "s_range": [lower, upper]},
    )


def oblique_foliation_surface(params: CyclicFamilyParams, tilt: float) -> ParametricSurface:
    """A family member rotated about the y-axis, so that its circles lie
    in planes at angle tilt to the horizontal."""
    surface = transform_surface(cyclic_surface(params), rotation_about_y(tilt))
    return _with_tilt(surface, tilt)


def tilted_rotational_surface(profile: RotationalProfile, tilt: float) -> ParametricSurface:
    """A rotational solution whose axis is tilted from the vertical."""
    surface = transform_surface(rotational_surface(profile), rotation_about_y(tilt))
    return _with_tilt(surface, tilt)


def _with_tilt(surface: ParametricSurface, tilt: float) -> ParametricSurface:
    descriptor = {key: value for key, value in surface.descriptor.items() if key != "rotation"}
    descriptor["tilt"] = tilt
    return ParametricSurface(
        surface.evaluate,
        param_domain=surface.param_domain,
        derivatives=surface.derivatives,
        jet_mode=surface.jet_mode,
        fd_step=surface.fd_step,
        radius=surface.radius,
        descriptor=descriptor,
    )


def _invert_projection(
    surface: ParametricSurface,
    target: np.ndarray,
    start: np.ndarray,
    seed: np.ndarray,
    halfwidth: float,
) -> Tuple[np.ndarray, float]:
    """Newton solve of (X1, X2)(s, theta) = target; returns the parameters
    and the height X3 there."""
    point = start.copy()
    for _ in range(NEWTON_MAXITER):
        sample = jet(surface, point[0], point[1])
        residual = sample.X[:2] - target
        if np.max(np.abs(residual)) <= NEWTON_TOL * max(1.0, float(np.max(np.abs(target)))):
            return point, float(sample.X[2])
        matrix = np.array([[sample.Xs[0], sample.Xt[0]], [sample.Xs[1], sample.Xt[1]]])
        scale = float(np.linalg.norm(sample.Xs) * np.linalg.norm(sample.Xt))
        if abs(np.linalg.det(matrix)) <= 1e-12 * scale:
            raise NotAGraph(f"The projection to the xy-plane is singular at {point}")
        point = point - np.linalg.solve(matrix, residual)
        if np.max(np.abs(point - seed)) > halfwidth:
            raise NewtonDivergence(f"Newton left the patch of half-width {halfwidth}")
    raise NewtonDivergence(f"No convergence in {NEWTON_MAXITER} Newton iterations")


def local_graph_laplace_residual(  # pylint: disable=too-many-arguments
    surface: ParametricSurface,
    seed: Tuple[float, float],
    patch_halfwidth: float = 0.25,
    fd_step: float = 1e-3,
    lambda0: float = 0.0,
    nu3_floor: float = GRAPH_NU3_FLOOR,
) -> float:
    """
    z_xx + z_yy - lambda0/2 for the surface written as a graph z(x, y)
    around X(seed), from the 5-point stencil of step fd_step.

    The surface must be a graph near the seed: NotAGraph is raised when
    |nu3| there is below nu3_floor. Each stencil point is found by Newton
    inversion of the projection, started from the linear prediction
    seed + J^-1 (dx, dy).
    """
    centre = np.asarray(seed, dtype=float)
    sample = jet(surface, centre[0], centre[1])
    normal = np.cross(sample.Xs, sample.Xt)
    nu3 = float(normal[2] / np.linalg.norm(normal))
    if abs(nu3) < nu3_floor:
        raise NotAGraph(f"|nu3| = {abs(nu3):.3g} at {tuple(centre)} is below {nu3_floor}")
    x0, y0, z0 = (float(v) for v in sample.X)
    matrix = np.array([[sample.Xs[0], sample.Xt[0]], [sample.Xs[1], sample.Xt[1]]])
    heights = []
    for dx, dy in ((fd_step, 0.0), (-fd_step, 0.0), (0.0, fd_step), (0.0, -fd_step)):
        offset = np.array([dx, dy])
        start = centre + np.linalg.solve(matrix, offset)
        target = np.array([x0, y0]) + offset
        _, height = _invert_projection(surface, target, start, centre, patch_halfwidth)
        heights.append(height)
    laplacian = (sum(heights) - 4.0 * z0) / (fd_step * fd_step)
    return laplacian - lambda0 / 2.0


@dataclass(frozen=True)
class Tolerances:
    """Pass thresholds of a certificate"""

    lambda_tol: float = 1e-6
    mode_tol: float = 1e-6
    modes: int = DEFAULT_MODES
    nu3_floor: Optional[float] = None

    def as_dict(self) -> Dict[str, Any]:
        """JSON-compatible description"""
        return {
            "lambda_tol": self.lambda_tol,
            "mode_tol": self.mode_tol,
            "modes": self.modes,
            "nu3_floor": self.nu3_floor,
        }


@dataclass
class CertificateReport:  # pylint: disable=too-many-instance-attributes
    """Outcome of camc_certificate"""

    surface_descriptor: Dict[str, Any]
    energy_label: str
    lambda0: float
    grid: GridSpec
    field: ResidualField
    worst_slice: Optional[FourierSpectrum]
    tolerances: Tolerances
    passed: bool

    def as_dict(self) -> Dict[str, Any]:
        """The report document"""
        return {
            "surface_descriptor": self.surface_descriptor,
            "energy_label": self.energy_label,
            "lambda0": self.lambda0,
            "grid": self.grid.as_dict(),
            "max_abs_dev": self.field.max_abs_dev,
            "evaluated_nodes": self.field.evaluated,
            "masked_nodes": len(self.field.degenerate),
            "masked_fraction": len(self.field.degenerate) / self.field.values.size,
            "mask_floor": self.field.floor,
            "partial": self.field.partial,
            "worst_slice": None if self.worst_slice is None else self.worst_slice.as_dict(),
            "pass": self.passed,
            "tolerances": self.tolerances.as_dict(),
        }


def camc_certificate(
    surface: ParametricSurface,
    energy: AxiallySymmetricEnergy,
    grid: GridSpec,
    lambda0: float = 0.0,
    tolerances: Tolerances = Tolerances(),
) -> CertificateReport:
    """
    Checks that Lambda equals lambda0 on the grid and that every s-slice of
    the cleared residual has vanishing Fourier modes.
    """
    if not math.isclose(grid.theta_max - grid.theta_min, 2.0 * math.pi, rel_tol=1e-12):
        raise DomainError("A certificate needs a full period in theta")
    residual = lambda_field(surface, energy, grid, target=lambda0, nu3_floor=tolerances.nu3_floor)
    theta0 = float(grid.theta_nodes()[0])
    worst: Optional[FourierSpectrum] = None
    for s_value, row in zip(grid.s_nodes(), residual.cleared):
        if not np.all(np.isfinite(row)):
            continue
        spectrum = fourier_project(row, tolerances.modes, s=float(s_value), theta0=theta0)
        if worst is None or spectrum.max_abs() > worst.max_abs():
            worst = spectrum
    modes_ok = worst is None or worst.max_abs() <= tolerances.mode_tol
    return CertificateReport(
        surface_descriptor=surface.descriptor,
        energy_label=energy.label,
        lambda0=lambda0,
        grid=grid,
        field=residual,
        worst_slice=worst,
        tolerances=tolerances,
        passed=residual.max_abs_dev <= tolerances.lambda_tol and modes_ok,
    )

