"""
Module integrating the ODE of cyclic surfaces with horizontal circles.

The state y = (r, r', a, b) obeys

    a' = lambda r^2,  b' = mu r^2,  r'' = ((lambda^2 + mu^2) r^4 + r'^2) / r

for the Dirichlet energy (anisotropic mode), and

    r'' = (1 + (lambda r^2)^2 + (mu r^2)^2 + r'^2) / r

for the area (isotropic mode). Integration is classical fixed-step RK4.
"""

__author__ = "camc-kit developers"
__license__ = "MIT"

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from camckit.datatypes import FamilyKind, OdeMode
from camckit.errors import DegenerateRadius, DomainError, RadiusCollapse, StepTooLarge
from camckit.families import CyclicFamilyParams, RotationalProfile, family_profile

EPS_RADIUS = 1e-9
BLOW_UP = 1e8
CLASSIFY_TOL = 1e-8


@dataclass(frozen=True)
class CyclicOdeState:
    """One point (s, r, r', a, b) of a trajectory"""

    s: float
    r: float
    rp: float
    a: float
    b: float

    def as_array(self) -> np.ndarray:
        """The RK4 state vector (r, r', a, b)"""
        return np.array([self.r, self.rp, self.a, self.b])


@dataclass(frozen=True)
class OdeDerivative:
    """Right-hand side at a state"""

    rp: float
    rpp: float
    ap: float
    bp: float


@dataclass
class OdeTrajectory:
    """
    Accepted states of one integration, s strictly monotone.

    halt_reason is None when s_end was reached, "blow_up" when the guard
    stopped the integration early.
    """

    states: List[CyclicOdeState]
    step: float
    mode: OdeMode
    lam: float
    mu: float
    halt_reason: Optional[str] = None

    @property
    def final(self) -> CyclicOdeState:
        """Last accepted state"""
        return self.states[-1]

    def first_integrals(self) -> np.ndarray:
        """c1 at every accepted state"""
        return np.array(
            [first_integral(state, self.lam, self.mu, self.mode) for state in self.states]
        )

    def to_records(self) -> List[Tuple[float, ...]]:
        """Rows (s, r, rp, a, b, c1) of the trajectory dump"""
        return [
            (state.s, state.r, state.rp, state.a, state.b, float(c1))
            for state, c1 in zip(self.states, self.first_integrals())
        ]


def _field(y: np.ndarray, lam: float, mu: float, mode: OdeMode) -> np.ndarray:
    r, rp = y[0], y[1]
    r2 = r * r
    if mode is OdeMode.ANISOTROPIC:
        rpp = ((lam * lam + mu * mu) * r2 * r2 + rp * rp) / r
    else:
        rpp = (1.0 + (lam * r2) ** 2 + (mu * r2) ** 2 + rp * rp) / r
    return np.array([rp, rpp, lam * r2, mu * r2])


def rhs(
    state: CyclicOdeState, lam: float, mu: float, mode: OdeMode = OdeMode.ANISOTROPIC
) -> OdeDerivative:
    """Evaluates the right-hand side of the cyclic system."""
    if state.r <= 0:
        raise DegenerateRadius(f"r must be positive, got {state.r}")
    rp, rpp, ap, bp = (float(v) for v in _field(state.as_array(), lam, mu, mode))
    return OdeDerivative(rp=rp, rpp=rpp, ap=ap, bp=bp)


def rk4_step(y: np.ndarray, h: float, lam: float, mu: float, mode: OdeMode) -> np.ndarray:
    """
    Single step of the classical fourth order Runge-Kutta method.
    The system is autonomous, so no s is passed around.
    """
    k1 = _field(y, lam, mu, mode)
    k2 = _field(y + 0.5 * h * k1, lam, mu, mode)
    k3 = _field(y + 0.5 * h * k2, lam, mu, mode)
    k4 = _field(y + h * k3, lam, mu, mode)
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def first_integral(
    state: CyclicOdeState, lam: float, mu: float, mode: OdeMode = OdeMode.ANISOTROPIC
) -> float:
    """
    The conserved quantity c1 = (r'/r)^2 - (lambda^2 + mu^2) r^2 of the
    anisotropic system, (1 + r'^2)/r^2 - (lambda^2 + mu^2) r^2 of the
    isotropic one.
    """
    if state.r <= 0:
        raise DegenerateRadius(f"r must be positive, got {state.r}")
    r, rp = state.r, state.rp
    if mode is OdeMode.ANISOTROPIC:
        return (rp / r) ** 2 - (lam * lam + mu * mu) * r * r
    return (1.0 + rp * rp) / (r * r) - (lam * lam + mu * mu) * r * r


def _drift_scale(state: CyclicOdeState, lam: float, mu: float, mode: OdeMode) -> float:
    r, rp = state.r, state.rp
    scale = (rp / r) ** 2 + (lam * lam + mu * mu) * r * r
    if mode is OdeMode.ISOTROPIC:
        scale += 1.0 / (r * r)
    return max(1.0, scale)


def integrate(  # pylint: disable=too-many-arguments,too-many-locals
    initial: CyclicOdeState,
    lam: float,
    mu: float,
    mode: OdeMode = OdeMode.ANISOTROPIC,
    s_end: float = 1.0,
    step: float = 1e-3,
    drift_tol: Optional[float] = None,
) -> OdeTrajectory:
    """
    Integrates from initial to s_end with RK4.

    The step is shrunk so that a whole number of steps lands on s_end;
    s_end may lie below initial.s. A step that makes |r| or |r'| exceed
    BLOW_UP (or non-finite) is rejected and the trajectory halts with
    halt_reason "blow_up". A step landing at r <= EPS_RADIUS raises
    RadiusCollapse, carrying the accepted part of the trajectory.
    With drift_tol set, a single step changing c1 by more than drift_tol
    relative to the size of its terms raises StepTooLarge.
    """
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    if initial.r <= EPS_RADIUS:
        raise DegenerateRadius(f"Initial radius must be positive, got {initial.r}")

    span = s_end - initial.s
    nstep = int(math.ceil(abs(span) / step - 1e-9)) if span != 0 else 0
    trajectory = OdeTrajectory([initial], step=step, mode=mode, lam=lam, mu=mu)
    if nstep == 0:
        return trajectory
    nodes = np.linspace(initial.s, s_end, nstep + 1)
    h = span / nstep

    y = initial.as_array()
    for s_next in nodes[1:]:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            y_next = rk4_step(y, h, lam, mu, mode)
        if not np.all(np.isfinite(y_next)) or max(abs(y_next[0]), abs(y_next[1])) > BLOW_UP:
            trajectory.halt_reason = "blow_up"
            break
        state = CyclicOdeState(float(s_next), *(float(v) for v in y_next))
        if state.r <= EPS_RADIUS:
            raise RadiusCollapse(
                f"r = {state.r} at s = {state.s} is below {EPS_RADIUS}", trajectory
            )
        if drift_tol is not None:
            previous = trajectory.final
            change = abs(
                first_integral(state, lam, mu, mode) - first_integral(previous, lam, mu, mode)
            )
            if change > drift_tol * _drift_scale(previous, lam, mu, mode):
                raise StepTooLarge(
                    f"First integral moved by {change:.3e} in one step at s = {state.s}"
                )
        trajectory.states.append(state)
        y = y_next
    return trajectory


def classify_by_first_integral(c1: float, tolerance: float = CLASSIFY_TOL) -> FamilyKind:
    """Type I for c1 < 0, Type II for c1 = 0, Type III for c1 > 0."""
    if c1 < -tolerance:
        return FamilyKind.TYPE_I
    if c1 > tolerance:
        return FamilyKind.TYPE_III
    return FamilyKind.TYPE_II


def classify_trajectory(trajectory: OdeTrajectory) -> FamilyKind:
    """Classifies by the mean first integral with a tolerance scaled by
    (lambda^2 + mu^2) max r^2."""
    radius = max(state.r for state in trajectory.states)
    norm2 = trajectory.lam**2 + trajectory.mu**2
    tolerance = CLASSIFY_TOL * max(1.0, norm2 * radius * radius)
    return classify_by_first_integral(float(np.mean(trajectory.first_integrals())), tolerance)


def family_state(params: CyclicFamilyParams, s: float, shift: float = 0.0) -> CyclicOdeState:
    """The closed-form state of a family member translated up by shift,
    that is the profile evaluated at s - shift."""
    profile = family_profile(params, s - shift)
    return CyclicOdeState(s, profile.r, profile.rp, profile.a, profile.b)


def rotational_residual(profile: RotationalProfile, r: float) -> float:
    """u'' + u'/r - Lambda/2 of a rotational solution."""
    if r <= 0:
        raise DegenerateRadius(f"r must be positive, got {r}")
    return profile.d2u(r) + profile.du(r) / r - profile.lambda_camc / 2.0
