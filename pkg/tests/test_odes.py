"""Tests the cyclic ODE integrator and the first integral"""

import math
from unittest import mock

import numpy as np
import pytest

from camckit.datatypes import FamilyKind, OdeMode
from camckit.errors import DegenerateRadius, DomainError, RadiusCollapse, StepTooLarge
from camckit.families import CyclicFamilyParams, family_profile
from camckit.odes import (
    CyclicOdeState,
    classify_by_first_integral,
    classify_trajectory,
    family_state,
    first_integral,
    integrate,
    rhs,
)

TYPE_I = CyclicFamilyParams(FamilyKind.TYPE_I, 2.0, 0.0, 1.0)
TYPE_II = CyclicFamilyParams(FamilyKind.TYPE_II, 1.0, 0.0, 1.0)
TYPE_III = CyclicFamilyParams(FamilyKind.TYPE_III, 1.0, 0.0, 1.0)


def test_rhs_matches_profile() -> None:
    """Tests the right-hand side on a closed-form Type I state"""
    params = CyclicFamilyParams(FamilyKind.TYPE_I, 0.6, 0.8, 1.0)
    profile = family_profile(params, 0.5)
    derivative = rhs(family_state(params, 0.5), params.lam, params.mu)
    assert derivative.rp == pytest.approx(profile.rp)
    assert derivative.rpp == pytest.approx(profile.rpp)
    assert derivative.ap == pytest.approx(profile.ap)
    assert derivative.bp == pytest.approx(profile.bp)


def test_rhs_degenerate_radius() -> None:
    """Tests that a non-positive radius is refused"""
    with pytest.raises(DegenerateRadius):
        rhs(CyclicOdeState(0.0, 0.0, 1.0, 0.0, 0.0), 1.0, 0.0)
    with pytest.raises(DegenerateRadius):
        integrate(CyclicOdeState(0.0, 1e-12, 0.0, 0.0, 0.0), 1.0, 0.0)


def test_first_integral_signs() -> None:
    """Tests c1 = -c^2, 0 and c^2 on the three types"""
    assert first_integral(family_state(TYPE_I, 0.7), 2.0, 0.0) == pytest.approx(-1.0)
    assert first_integral(family_state(TYPE_II, 0.7), 1.0, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert first_integral(family_state(TYPE_III, 0.7), 1.0, 0.0) == pytest.approx(1.0)
    assert classify_by_first_integral(-1.0) is FamilyKind.TYPE_I
    assert classify_by_first_integral(1e-12) is FamilyKind.TYPE_II
    assert classify_by_first_integral(0.5) is FamilyKind.TYPE_III


def test_integrate_reproduces_type1() -> None:
    """Tests RK4 against the closed form, forwards and backwards"""
    for s_end in (1.0, -1.0):
        trajectory = integrate(family_state(TYPE_I, 0.0), 2.0, 0.0, s_end=s_end, step=1e-3)
        exact = family_profile(TYPE_I, s_end)
        assert trajectory.halt_reason is None
        assert trajectory.final.s == s_end
        assert trajectory.final.r == pytest.approx(exact.r, rel=1e-8)
        assert trajectory.final.a == pytest.approx(exact.a, rel=1e-8)
        drift = np.ptp(trajectory.first_integrals())
        assert drift < 1e-8


def test_integrate_classifies() -> None:
    """Tests that integrated trajectories are classified by their first integral"""
    cases = [(TYPE_I, 0.0, 1.0), (TYPE_II, 0.0, 2.0), (TYPE_III, 0.5, 2.0)]
    for params, s0, s_end in cases:
        trajectory = integrate(family_state(params, s0), params.lam, 0.0, s_end=s_end, step=1e-3)
        assert classify_trajectory(trajectory) is params.kind


def test_shifted_family_state() -> None:
    """Tests that a shifted member starts on the translated profile"""
    state = family_state(TYPE_III, 2.0, shift=1.0)
    profile = family_profile(TYPE_III, 1.0)
    assert state.s == 2.0
    assert state.r == pytest.approx(profile.r)
    trajectory = integrate(state, 1.0, 0.0, s_end=3.0, step=1e-3)
    assert trajectory.final.r == pytest.approx(family_profile(TYPE_III, 2.0).r, rel=1e-8)


def test_fourth_order_convergence() -> None:
    """Tests that halving the step divides the error by about 16"""
    initial = family_state(TYPE_III, 0.5)
    exact = family_profile(TYPE_III, 1.5).r
    errors = [
        abs(integrate(initial, 1.0, 0.0, s_end=1.5, step=step).final.r - exact)
        for step in (0.04, 0.02)
    ]
    assert 12.0 <= errors[0] / errors[1] <= 20.0


def test_catenoid_isotropic() -> None:
    """Tests that the area ODE with lambda = mu = 0 gives the catenoid"""
    trajectory = integrate(
        CyclicOdeState(0.0, 1.0, 0.0, 0.0, 0.0), 0.0, 0.0, OdeMode.ISOTROPIC, s_end=1.0, step=1e-2
    )
    assert trajectory.final.r == pytest.approx(math.cosh(1.0), rel=1e-8)
    np.testing.assert_allclose(trajectory.first_integrals(), 1.0, rtol=1e-8)


def test_blow_up_halts() -> None:
    """Tests that Type I stops at its finite end with halt_reason blow_up"""
    trajectory = integrate(
        family_state(TYPE_I, 0.0), 2.0, 0.0, s_end=math.pi / 2 + 0.5, step=1e-3
    )
    assert trajectory.halt_reason == "blow_up"
    assert trajectory.final.s <= math.pi / 2 + 0.01
    assert all(state.r > 0 for state in trajectory.states)


def test_radius_collapse_keeps_trajectory() -> None:
    """Tests that a step landing at r = 0 raises with the accepted part"""
    collapsed = np.array([0.0, -1.0, 0.0, 0.0])
    with mock.patch("camckit.odes.rk4_step", return_value=collapsed):
        with pytest.raises(RadiusCollapse) as info:
            integrate(CyclicOdeState(0.0, 1.0, -1.0, 0.0, 0.0), 1.0, 0.0, s_end=1.0, step=0.1)
    assert len(info.value.trajectory.states) == 1


def test_step_too_large() -> None:
    """Tests the per-step drift guard"""
    initial = family_state(TYPE_I, 0.0)
    with pytest.raises(StepTooLarge):
        integrate(initial, 2.0, 0.0, s_end=1.2, step=0.2, drift_tol=1e-14)
    trajectory = integrate(initial, 2.0, 0.0, s_end=1.0, step=1e-3, drift_tol=1e-6)
    assert trajectory.halt_reason is None


def test_invalid_step() -> None:
    """Tests that a non-positive step is refused"""
    with pytest.raises(DomainError):
        integrate(family_state(TYPE_I, 0.0), 2.0, 0.0, step=0.0)


def test_records() -> None:
    """Tests the rows of a trajectory dump"""
    trajectory = integrate(family_state(TYPE_II, 0.0), 1.0, 0.0, s_end=0.5, step=0.1)
    records = trajectory.to_records()
    assert len(records) == 6
    assert [row[0] for row in records] == pytest.approx([0.0, 0.1, 0.2, 0.3, 0.4, 0.5])
    assert all(len(row) == 6 for row in records)
