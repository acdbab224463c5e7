import math

import pytest
from hypothesis import given, strategies as st

from circumnav.geometry import UavState, Vec2, relative_geometry, tangent_cos, wrap_angle
from circumnav.controllers import predicted_radius

finite = st.floats(-1e3, 1e3, allow_nan=False)
angles = st.floats(-50.0, 50.0, allow_nan=False)


@pytest.mark.parametrize("a, expected", [
    (0.0, 0.0),
    (-math.pi / 2, 3 * math.pi / 2),
    (5 * math.pi, math.pi),
])
def test_wrap_angle_examples(a, expected):
    assert wrap_angle(a) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_wrap_angle_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        wrap_angle(bad)


@given(angles)
def test_wrap_angle_range_and_congruence(a):
    w = wrap_angle(a)
    assert 0.0 <= w < 2 * math.pi
    assert math.cos(w) == pytest.approx(math.cos(a), abs=1e-9)
    assert math.sin(w) == pytest.approx(math.sin(a), abs=1e-9)


def test_wrap_angle_tiny_negative_stays_below_two_pi():
    assert wrap_angle(-1e-18) < 2 * math.pi


def test_state_heading_is_wrapped():
    assert UavState.from_xy(0, 0, -math.pi / 2).psi == pytest.approx(3 * math.pi / 2)


def test_heading_at_target():
    g = relative_geometry(UavState.from_xy(0, 0, 0), Vec2(10, 0), 1.0)
    assert g.r == 10
    assert g.theta_b == 0
    assert g.r_dot == -1


def test_heading_perpendicular():
    g = relative_geometry(UavState.from_xy(0, 0, 0), Vec2(0, -10), 1.0)
    assert g.r == 10
    assert g.theta_b == pytest.approx(math.pi / 2, abs=1e-15)
    assert g.r_dot == pytest.approx(0.0, abs=1e-15)


def test_off_axis_matches_finite_difference():
    # frozen from a central difference of |target - p(t)| along the heading
    g = relative_geometry(UavState.from_xy(3, 4, 0), Vec2(0, 0), 1.0)
    assert g.r == 5
    assert g.theta_b == pytest.approx(2.214297435588181, abs=1e-12)
    assert g.r_dot == pytest.approx(0.5999999999062311, abs=1e-8)


def test_zero_range_is_an_error():
    with pytest.raises(ValueError):
        relative_geometry(UavState.from_xy(1, 2, 0), Vec2(1, 2), 1.0)


def test_speed_must_be_positive():
    with pytest.raises(ValueError):
        relative_geometry(UavState.from_xy(0, 0, 0), Vec2(1, 0), 0.0)


@given(finite, finite, angles, finite, finite, st.floats(0.1, 10.0))
def test_range_rate_matches_bearing_and_finite_difference(x, y, psi, tx, ty, V):
    if math.hypot(tx - x, ty - y) < 1.0:
        return
    g = relative_geometry(UavState.from_xy(x, y, psi), Vec2(tx, ty), V)
    assert abs(g.r_dot) <= V
    assert g.r_dot == pytest.approx(-V * math.cos(g.theta_b), abs=1e-12)
    h = 1e-5
    rp = math.hypot(tx - x - V * h * math.cos(psi), ty - y - V * h * math.sin(psi))
    rm = math.hypot(tx - x + V * h * math.cos(psi), ty - y + V * h * math.sin(psi))
    assert (rp - rm) / (2 * h) == pytest.approx(g.r_dot, abs=1e-5 * V)


@given(finite, finite, angles, finite, finite, finite, finite, angles)
def test_bearing_invariant_under_rigid_motion(x, y, psi, tx, ty, dx, dy, rot):
    if math.hypot(tx - x, ty - y) < 1.0:
        return
    base = relative_geometry(UavState.from_xy(x, y, psi), Vec2(tx, ty), 1.0)
    c, s = math.cos(rot), math.sin(rot)
    moved = relative_geometry(
        UavState.from_xy(c * x - s * y + dx, s * x + c * y + dy, psi + rot),
        Vec2(c * tx - s * ty + dx, s * tx + c * ty + dy), 1.0)
    diff = (moved.theta_b - base.theta_b + math.pi) % (2 * math.pi) - math.pi
    assert abs(diff) < 1e-9
    assert moved.r == pytest.approx(base.r, rel=1e-9)


def test_tangent_cos_on_circle_is_zero():
    assert tangent_cos(10, 10) == 0.0


def test_tangent_cos_matches_trig_form():
    assert tangent_cos(20, 10) == pytest.approx(math.cos(math.pi - math.asin(0.5)), abs=1e-12)
    assert tangent_cos(20, 10) == pytest.approx(-0.8660254, abs=1e-7)


def test_tangent_cos_at_equilibrium_radius():
    r_a = predicted_radius(10, 0.01)
    assert tangent_cos(r_a, 10) == pytest.approx(-0.4142136, abs=1e-6)
    assert tangent_cos(r_a, 10) == pytest.approx(math.cos(math.pi - math.asin(10 / r_a)), abs=1e-6)


def test_tangent_cos_inside_circle_is_error():
    with pytest.raises(ValueError):
        tangent_cos(9.0, 10.0)


@given(st.floats(0.1, 100.0), st.floats(1.0, 1e3))
def test_tangent_cos_pythagorean_identity(r_d, ratio):
    r = r_d * ratio
    c = tangent_cos(r, r_d)
    assert -1.0 <= c <= 0.0
    assert c * c + (r_d / r) ** 2 == pytest.approx(1.0, abs=1e-12)


@given(st.floats(1.0, 100.0), st.floats(1.0, 50.0), st.floats(1.0, 50.0))
def test_tangent_cos_monotone(r_d, a, b):
    lo, hi = sorted((a, b))
    assert tangent_cos(r_d * hi, r_d) <= tangent_cos(r_d * lo, r_d)
