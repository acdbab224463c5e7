import inspect
import math

import pytest
from hypothesis import assume, given, strategies as st

from circumnav import controllers
from circumnav.controllers import (ControllerParams, GainVerdict, InvalidGainError, Law,
                                   RangeObservation, command, compensated_rd, gain_bound,
                                   predicted_radius, signum_omega, smooth_omega,
                                   validate_gain)

from oracles import bisect_radius

SMOOTH = ControllerParams(k=0.01, r_d=10.0, V=1.0, law=Law.SMOOTH)
SIGNUM = ControllerParams(k=0.12, r_d=10.0, V=1.0, law=Law.SIGNUM)


def valid_smooth_params():
    return st.tuples(st.floats(1.0, 100.0), st.floats(1.01, 50.0)).map(
        lambda t: (t[0], t[1] / (2 * t[0] ** 2)))


def test_params_validation():
    with pytest.raises(InvalidGainError):
        ControllerParams(k=0.0, r_d=10, V=1)
    with pytest.raises(ValueError):
        ControllerParams(k=0.1, r_d=-1, V=1)
    with pytest.raises(ValueError):
        ControllerParams(k=0.1, r_d=1, V=0)
    assert ControllerParams(k=0.1, r_d=1, V=1, law="signum").law is Law.SIGNUM


def test_smooth_inside_circle_is_zero():
    assert smooth_omega(RangeObservation(5.0, 0.3), SMOOTH) == 0.0


def test_smooth_on_circle():
    assert smooth_omega(RangeObservation(10.0, 0.5), SMOOTH) == pytest.approx(-0.1, abs=1e-15)


def test_smooth_at_equilibrium_radius_matches_orbit_rate():
    r_a = 10.9868
    w = smooth_omega(RangeObservation(r_a, 0.0), SMOOTH)
    assert w == pytest.approx(-0.09102, abs=1e-4)
    assert w == pytest.approx(-1.0 / r_a, abs=1e-4)


def test_signum_examples():
    assert signum_omega(RangeObservation(5.0, 0.0), SIGNUM) == 0.0
    assert signum_omega(RangeObservation(20.0, 0.0), SIGNUM) == -0.12
    # argument exactly zero: on the circle with zero range rate
    assert signum_omega(RangeObservation(10.0, 0.0), SIGNUM) == 0.0


def test_law_mismatch_rejected():
    with pytest.raises(ValueError):
        smooth_omega(RangeObservation(20, 0), SIGNUM)
    with pytest.raises(ValueError):
        signum_omega(RangeObservation(20, 0), SMOOTH)
    assert command(RangeObservation(20, 0), SIGNUM) == -0.12


def test_laws_only_see_range_and_rate():
    for fn in (smooth_omega, signum_omega, command):
        params = list(inspect.signature(fn).parameters)
        assert params == ["obs", "p"]
    assert {f for f in RangeObservation.__dataclass_fields__} == {"r", "r_dot"}
    src = inspect.getsource(controllers)
    assert "UavState" not in src and "theta_b" not in src


@given(st.floats(0.1, 100), st.floats(-5, 5), st.floats(-2, 2).filter(lambda k: abs(k) > 1e-6),
       st.floats(1, 50), st.floats(0.1, 5))
def test_signum_is_saturated(r, rdot, k, r_d, V):
    p = ControllerParams(k=k, r_d=r_d, V=V, law=Law.SIGNUM)
    assert abs(signum_omega(RangeObservation(r, rdot), p)) <= abs(k)


@given(valid_smooth_params())
def test_equilibrium_consistency(rk):
    r_d, k = rk
    for kk, sign in ((k, -1), (-k, 1)):
        r_a = predicted_radius(r_d, kk)
        p = ControllerParams(k=kk, r_d=r_d, V=1.0)
        w = smooth_omega(RangeObservation(r_a, 0.0), p)
        assert abs(w) == pytest.approx(1.0 / r_a, rel=1e-8)
        assert math.copysign(1, w) == sign


def test_predicted_radius_examples():
    assert predicted_radius(10, 0.01) == pytest.approx(10.9868, abs=5e-5)
    assert predicted_radius(10, 1e6) == pytest.approx(10.0, rel=1e-12)
    assert predicted_radius(1, 1) == pytest.approx(1.09868, abs=5e-6)
    assert predicted_radius(1, 1) == pytest.approx(bisect_radius(1, 1), rel=1e-12)
    with pytest.raises(InvalidGainError):
        predicted_radius(10, 0)


@given(st.floats(0.5, 200), st.floats(1e-4, 1e3))
def test_predicted_radius_fixed_point(r_d, k):
    r_a = predicted_radius(r_d, k)
    assert r_a >= r_d
    lhs = 1 / (4 * k * k)
    rhs = r_a ** 4 * (1 - (r_d / r_a) ** 2)
    # the residual is a difference of O(r_a^4) quantities
    assert rhs == pytest.approx(lhs, rel=1e-10, abs=1e-13 * r_a ** 4)


def test_compensated_examples():
    assert compensated_rd(10, 0.01) == pytest.approx(8.6602540, abs=1e-7)
    assert predicted_radius(8.6602540378, 0.01) == pytest.approx(10.0, abs=1e-6)
    assert compensated_rd(1, 1) == pytest.approx(0.8660254, abs=1e-7)
    with pytest.raises(InvalidGainError):
        compensated_rd(10, 0.005)


@given(valid_smooth_params())
def test_compensation_round_trip(rk):
    r_d, k = rk
    rt = compensated_rd(r_d, k)
    assert 0 < rt < r_d
    assert predicted_radius(rt, k) == pytest.approx(r_d, rel=1e-10)


@pytest.mark.parametrize("p, verdict", [
    (SMOOTH, GainVerdict.VALID),
    (SIGNUM, GainVerdict.VALID),
    (ControllerParams(k=0.005, r_d=10, V=1), GainVerdict.BELOW_THEOREM_BOUND),
    (ControllerParams(k=-0.01, r_d=10, V=1), GainVerdict.VALID),
    (ControllerParams(k=0.1, r_d=10, V=1, law=Law.SIGNUM), GainVerdict.BELOW_THEOREM_BOUND),
])
def test_validate_gain(p, verdict):
    assert validate_gain(p) is verdict


def test_gain_bounds():
    assert gain_bound(Law.SMOOTH, 10, 1) == 0.005
    assert gain_bound(Law.SIGNUM, 10, 1) == 0.1
