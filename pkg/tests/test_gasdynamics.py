from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radshock.errors import InadmissibleDelta, InadmissibleShock, NonPositiveInput, NonPositiveU
from radshock.gasdynamics import (
    GasParams,
    build_shock,
    check_entropy,
    f_of_U,
    p_of_U,
    rho_of_U,
    shock_from_states,
    theta_of_x,
)

GAS = GasParams(5.0 / 3.0, 8.31)


@pytest.fixture
def base():
    return build_shock(GAS, 0.1, 10.0, 0.6)


def test_reference_state(base):
    s = base
    assert s.U_minus == pytest.approx(13.0, rel=1e-14)
    assert s.U_plus == pytest.approx(7.0, rel=1e-14)
    assert s.A == pytest.approx(1.3, rel=1e-14)
    assert s.kappa == pytest.approx(2.6, rel=1e-14)
    assert s.B == pytest.approx(20.8, rel=1e-14)
    assert s.C == pytest.approx(236.6, rel=1e-14)
    assert s.theta_minus == pytest.approx(65 / 13.85, rel=1e-13)
    assert s.theta_plus == pytest.approx(105 / 13.85, rel=1e-13)
    assert s.rho_plus == pytest.approx(1.3 / 7.0, rel=1e-14)
    assert s.jump_u == pytest.approx(-6.0, rel=1e-14)


def test_flux_functions(base):
    s = base
    assert f_of_U(s, 10.0) == pytest.approx(23.4, rel=1e-14)
    assert f_of_U(s, s.U_plus) == 0.0 and f_of_U(s, s.U_minus) == 0.0
    assert rho_of_U(s, 13.0) == pytest.approx(0.1, rel=1e-14)
    assert p_of_U(s, 7.0) == pytest.approx(s.B - s.A * 7.0, rel=1e-14)
    with pytest.raises(NonPositiveU):
        rho_of_U(s, 0.0)


def test_temperature_along_x(base):
    s = base
    assert theta_of_x(s, 0.0) == pytest.approx(100 / 13.85, rel=1e-13)
    assert theta_of_x(s, -1.0) == pytest.approx(s.theta_minus, rel=1e-12)
    assert theta_of_x(s, 1.0) == pytest.approx(s.theta_plus, rel=1e-12)
    assert s.x_c == pytest.approx(2.0 / 3.0, rel=1e-14)
    assert theta_of_x(s, s.x_c) == pytest.approx(64 / 8.31, rel=1e-13)
    xs = np.linspace(-1, 1, 2001)
    assert xs[np.argmax(theta_of_x(s, xs))] == pytest.approx(s.x_c, abs=1e-3)


def test_entropy_inequalities(base):
    rep = check_entropy(base)
    assert rep.ok
    gR = 5.0 / 3.0 * 8.31
    assert math.sqrt(gR * base.theta_minus) == pytest.approx(math.sqrt(65), rel=1e-13)
    assert math.sqrt(gR * base.theta_plus) == pytest.approx(math.sqrt(105), rel=1e-13)


def test_input_validation():
    with pytest.raises(InadmissibleDelta):
        build_shock(GAS, 0.1, 10.0, 1.3)
    with pytest.raises(InadmissibleDelta):
        build_shock(GAS, 0.1, 10.0, 0.0)
    with pytest.raises(NonPositiveInput):
        build_shock(GAS, -0.1, 10.0, 0.5)
    with pytest.raises(NonPositiveInput):
        build_shock(GAS, 0.1, 0.0, 0.5)
    with pytest.raises(NonPositiveInput):
        GasParams(1.0, 8.31)


def test_weak_shock_end_states_coalesce():
    s = build_shock(GAS, 0.1, 10.0, 1e-9)
    assert abs(s.theta_plus - s.theta_minus) < 1e-7
    assert abs(s.rho_plus - s.rho_minus) < 1e-9


def test_upstream_temperature_vanishes_at_the_upper_delta_limit():
    # gamma R theta- = U_c^2 (1 + delta/2)(1 - gamma delta/2) closes at delta = 2/gamma
    s = build_shock(GAS, 0.1, 10.0, 1.2 * (1 - 1e-12))
    assert 0.0 < s.theta_minus < 1e-9
    assert check_entropy(s).upstream_supersonic


def test_raw_states_round_trip(base):
    s = base
    t = shock_from_states(GAS, s.rho_minus, s.u_minus + 2.0, s.theta_minus,
                          s.rho_plus, s.u_plus + 2.0, s.theta_plus, c=2.0)
    assert t.delta == pytest.approx(0.6, rel=1e-12)
    with pytest.raises(InadmissibleShock):
        shock_from_states(GAS, s.rho_minus, s.u_minus, s.theta_minus,
                          s.rho_plus, s.u_plus, 1.01 * s.theta_plus, c=0.0)


def _fluxes(gas, rho, U, theta):
    p = gas.R * rho * theta
    e = gas.R * theta / (gas.gamma - 1.0)
    return rho * U, rho * U * U + p, rho * U * (0.5 * U * U + e) + p * U


admissible = st.tuples(
    st.floats(1.01, 3.0),      # gamma
    st.floats(0.1, 100.0),     # R
    st.floats(1e-3, 10.0),     # rho_minus
    st.floats(0.1, 1e3),       # U_c
    st.floats(0.01, 0.99),     # fraction of 2/gamma
    st.floats(-50.0, 50.0),    # c
)


@settings(max_examples=1000, deadline=None)
@given(admissible)
def test_rankine_hugoniot_fluxes_match(params):
    gamma, R, rho, Uc, frac, c = params
    gas = GasParams(gamma, R)
    s = build_shock(gas, rho, Uc, frac * 2.0 / gamma, c)
    fm = _fluxes(gas, s.rho_minus, s.U_minus, s.theta_minus)
    fp = _fluxes(gas, s.rho_plus, s.U_plus, s.theta_plus)
    for a, b, ref in zip(fm, fp, (s.A, s.B, s.C)):
        assert abs(a - b) <= 1e-10 * abs(a)
        assert abs(a - ref) <= 1e-10 * abs(a)
    assert check_entropy(s).ok
    assert s.theta_plus > s.theta_minus and s.rho_plus > s.rho_minus
    jump_theta = (gamma - 1) / (gamma * R) * s.jump_u**2 / s.delta
    assert abs((s.theta_plus - s.theta_minus) - jump_theta) <= 1e-10 * jump_theta
    # gamma R theta-+ = (U_c -+ [u]/2)(U_c +- gamma [u]/2)
    ju = s.jump_u
    assert gamma * R * s.theta_minus == pytest.approx((Uc - ju / 2) * (Uc + gamma * ju / 2), rel=1e-12)
    assert gamma * R * s.theta_plus == pytest.approx((Uc + ju / 2) * (Uc - gamma * ju / 2), rel=1e-12)
