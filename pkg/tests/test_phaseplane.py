from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from radshock.errors import DegenerateP0, RegionViolation
from radshock.gasdynamics import RadiationParams
from radshock.phaseplane import (
    DEFAULT_TOL,
    classify_p0,
    connect,
    fast_exit,
    integrate_branch,
    match_branches,
    saddle_linearization,
)
from radshock.reduction import classify, reduce_hamer

from conftest import hamer_linear, radhydro

GOLDEN = (1 + math.sqrt(5)) / 2


def test_saddle_slopes_for_linear_hamer():
    rs = hamer_linear(2.0)
    sm, sp = saddle_linearization(rs, "minus"), saddle_linearization(rs, "plus")
    assert sm.branch_tangent_slope == pytest.approx(GOLDEN, rel=1e-14)
    assert sp.branch_tangent_slope == pytest.approx(GOLDEN, rel=1e-14)
    assert sm.point == (-1.0, -1.0) and sp.point == (1.0, 1.0)


@pytest.mark.parametrize("which", ["minus", "plus"])
@pytest.mark.parametrize("case", [(0.6, 10.0), (1.0, 100.0), (0.3, 2.0), (1.1, 7.0)])
def test_saddle_jacobian(which, case):
    rs = radhydro(*case)
    sd = saddle_linearization(rs, which)
    assert np.linalg.det(sd.jacobian) == pytest.approx(-1.0, abs=1e-12)
    lam = np.sort(np.linalg.eigvals(sd.jacobian).real)
    assert lam[0] < 0 < lam[1]
    assert sorted(sd.eigenvalues) == pytest.approx(list(lam), rel=1e-12)
    # the tangent is an eigenvector of the jacobian
    v = np.array([1.0, sd.branch_tangent_slope])
    w = sd.jacobian @ v
    assert w[1] / w[0] == pytest.approx(sd.branch_tangent_slope, rel=1e-12)


def test_p0_kinds():
    assert classify_p0(hamer_linear(2.0)).kind == "repulsive-spiral"
    src = classify_p0(hamer_linear(1.0))
    assert src.kind == "source"
    assert src.discriminant == pytest.approx(0.5, rel=1e-14)
    rs = radhydro(0.6, 50.0)
    p0 = classify_p0(rs)
    assert p0.kind == "source"
    assert 2 * rs.nu**2 == pytest.approx(0.55773, abs=1e-5)
    with pytest.raises(DegenerateP0):
        classify_p0(hamer_linear(math.sqrt(2.0)))


def test_branches_reach_p0_in_the_continuous_linear_case():
    rs = hamer_linear(1.0)
    for side in ("minus", "plus"):
        b = integrate_branch(rs, side)
        assert b.reaches_p0
        assert abs(b.value_at_zero) < 10 * DEFAULT_TOL
        assert b.monotone


def test_branches_miss_p0_in_the_jump_linear_case():
    rs = hamer_linear(2.0)
    bm, bp = integrate_branch(rs, "minus"), integrate_branch(rs, "plus")
    assert not bm.reaches_p0 and not bp.reaches_p0
    assert bm.value_at_zero == pytest.approx(0.0322775753639, abs=1e-9)
    assert bp.value_at_zero == pytest.approx(-0.0322775753639, abs=1e-9)


@pytest.mark.parametrize("case", [(0.6, 10.0), (1.0, 50.0), (0.3, 10.0)])
def test_branch_region_and_monotonicity(case):
    rs = radhydro(*case)
    for side, sign in (("minus", 1.0), ("plus", -1.0)):
        b = integrate_branch(rs, side)
        G = np.array([rs.G(x) for x in b.x])
        assert np.all(sign * (b.y - G) > 0)
        assert np.all(np.diff(b.x) > 0) and np.all(np.diff(b.y) > 0)


def test_odd_symmetry_of_branches():
    rs = hamer_linear(2.0)
    bm, bp = integrate_branch(rs, "minus"), integrate_branch(rs, "plus")
    xs = np.linspace(1e-3, 0.999, 400)
    assert max(abs(bp.phi(x) + bm.phi(-x)) for x in xs) < 10 * DEFAULT_TOL


@pytest.mark.parametrize("case", [(0.6, 10.0), (1.0, 50.0), (0.6, 50.0)])
def test_offset_halving_is_harmless(case):
    rs = radhydro(*case)
    for side in ("minus", "plus"):
        a = integrate_branch(rs, side, offset=1e-6).value_at_zero
        b = integrate_branch(rs, side, offset=5e-7).value_at_zero
        assert abs(a - b) < 1e-8


def test_region_violation_on_coarse_tolerance_is_reported_not_hidden():
    rs = radhydro(0.6, 10.0)
    try:
        integrate_branch(rs, "minus", tol=1e-3)
    except RegionViolation:
        pass


def test_linear_jump_is_symmetric():
    orbit = connect(hamer_linear(2.0), n_samples=400)
    c = orbit.connection
    assert c.kind == "jump"
    assert abs(c.y_c) < 1e-10
    assert abs(c.x_left + c.x_right) < 1e-10


@pytest.mark.parametrize("case", [(1.0, 10.0), (1.0, 50.0), (1.0, 100.0), (0.6, 10.0), (0.9, 3.0)])
def test_jump_records(case):
    orbit = connect(radhydro(*case), n_samples=400)
    c = orbit.connection
    assert c.kind == "jump"
    assert -1.0 < c.x_left < 0.0 < c.x_right < 1.0
    assert abs(c.x_left + c.x_right) < 1e-10
    k = orbit.split
    assert orbit.zeta[k - 1] == orbit.zeta[k] == 0.0
    assert orbit.x[k - 1] == c.x_left and orbit.x[k] == c.x_right
    assert orbit.y[k - 1] == orbit.y[k] == c.y_c


@pytest.mark.parametrize("Uc", [50.0, 100.0])
def test_continuous_cases(Uc):
    orbit = connect(radhydro(0.6, Uc), n_samples=400)
    assert orbit.connection.kind == "continuous"


def test_jump_whenever_classifier_predicts_one():
    for delta in (0.3, 0.5, 0.7, 0.85, 1.0, 1.15):
        for Uc in (3.0, 10.0, 30.0, 100.0):
            rs = radhydro(delta, Uc)
            if classify(rs).jump_predicted:
                assert connect(rs, n_samples=400).connection.kind == "jump"


@pytest.mark.parametrize("case", [(0.6, 10.0), (1.0, 100.0), (0.6, 100.0)])
def test_x_increases_along_the_orbit(case):
    orbit = connect(radhydro(*case), n_samples=400)
    assert np.all(np.diff(orbit.zeta) >= 0)
    for sl in (slice(0, orbit.split), slice(orbit.split, None)) if orbit.is_jump else (slice(None),):
        assert np.all(np.diff(orbit.x[sl]) > 0)
    assert orbit.x[0] + 1.0 < 1e-6 and 1.0 - orbit.x[-1] < 1e-6


@pytest.mark.parametrize("case", [(0.6, 10.0), (1.0, 50.0), (0.6, 100.0)])
def test_tails_decay_at_the_saddle_rate(case):
    rs = radhydro(*case)
    orbit = connect(rs, n_samples=400)
    sm, sp = saddle_linearization(rs, "minus"), saddle_linearization(rs, "plus")
    lam_m, lam_p = sm.branch_eigenvalue, sp.branch_eigenvalue
    # unstable rate out of P- and stable rate into P+
    assert lam_m == pytest.approx(max(sm.eigenvalues), rel=1e-12)
    assert lam_p == pytest.approx(min(sp.eigenvalues), rel=1e-12)
    left = (orbit.x + 1.0 < 1e-4) & (orbit.x + 1.0 > 1e-7)
    right = (1.0 - orbit.x < 1e-4) & (1.0 - orbit.x > 1e-7)
    slope_m = np.polyfit(orbit.zeta[left], np.log(orbit.x[left] + 1.0), 1)[0]
    slope_p = np.polyfit(orbit.zeta[right], np.log(1.0 - orbit.x[right]), 1)[0]
    assert slope_m == pytest.approx(lam_m, rel=0.05)
    assert slope_p == pytest.approx(lam_p, rel=0.05)


def _oracle_curve(rs, which, n_starts=5):
    """Manifold of a saddle traced in the planar field from points on its eigendirection."""
    sd = saddle_linearization(rs, which)
    sgn = -1.0 if which == "minus" else 1.0
    nu, G = rs.nu, rs.G

    def field(t, p):
        x, y = p
        return [(G(x) - y) / (nu * x), 0.5 * nu * (1 - x * x)]

    def near_axis(t, p):
        return abs(p[0]) - 1e-4

    near_axis.terminal = True
    curves = []
    for eps in np.geomspace(1e-7, 1e-5, n_starts):
        start = [sgn - sgn * eps, sgn - sgn * eps * sd.branch_tangent_slope]
        t_end = 200.0 if which == "minus" else -200.0
        sol = solve_ivp(field, (0.0, t_end), start, rtol=1e-11, atol=1e-13, events=near_axis,
                        max_step=0.05)
        x, y = sol.y
        order = np.argsort(x)
        curves.append((x[order], y[order]))
    return curves


def _oracle_yc(rs):
    minus = _oracle_curve(rs, "minus")
    plus = _oracle_curve(rs, "plus")
    out = []
    for (xm, ym), (xp, yp) in zip(minus, plus):
        # h(y) = psi+(y) + psi-(y) on the common y-range, both curves monotone in y
        ys = np.linspace(max(ym[0], yp[0]), min(ym[-1], yp[-1]), 200001)
        h = np.interp(ys, yp, xp) + np.interp(ys, ym, xm)
        i = int(np.flatnonzero(np.diff(np.sign(h)) != 0)[0])
        out.append(float(ys[i] - h[i] * (ys[i + 1] - ys[i]) / (h[i + 1] - h[i])))
    return out


def test_brute_force_oracle_agrees_on_the_jump():
    rng = np.random.default_rng(20240601)
    for _ in range(10):
        delta = float(rng.uniform(0.85, 1.15))
        Uc = float(rng.uniform(5.0, 60.0))
        rs = radhydro(delta, Uc)
        orbit = connect(rs, n_samples=400)
        assert orbit.connection.kind == "jump"
        ys = _oracle_yc(rs)
        assert min(ys) - 1e-4 <= orbit.connection.y_c <= max(ys) + 1e-4
        assert max(abs(y - orbit.connection.y_c) for y in ys) < 1e-4


LADDER_JUMP = (100.0, 50.0, 30.0, 20.0, 10.0)       # nu increasing
LADDER_NODE = (500.0, 300.0, 200.0, 150.0, 100.0)   # nu increasing, P0 a node


def test_fast_trajectory_exit_moves_toward_the_axis_as_nu_grows():
    systems = [radhydro(1.0, Uc) for Uc in LADDER_NODE]
    nus = [rs.nu for rs in systems]
    assert all(a < b for a, b in zip(nus, nus[1:]))
    exits = [fast_exit(rs) for rs in systems]
    assert all(a >= b for a, b in zip(exits, exits[1:]))
    assert exits[0] > exits[-1]


def test_fast_exit_reaches_the_saddle_side_for_small_nu():
    assert fast_exit(radhydro(0.6, 100.0)) == 1.0
    with pytest.raises(DegenerateP0):
        fast_exit(radhydro(1.0, 10.0))


def test_jump_point_is_monotone_along_the_nu_ladder():
    systems = [radhydro(1.0, Uc) for Uc in LADDER_JUMP]
    x_right = [connect(rs, n_samples=400).connection.x_right for rs in systems]
    assert all(a < b for a, b in zip(x_right, x_right[1:]))


def test_reference_connection_values():
    for Uc, xr in ((10.0, 0.85332), (50.0, 0.37949), (100.0, 0.25586)):
        c = connect(radhydro(1.0, Uc), n_samples=400).connection
        assert c.x_right == pytest.approx(xr, abs=1e-5)
    assert connect(radhydro(0.6, 10.0), n_samples=400).connection.x_right == pytest.approx(0.61360, abs=1e-5)


def test_quadratic_hamer_connection():
    rs = reduce_hamer(3.0, 1.0, 1.0, 2)
    orbit = connect(rs, n_samples=400)
    assert orbit.connection.kind == ("jump" if classify(rs).jump_predicted else orbit.connection.kind)
    assert np.all(np.diff(orbit.zeta) >= 0)


def test_tau_changes_nu_only():
    a = radhydro(0.6, 10.0)
    b = radhydro(0.6, 10.0, rad=RadiationParams(tau=2.0))
    assert b.nu == pytest.approx(a.nu / 2, rel=1e-14)
    assert b.G(0.3) == a.G(0.3)
