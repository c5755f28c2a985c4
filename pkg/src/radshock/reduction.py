"""Planar reduction ``(nu, G)`` and closed-form regime classification.

Both the radiating Euler system and the Hamer model with Burgers flux
reduce to

    dx/dzeta = (G(x) - y) / (nu x),    dy/dzeta = nu (1 - x^2) / 2

with saddles at (-1, -1) and (1, 1). Everything in this module is closed
form; no ODE is integrated here.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

from .errors import DegenerateCoupling, HypothesisGViolated, InadmissibleShock, NonPositiveInput
from .gasdynamics import (
    RadiationParams,
    ShockData,
    dg_dtheta,
    dtheta_dx,
    g_of_theta,
    theta_of_x,
)

__all__ = [
    "HamerParams",
    "ReducedSystem",
    "RegimeReport",
    "reduce_radhydro",
    "reduce_hamer",
    "classify",
    "spiral_condition_sides",
    "linear_spiral_threshold",
    "limit_G",
    "BOUNDARY_TOL",
]

BOUNDARY_TOL = 1e-12

RADHYDRO = "RadHydro"
HAMER_LINEAR = "HamerLinear"
HAMER_QUADRATIC = "HamerQuadratic"
HAMER_POWER = "HamerPower"


@dataclass(frozen=True)
class HamerParams:
    u_minus: float
    u_plus: float
    sigma: float
    alpha: int

    @property
    def c(self) -> float:
        return 0.5 * (self.u_minus + self.u_plus)

    @property
    def jump_u(self) -> float:
        return self.u_plus - self.u_minus

    def g(self, u):
        return self.sigma * u**self.alpha

    def dg(self, u):
        return self.sigma * self.alpha * u ** (self.alpha - 1)


@dataclass(frozen=True)
class ReducedSystem:
    nu: float
    G: Callable[[float], float]
    G_prime: Callable[[float], float]
    model: str
    g_bracket: float
    shock: ShockData | None = None
    radiation: RadiationParams | None = None
    hamer: HamerParams | None = None

    @property
    def is_radhydro(self) -> bool:
        return self.model == RADHYDRO

    def G_second(self, x: float, h: float = 1e-5) -> float:
        return (self.G_prime(x + h) - self.G_prime(x - h)) / (2.0 * h)


def reduce_radhydro(s: ShockData, r: RadiationParams) -> ReducedSystem:
    g_minus = g_of_theta(r, theta_of_x(s, -1.0))
    g_plus = g_of_theta(r, theta_of_x(s, 1.0))
    g_bracket = g_plus - g_minus
    if not g_bracket > 1e-14 * max(g_minus, g_plus):
        raise DegenerateCoupling(f"[g] = {g_bracket!r} is too small relative to g(theta+-)")
    nu = s.kappa * r.sigma_s * s.jump_u**2 / (r.tau * g_bracket)

    # G(-1) = -1 and G(1) = 1 hold exactly in this form
    def G(x):
        return -1.0 + 2.0 * (g_of_theta(r, theta_of_x(s, x)) - g_minus) / g_bracket

    def G_prime(x):
        return 2.0 * dg_dtheta(r, theta_of_x(s, x)) * dtheta_dx(s, x) / g_bracket

    return ReducedSystem(nu, G, G_prime, RADHYDRO, g_bracket, shock=s, radiation=r)


def reduce_hamer(u_minus: float, u_plus: float, sigma: float, alpha: int) -> ReducedSystem:
    """Hamer model with Burgers flux and ``g(u) = sigma * u**alpha``."""
    if not sigma > 0.0:
        raise NonPositiveInput(f"sigma must be positive, got {sigma}")
    if int(alpha) != alpha or alpha < 1:
        raise NonPositiveInput(f"alpha must be a positive integer for the Hamer model, got {alpha}")
    alpha = int(alpha)
    if not u_plus < u_minus:
        raise InadmissibleShock(f"Burgers shock needs u+ < u-, got u-={u_minus}, u+={u_plus}")
    hp = HamerParams(u_minus, u_plus, sigma, alpha)
    g_minus, g_plus = hp.g(u_minus), hp.g(u_plus)
    g_bracket = g_plus - g_minus
    if not g_bracket < 0.0:
        raise HypothesisGViolated(f"[g] = {g_bracket!r} must be negative")
    ju = hp.jump_u
    nu = -0.5 * ju**2 / g_bracket
    mid = u_minus + u_plus

    def G(x):
        return -1.0 + 2.0 * (hp.g(0.5 * (ju * x + mid)) - g_minus) / g_bracket

    def G_prime(x):
        return hp.dg(0.5 * (ju * x + mid)) * ju / g_bracket

    model = {1: HAMER_LINEAR, 2: HAMER_QUADRATIC}.get(alpha, HAMER_POWER)
    return ReducedSystem(nu, G, G_prime, model, g_bracket, hamer=hp)


@dataclass(frozen=True)
class RegimeReport:
    model: str
    nu: float
    G_at_0: float
    G_prime_at_0: float
    two_nu_sq: float
    discriminant: float          # G'(0)^2 - 2 nu^2, sign decides real eigenvalues at P0
    forced_jump_by_G0: bool
    forced_jump_boundary: bool   # |G(0) -+ 1| within BOUNDARY_TOL
    spiral: bool
    jump_predicted: bool
    spike_predicted: bool | None
    delta: float | None
    delta_spike: float | None
    delta_jump: float | None
    delta_max: float | None
    x_c: float | None
    theta_max_closed_form: float | None
    theta_M: float | None
    theta_max_over_theta_M: float | None
    ratio_bounds: tuple[float, float] | None

    def as_dict(self) -> dict:
        d = asdict(self)
        if d["ratio_bounds"] is not None:
            d["ratio_bounds"] = list(d["ratio_bounds"])
        return d


def classify(rs: ReducedSystem) -> RegimeReport:
    G0 = rs.G(0.0)
    dG0 = rs.G_prime(0.0)
    two_nu_sq = 2.0 * rs.nu**2
    forced = G0 >= 1.0 - BOUNDARY_TOL or G0 <= -1.0 + BOUNDARY_TOL
    boundary = abs(G0 - 1.0) <= BOUNDARY_TOL or abs(G0 + 1.0) <= BOUNDARY_TOL
    spiral = dG0 < two_nu_sq
    fields = dict(
        model=rs.model,
        nu=rs.nu,
        G_at_0=G0,
        G_prime_at_0=dG0,
        two_nu_sq=two_nu_sq,
        discriminant=dG0**2 - two_nu_sq,
        forced_jump_by_G0=forced,
        forced_jump_boundary=boundary,
        spiral=spiral,
        jump_predicted=forced or spiral,
    )
    if not rs.is_radhydro:
        return RegimeReport(
            **fields, spike_predicted=None, delta=None, delta_spike=None, delta_jump=None,
            delta_max=None, x_c=None, theta_max_closed_form=None, theta_M=None,
            theta_max_over_theta_M=None, ratio_bounds=None,
        )

    s = rs.shock
    g, R, d = s.gamma, s.R, s.delta
    x_c = s.x_c
    theta_max = (g + 1.0) ** 2 * s.U_c**2 / (4.0 * g**2 * R)
    if g < 3.0:
        theta_M = (3.0 - g) * s.theta_plus
        ratio = theta_max / theta_M
        bounds = (1.0 / (3.0 - g), (g + 1.0) ** 2 / (8.0 * (3.0 - g) * (g - 1.0)))
    else:
        theta_M = ratio = bounds = None
    return RegimeReport(
        **fields,
        spike_predicted=bool(g < 3.0 and d > (g - 1.0) / g),
        delta=d,
        delta_spike=(g - 1.0) / g,
        delta_jump=2.0 * (g - 1.0) / g,
        delta_max=2.0 / g,
        x_c=x_c,
        theta_max_closed_form=theta_max,
        theta_M=theta_M,
        theta_max_over_theta_M=ratio,
        ratio_bounds=bounds,
    )


def spiral_condition_sides(s: ShockData, r: RadiationParams) -> tuple[float, float]:
    """Both sides of the spiral criterion written in the physical parameters.

    ``lhs < rhs`` holds exactly when ``G'(0) < 2 nu^2``.
    """
    g, R = s.gamma, s.R
    M0 = 2.0 * (g - 1.0) ** 3 * r.tau**2 / (R * g * (g + 1.0) ** 2 * r.sigma_s**2)
    g_bracket = g_of_theta(r, s.theta_plus) - g_of_theta(r, s.theta_minus)
    lhs = M0 / s.A**2 * s.U_c * dg_dtheta(r, s.U_c**2 / (g * R))
    rhs = -s.jump_u**3 / g_bracket
    return lhs, rhs


def linear_spiral_threshold(gamma: float, R: float, r: RadiationParams) -> float:
    """``m1`` such that, for linear coupling, the spiral criterion reads ``delta > m1 / A``."""
    return math.sqrt(2.0) * (gamma - 1.0) ** 2 * r.sigma * r.tau / (R * gamma * (gamma + 1.0) * r.sigma_s)


def limit_G(gamma: float, alpha: float, x: float) -> float:
    """Limit of G as delta tends to 2/gamma at fixed (gamma, alpha)."""
    return -1.0 + 2.0 * ((gamma - x) / (gamma - 1.0) * (1.0 + x) / 2.0) ** alpha
