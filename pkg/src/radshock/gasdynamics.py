"""Polytropic shock end states and constitutive maps along the profile.

End states are parametrized by the upstream density, the mean frame
velocity ``U_c = (U+ + U-)/2`` and the normalized jump
``delta = -[u]/U_c``; everything else follows in closed form from the
Rankine-Hugoniot relations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InadmissibleDelta, InadmissibleShock, NonPositiveInput, NonPositiveU

__all__ = [
    "GasParams",
    "RadiationParams",
    "ShockData",
    "EntropyReport",
    "build_shock",
    "shock_from_states",
    "check_entropy",
    "theta_of_x",
    "U_of_x",
    "f_of_U",
    "rho_of_U",
    "p_of_U",
    "g_of_theta",
    "dg_dtheta",
]


@dataclass(frozen=True)
class GasParams:
    gamma: float = 5.0 / 3.0
    R: float = 8.31

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise NonPositiveInput(f"gamma must exceed 1, got {self.gamma}")
        if not self.R > 0.0:
            raise NonPositiveInput(f"R must be positive, got {self.R}")


@dataclass(frozen=True)
class RadiationParams:
    """Coupling ``g(theta) = sigma * theta**alpha`` plus scattering/absorption constants."""

    sigma: float = 1.0
    sigma_s: float = 1.0
    tau: float = 1.0
    alpha: float = 2.0

    def __post_init__(self):
        for name in ("sigma", "sigma_s", "tau", "alpha"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise NonPositiveInput(f"{name} must be positive, got {v}")


@dataclass(frozen=True)
class ShockData:
    gas: GasParams
    rho_minus: float
    rho_plus: float
    u_minus: float
    u_plus: float
    theta_minus: float
    theta_plus: float
    c: float
    U_minus: float
    U_plus: float
    U_c: float
    jump_u: float
    delta: float
    A: float
    B: float
    C: float
    kappa: float

    @property
    def gamma(self) -> float:
        return self.gas.gamma

    @property
    def R(self) -> float:
        return self.gas.R

    @property
    def x_c(self) -> float:
        """Maximizer of the temperature along the auxiliary coordinate."""
        return (self.gamma - 1.0) / (self.gamma * self.delta)

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "gas"}
        d["gamma"] = self.gamma
        d["R"] = self.R
        return d


@dataclass(frozen=True)
class EntropyReport:
    upstream_supersonic: bool   # sqrt(gamma R theta-) < U-
    downstream_positive: bool   # U+ > 0
    downstream_subsonic: bool   # U+ < sqrt(gamma R theta+)

    @property
    def ok(self) -> bool:
        return self.upstream_supersonic and self.downstream_positive and self.downstream_subsonic


def build_shock(gas: GasParams, rho_minus: float, U_c: float, delta: float, c: float = 0.0) -> ShockData:
    """Admissible 1-shock with the given upstream density, mean frame velocity and ``delta``."""
    gamma, R = gas.gamma, gas.R
    if not rho_minus > 0.0:
        raise NonPositiveInput(f"rho_minus must be positive, got {rho_minus}")
    if not U_c > 0.0:
        raise NonPositiveInput(f"U_c must be positive, got {U_c}")
    if not 0.0 < delta < 2.0 / gamma:
        raise InadmissibleDelta(
            f"delta={delta} outside the admissible range (0, 2/gamma) = (0, {2.0 / gamma:.6g})"
        )
    jump_u = -delta * U_c
    U_minus = U_c + 0.5 * delta * U_c
    U_plus = U_c - 0.5 * delta * U_c
    A = rho_minus * U_minus
    theta_minus = (U_c - 0.5 * jump_u) * (U_c + 0.5 * gamma * jump_u) / (gamma * R)
    theta_plus = (U_c + 0.5 * jump_u) * (U_c - 0.5 * gamma * jump_u) / (gamma * R)
    B = (gamma + 1.0) / (2.0 * gamma) * A * (U_minus + U_plus)
    C = (gamma + 1.0) / (2.0 * (gamma - 1.0)) * A * U_minus * U_plus
    kappa = (gamma + 1.0) * A / (2.0 * (gamma - 1.0))
    return ShockData(
        gas=gas,
        rho_minus=rho_minus,
        rho_plus=A / U_plus,
        u_minus=U_minus + c,
        u_plus=U_plus + c,
        theta_minus=theta_minus,
        theta_plus=theta_plus,
        c=c,
        U_minus=U_minus,
        U_plus=U_plus,
        U_c=U_c,
        jump_u=jump_u,
        delta=delta,
        A=A,
        B=B,
        C=C,
        kappa=kappa,
    )


def _fluxes(gas: GasParams, rho: float, U: float, theta: float) -> tuple[float, float, float]:
    p = gas.R * rho * theta
    e = gas.R * theta / (gas.gamma - 1.0)
    return rho * U, rho * U * U + p, rho * U * (0.5 * U * U + e) + p * U


def shock_from_states(
    gas: GasParams,
    rho_minus: float, u_minus: float, theta_minus: float,
    rho_plus: float, u_plus: float, theta_plus: float,
    c: float,
    rel_tol: float = 1e-10,
) -> ShockData:
    """Validate raw end-state triples against Rankine-Hugoniot and the 1-shock entropy condition."""
    if min(rho_minus, rho_plus, theta_minus, theta_plus) <= 0.0:
        raise NonPositiveInput("densities and temperatures must be positive")
    Um, Up = u_minus - c, u_plus - c
    fm = _fluxes(gas, rho_minus, Um, theta_minus)
    fp = _fluxes(gas, rho_plus, Up, theta_plus)
    for name, a, b in zip("ABC", fm, fp):
        if abs(a - b) > rel_tol * max(abs(a), abs(b), 1e-300):
            raise InadmissibleShock(f"Rankine-Hugoniot flux {name} mismatch: {a!r} vs {b!r}")
    U_c = 0.5 * (Um + Up)
    if not U_c > 0.0:
        raise InadmissibleShock("mean frame velocity must be positive for a 1-shock")
    s = build_shock(gas, rho_minus, U_c, (Um - Up) / U_c, c)
    if not check_entropy(s).ok:
        raise InadmissibleShock("entropy condition for 1-shocks violated")
    return s


def check_entropy(s: ShockData) -> EntropyReport:
    gR = s.gamma * s.R
    return EntropyReport(
        upstream_supersonic=math.sqrt(gR * s.theta_minus) < s.U_minus,
        downstream_positive=s.U_plus > 0.0,
        downstream_subsonic=s.U_plus < math.sqrt(gR * s.theta_plus),
    )


def theta_of_x(s: ShockData, x):
    """Temperature as a function of the auxiliary coordinate x in [-1, 1]."""
    g, d = s.gamma, s.delta
    return s.U_c**2 / (g * s.R) * (1.0 - 0.5 * d * x) * (1.0 + 0.5 * g * d * x)


def dtheta_dx(s: ShockData, x):
    g, d = s.gamma, s.delta
    return s.U_c**2 / (g * s.R) * 0.5 * d * ((g - 1.0) - g * d * x)


def U_of_x(s: ShockData, x):
    return 0.5 * (s.jump_u * x + s.U_minus + s.U_plus)


def _check_U(U):
    if np.any(np.asarray(U) <= 0.0):
        raise NonPositiveU(f"frame velocity must be positive, got {U}")


def f_of_U(s: ShockData, U):
    _check_U(U)
    return -s.kappa * (U - s.U_plus) * (U - s.U_minus)


def rho_of_U(s: ShockData, U):
    _check_U(U)
    return s.A / U


def p_of_U(s: ShockData, U):
    _check_U(U)
    return s.B - s.A * U


def g_of_theta(r: RadiationParams, theta):
    return r.sigma * theta**r.alpha


def dg_dtheta(r: RadiationParams, theta):
    return r.sigma * r.alpha * theta ** (r.alpha - 1.0)
