"""Physical shock profiles from the heteroclinic orbit, spike detection and residual checks."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import InsufficientSamples
from .gasdynamics import RadiationParams, ShockData, U_of_x, g_of_theta, theta_of_x
from .phaseplane import Connection, HeteroclinicOrbit
from .reduction import HamerParams

__all__ = [
    "JumpRecord",
    "SpikeInfo",
    "ResidualReport",
    "JumpAdmissibility",
    "ShockProfile",
    "reconstruct",
    "detect_spike",
    "verify",
    "jump_admissibility",
    "fd_weights",
]

FIELDS = ("rho", "u", "theta", "n", "m")


@dataclass(frozen=True)
class JumpRecord:
    xi: float
    left: dict
    right: dict


@dataclass
class ShockProfile:
    xi: np.ndarray
    x: np.ndarray
    y: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    n: np.ndarray
    m: np.ndarray
    model: str
    split: int | None = None         # first index of the right smooth piece when there is a jump
    jump: JumpRecord | None = None
    connection: Connection | None = None
    shock: ShockData | None = None
    radiation: RadiationParams | None = None
    hamer: HamerParams | None = None

    @property
    def is_radhydro(self) -> bool:
        return self.shock is not None

    @property
    def tau(self) -> float:
        return self.radiation.tau if self.radiation is not None else 1.0

    def pieces(self) -> list[slice]:
        if self.split is None:
            return [slice(0, len(self.xi))]
        return [slice(0, self.split), slice(self.split, len(self.xi))]

    def g(self) -> np.ndarray:
        """Coupling g evaluated along the profile."""
        if self.is_radhydro:
            return g_of_theta(self.radiation, self.theta)
        return self.hamer.g(self.u)

    def end_states(self) -> tuple[dict, dict]:
        if self.is_radhydro:
            s, r = self.shock, self.radiation
            left = dict(rho=s.rho_minus, u=s.u_minus, theta=s.theta_minus,
                        n=g_of_theta(r, s.theta_minus), m=0.0)
            right = dict(rho=s.rho_plus, u=s.u_plus, theta=s.theta_plus,
                         n=g_of_theta(r, s.theta_plus), m=0.0)
        else:
            h = self.hamer
            left = dict(rho=math.nan, u=h.u_minus, theta=math.nan, n=h.g(h.u_minus), m=0.0)
            right = dict(rho=math.nan, u=h.u_plus, theta=math.nan, n=h.g(h.u_plus), m=0.0)
        return left, right

    def row(self, i: int) -> dict:
        return {k: float(getattr(self, k)[i]) for k in ("xi", "x", "y") + FIELDS}


def _fields_radhydro(s: ShockData, r: RadiationParams, x, y):
    g_minus = g_of_theta(r, theta_of_x(s, -1.0))
    g_plus = g_of_theta(r, theta_of_x(s, 1.0))
    U = U_of_x(s, x)
    theta = theta_of_x(s, x)
    rho = s.A / U
    n = g_minus + 0.5 * (g_plus - g_minus) * (y + 1.0)
    # f(U) = kappa [u]^2 (1 - x^2) / 4, exact zero at the end states
    m = r.sigma_s * s.kappa * s.jump_u**2 * (1.0 - x * x) / 4.0
    return rho, U + s.c, theta, n, m


def _fields_hamer(h: HamerParams, x, y):
    u = 0.5 * (h.jump_u * x + h.u_minus + h.u_plus)
    g_minus, g_plus = h.g(h.u_minus), h.g(h.u_plus)
    n = g_minus + 0.5 * (g_plus - g_minus) * (y + 1.0)
    m = 0.5 * (u - h.u_minus) * (u - h.u_plus)
    nan = np.full_like(np.asarray(x, dtype=float), np.nan)
    return nan, u, nan.copy(), n, m


def reconstruct(
    orbit: HeteroclinicOrbit,
    s: ShockData | None = None,
    r: RadiationParams | None = None,
) -> ShockProfile:
    """Map the zeta-parametrized orbit to (xi, rho, u, theta, n, m)."""
    if orbit.zeta is None:
        raise ValueError("orbit has no zeta parametrization; call reparametrize first")
    rs = orbit.rs
    s = s if s is not None else rs.shock
    r = r if r is not None else rs.radiation
    x, y = orbit.x, orbit.y
    if s is not None:
        # d/dxi = tau d/dzeta for the radiating system
        xi = orbit.zeta / r.tau
        rho, u, theta, n, m = _fields_radhydro(s, r, x, y)
    else:
        xi = orbit.zeta.copy()
        rho, u, theta, n, m = _fields_hamer(rs.hamer, x, y)
    prof = ShockProfile(xi, x, y, rho, u, theta, n, m, rs.model,
                        connection=orbit.connection, shock=s, radiation=r, hamer=rs.hamer)
    if orbit.is_jump:
        k = orbit.split
        prof.split = k
        left = {f: float(getattr(prof, f)[k - 1]) for f in FIELDS} | {"x": float(x[k - 1])}
        right = {f: float(getattr(prof, f)[k]) for f in FIELDS} | {"x": float(x[k])}
        prof.jump = JumpRecord(float(xi[k]), left, right)
    return prof


@dataclass(frozen=True)
class SpikeInfo:
    present: bool
    location: str | None        # at-jump | smooth-interior
    theta_peak: float
    x_at_peak: float
    theta_max_bound: float

    def as_dict(self) -> dict:
        return asdict(self)


def detect_spike(p: ShockProfile) -> SpikeInfo | None:
    """Zel'dovich spike: an interior absolute maximum of the temperature."""
    if not p.is_radhydro:
        return None
    s = p.shock
    g, d = s.gamma, s.delta
    bound = (g + 1.0) ** 2 * s.U_c**2 / (4.0 * g**2 * s.R)
    present = bool(g < 3.0 and d > (g - 1.0) / g)
    i = int(np.argmax(p.theta))
    if not present:
        return SpikeInfo(False, None, float(p.theta[i]), float(p.x[i]), bound)
    x_c = s.x_c
    if p.jump is not None and p.jump.right["x"] >= x_c:
        xr = p.jump.right["x"]
        return SpikeInfo(True, "at-jump", float(theta_of_x(s, xr)), xr, bound)
    return SpikeInfo(True, "smooth-interior", float(theta_of_x(s, x_c)), x_c, bound)


def fd_weights(z: float, x: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for derivatives 0..m at ``z`` on nodes ``x`` (Fornberg)."""
    n = len(x)
    c = np.zeros((n, m + 1))
    c1, c4 = 1.0, x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2, c5, c4 = 1.0, c4, x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


@dataclass(frozen=True)
class ResidualReport:
    max_ode_residual: float          # max of the two scaled first-order residuals
    max_n_residual: float            # |dn/dxi - m| / scale_m_field
    max_m_residual: float            # |dm/dxi - tau^2 (n - g)| / scale_source
    max_second_order_residual: float  # |d2n/dxi2 - tau^2 (n - g)| / scale_source, diagnostic only
    max_algebraic_residual: float    # |m - sigma_s f(U)| / scale_m_field
    asymptotic_gap: float
    scale_m_field: float
    scale_source: float
    n_checked: int

    def as_dict(self) -> dict:
        return asdict(self)


def _algebraic_m(p: ShockProfile) -> np.ndarray:
    if p.is_radhydro:
        s = p.shock
        U = p.u - s.c
        return p.radiation.sigma_s * (-s.kappa * (U - s.U_plus) * (U - s.U_minus))
    h = p.hamer
    f = 0.5 * p.u**2
    return f - 0.5 * h.u_minus**2 - h.c * (p.u - h.u_minus)


def verify(p: ShockProfile, min_samples: int = 100, stencil: int = 5) -> ResidualReport:
    """Residuals of the profile equations from centered differences on the xi-grid.

    Derivatives use ``stencil``-point Fornberg weights inside each smooth
    piece; the half-stencil next to the jump and the endpoints is skipped.
    """
    half = stencil // 2
    tau2 = p.tau**2
    g = p.g()
    source = tau2 * (p.n - g)
    scale_mf = float(np.max(np.abs(p.m))) or 1.0
    scale_src = float(np.max(np.abs(source))) or 1.0
    res_n = res_m = res_2 = 0.0
    checked = 0
    for sl in p.pieces():
        xi = p.xi[sl]
        if len(xi) < min_samples:
            raise InsufficientSamples(f"smooth piece has {len(xi)} samples, need {min_samples}")
        n, m, src = p.n[sl], p.m[sl], source[sl]
        for i in range(half, len(xi) - half):
            idx = slice(i - half, i + half + 1)
            w = fd_weights(xi[i], xi[idx], 2)
            dn = w[:, 1] @ n[idx]
            d2n = w[:, 2] @ n[idx]
            dm = w[:, 1] @ m[idx]
            res_n = max(res_n, abs(dn - m[i]))
            res_m = max(res_m, abs(dm - src[i]))
            res_2 = max(res_2, abs(d2n - src[i]))
            checked += 1
    alg = float(np.max(np.abs(p.m - _algebraic_m(p)))) / scale_mf
    left, right = p.end_states()
    gap = 0.0
    for k in FIELDS:
        arr = getattr(p, k)
        for idx, ref in ((0, left[k]), (-1, right[k])):
            if math.isnan(ref):
                continue
            denom = scale_mf if k == "m" else max(abs(ref), 1e-300)
            gap = max(gap, abs(float(arr[idx]) - ref) / denom)
    res_n /= scale_mf
    res_m /= scale_src
    res_2 /= scale_src
    return ResidualReport(
        max_ode_residual=max(res_n, res_m),
        max_n_residual=res_n,
        max_m_residual=res_m,
        max_second_order_residual=res_2,
        max_algebraic_residual=alg,
        asymptotic_gap=gap,
        scale_m_field=scale_mf,
        scale_source=scale_src,
        n_checked=checked,
    )


@dataclass(frozen=True)
class JumpAdmissibility:
    U_left: float
    U_right: float
    above_mean: bool          # U_c < U_left
    below_twice_mean: bool    # U_left < 2 U_c
    symmetric: bool           # U_right = 2 U_c - U_left
    x_left_in_range: bool     # (U+ + U-)/(U+ - U-) < x_left < 0

    @property
    def ok(self) -> bool:
        return self.above_mean and self.below_twice_mean and self.symmetric and self.x_left_in_range


def jump_admissibility(p: ShockProfile, rel_tol: float = 1e-10) -> JumpAdmissibility:
    if p.jump is None:
        raise ValueError("profile has no jump")
    s = p.shock
    xl, xr = p.jump.left["x"], p.jump.right["x"]
    Ul, Ur = U_of_x(s, xl), U_of_x(s, xr)
    bound = (s.U_plus + s.U_minus) / (s.U_plus - s.U_minus)
    return JumpAdmissibility(
        U_left=Ul,
        U_right=Ur,
        above_mean=s.U_c < Ul,
        below_twice_mean=Ul < 2.0 * s.U_c,
        symmetric=abs(Ur - (2.0 * s.U_c - Ul)) <= rel_tol * s.U_c,
        x_left_in_range=bound < xl < 0.0,
    )
