"""Heteroclinic connection of the reduced planar system.

The unstable manifold of P- = (-1, -1) and the stable manifold of
P+ = (1, 1) are graphs ``y = phi(x)`` over ``[-1, 0)`` and ``(0, 1]``. They
are integrated in ``x`` with

    dphi/dx  = nu^2 x (1 - x^2) / (2 (G(x) - phi))
    dzeta/dx = nu x / (G(x) - phi)

so that the ζ-parametrization comes out of the same integration. The two
branches either both enter P0 = (0, G(0)) (continuous profile) or are
joined by a jump at equal height with ``x_left + x_right = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    AmbiguousConnection,
    DegenerateP0,
    NoIntersection,
    QuadratureFailure,
    RegionViolation,
    UnsupportedRegime,
)
from .ode_kit import Event, IvpProblem, IvpSolution, find_root, integrate
from .reduction import ReducedSystem

__all__ = [
    "SaddleData",
    "P0Data",
    "ManifoldBranch",
    "Connection",
    "HeteroclinicOrbit",
    "saddle_linearization",
    "classify_p0",
    "fast_exit",
    "integrate_branch",
    "match_branches",
    "reparametrize",
    "connect",
    "DEFAULT_OFFSET",
    "DEFAULT_X_STOP",
    "DEFAULT_TOL",
    "DEFAULT_TOL_CONNECT",
    "DEFAULT_ROOT_TOL",
    "DEFAULT_SAMPLES",
]

DEFAULT_OFFSET = 1e-6
DEFAULT_X_STOP = 1e-6
DEFAULT_TOL = 1e-10
DEFAULT_TOL_CONNECT = 1e-6
DEFAULT_TAIL_GAP = 1e-8
DEFAULT_SAMPLES = 2400
DEFAULT_ROOT_TOL = 1e-13
TAIL_GROWTH = 1.05
BRANCH_MAX_STEP = 0.01
PLACEMENT_REFINE = 8
MIN_PIECE_SAMPLES = 200
REACH_FACTOR = 1e3
TAIL_STEP_FRACTION = 0.1
# reaching P0 is only accepted this close to the y-axis
_NEAR_AXIS = 1e-3


@dataclass(frozen=True)
class SaddleData:
    point: tuple[float, float]
    jacobian: np.ndarray
    eigenvalues: tuple[float, float]   # (positive, negative)
    branch_eigenvalue: float           # eigenvalue along the branch leaving/entering the saddle
    branch_tangent_slope: float
    branch_curvature: float            # second derivative of the manifold graph at the saddle


def saddle_linearization(rs: ReducedSystem, which: str) -> SaddleData:
    if which not in ("minus", "plus"):
        raise ValueError("which must be 'minus' or 'plus'")
    nu = rs.nu
    sgn = -1.0 if which == "minus" else 1.0
    g1 = rs.G_prime(sgn)
    g2 = rs.G_second(sgn)
    root = math.hypot(g1, 2.0 * nu)
    # positive root of s^2 - g1 s - nu^2 = 0, written to avoid cancellation
    slope = 0.5 * (g1 + root) if g1 >= 0.0 else 2.0 * nu**2 / (root - g1)
    jac = np.array([[sgn * g1, -sgn * 1.0], [-sgn * nu**2, 0.0]]) / nu
    lam_pos = 0.5 * (sgn * g1 + root) / nu
    lam_neg = -1.0 / lam_pos  # det = -1
    if which == "minus":
        mu = nu / slope
        curv = (3.0 * nu**2 - slope * g2) / (2.0 * g1 - 3.0 * slope)
    else:
        mu = -nu / slope
        curv = (-3.0 * nu**2 - slope * g2) / (2.0 * g1 - 3.0 * slope)
    return SaddleData((sgn, sgn), jac, (lam_pos, lam_neg), mu, slope, curv)


@dataclass(frozen=True)
class P0Data:
    point: tuple[float, float]
    kind: str                          # attractive-spiral | repulsive-spiral | source
    discriminant: float                # G'(0)^2 - 2 nu^2
    fast_eigen: tuple[float, float] | None = None   # (mu0+, slope of fast direction)
    slow_eigen: tuple[float, float] | None = None


def classify_p0(rs: ReducedSystem, tol: float = 1e-10) -> P0Data:
    G0, dG0 = rs.G(0.0), rs.G_prime(0.0)
    two_nu_sq = 2.0 * rs.nu**2
    if abs(dG0) <= tol or abs(dG0 - two_nu_sq) <= tol * max(1.0, two_nu_sq):
        raise DegenerateP0(f"G'(0)={dG0!r} is at a degenerate value (0 or 2 nu^2 = {two_nu_sq!r})")
    disc = dG0**2 - two_nu_sq
    if dG0 < 0.0:
        return P0Data((0.0, G0), "attractive-spiral", disc)
    if dG0 < two_nu_sq:
        return P0Data((0.0, G0), "repulsive-spiral", disc)
    sq = math.sqrt(disc)
    nu = rs.nu
    mu_fast = (dG0 + sq) / (2.0 * nu)
    mu_slow = (dG0 - sq) / (2.0 * nu)
    return P0Data(
        (0.0, G0), "source", disc,
        fast_eigen=(mu_fast, nu / (2.0 * mu_fast)),
        slow_eigen=(mu_slow, nu / (2.0 * mu_slow)),
    )


def fast_exit(rs: ReducedSystem, tol: float = DEFAULT_TOL, offset: float = DEFAULT_OFFSET) -> float:
    """Abscissa where the fast trajectory out of a nodal P0 leaves the region below G on x > 0.

    Returns 1.0 when the trajectory stays below G all the way to x = 1.
    """
    p0 = classify_p0(rs)
    if p0.kind != "source":
        raise DegenerateP0(f"P0 is a {p0.kind}; the fast direction needs real eigenvalues")
    G, nu2, G0 = rs.G, rs.nu**2, rs.G(0.0)
    dG0 = rs.G_prime(0.0)
    # slope of the fast eigendirection: G'(0) minus the fast eigenvalue of the rescaled field
    slope = 0.5 * (dG0 - math.sqrt(p0.discriminant))

    def rhs(x, st):
        return np.array([0.5 * nu2 * x * (1.0 - x * x) / (G(x) - st[0])])

    # x has a vertical tangent where the trajectory meets G, so stopping a
    # distance sqrt(tol) short of it moves the exit abscissa by O(tol) only
    margin = math.sqrt(tol)

    def gap(x, st):
        return G(x) - st[0] - margin * (1.0 + abs(st[0]))

    prob = IvpProblem(rhs, offset, 1.0 - offset, [G0 + slope * offset], rel_tol=tol, abs_tol=tol,
                      events=(Event(gap, direction=-1),), max_step=BRANCH_MAX_STEP)
    sol = integrate(prob)
    return float(sol.t_final) if sol.terminated_by is not None else 1.0


@dataclass
class ManifoldBranch:
    side: str
    x: np.ndarray            # strictly increasing
    y: np.ndarray
    zeta_raw: np.ndarray     # zeta up to an additive constant (0 at the start point)
    value_at_zero: float
    zeta_raw_at_zero: float
    reaches_p0: bool
    monotone: bool
    x_start: float
    x_stop: float
    saddle: SaddleData
    _sol: IvpSolution = field(repr=False)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))

    def state(self, x: float) -> tuple[float, float]:
        """(phi, zeta_raw) at ``x``; linear bridge between ``x_stop`` and the axis."""
        sgn = -1.0 if self.side == "minus" else 1.0
        xs = sgn * self.x_stop
        if sgn * x < self.x_stop:
            phi_s, z_s = self._sol(xs)
            w = x / xs
            return (self.value_at_zero + w * (phi_s - self.value_at_zero),
                    self.zeta_raw_at_zero + w * (z_s - self.zeta_raw_at_zero))
        if sgn * (x - self.x_start) > 0:
            # between the saddle and the first integrated point: second-order Taylor graph
            h = x - sgn
            sd = self.saddle
            return sgn + sd.branch_tangent_slope * h + 0.5 * sd.branch_curvature * h * h, math.nan
        phi, z = self._sol(x)
        return float(phi), float(z)

    def phi(self, x: float) -> float:
        return self.state(x)[0]


def integrate_branch(
    rs: ReducedSystem,
    side: str,
    offset: float = DEFAULT_OFFSET,
    tol: float = DEFAULT_TOL,
    x_stop: float = DEFAULT_X_STOP,
    tol_connect: float = DEFAULT_TOL_CONNECT,
) -> ManifoldBranch:
    """Integrate the unstable (minus) or stable (plus) manifold graph toward x = 0."""
    if side not in ("minus", "plus"):
        raise ValueError("side must be 'minus' or 'plus'")
    if not 0.0 < offset <= 1e-3:
        raise ValueError("offset must lie in (0, 1e-3]")
    sd = saddle_linearization(rs, side)
    sgn = -1.0 if side == "minus" else 1.0
    h0 = -sgn * offset
    x0 = sgn + h0
    phi0 = sgn + sd.branch_tangent_slope * h0 + 0.5 * sd.branch_curvature * h0 * h0
    nu, G = rs.nu, rs.G
    nu2 = nu * nu
    region = -sgn  # minus branch lies above G, plus branch below

    def rhs(x, st):
        d = G(x) - st[0]
        return np.array([0.5 * nu2 * x * (1.0 - x * x) / d, nu * x / d])

    def gap(x, st):
        return region * (st[0] - G(x)) - tol * (1.0 + abs(st[0]))

    prob = IvpProblem(rhs, x0, sgn * x_stop, [phi0, 0.0], rel_tol=tol, abs_tol=tol,
                      events=(Event(gap, direction=-1),), max_step=BRANCH_MAX_STEP)
    sol = integrate(prob)
    x_end = sol.t_final
    if sol.terminated_by is not None and abs(x_end) > _NEAR_AXIS:
        raise RegionViolation(
            f"{side} branch left its region at x={x_end:.6g}; tighten the integration tolerance"
        )

    xs, st = sol.t, sol.y
    if sol.terminated_by is not None:
        v0 = float(st[-1, 0])
        slope = abs((st[-1, 1] - st[-2, 1]) / (xs[-1] - xs[-2])) if len(xs) > 1 else 0.0
        z0 = float(st[-1, 1]) + slope * abs(x_end) * -sgn
        x_stop_eff = abs(x_end)
    else:
        # Richardson: linear extrapolation from x_stop and 2 x_stop
        s1 = sol(sgn * x_stop)
        s2 = sol(2.0 * sgn * x_stop)
        v0 = 2.0 * s1[0] - s2[0]
        # zeta increases with x on both branches; keep that under loose tolerances
        z0 = s1[1] - sgn * abs(s1[1] - s2[1])
        x_stop_eff = x_stop

    order = np.argsort(xs)
    x_arr, y_arr, z_arr = xs[order], st[order, 0], st[order, 1]
    Gx = np.array([G(v) for v in x_arr])
    inside = region * (y_arr - Gx) > 0.0
    if not inside.all():
        bad = x_arr[~inside][0]
        raise RegionViolation(f"{side} branch sample at x={bad:.6g} outside its region")
    G0 = G(0.0)
    reaches = abs(v0 - G0) <= tol_connect * (1.0 + abs(G0))
    return ManifoldBranch(
        side=side, x=x_arr, y=y_arr, zeta_raw=z_arr,
        value_at_zero=float(v0), zeta_raw_at_zero=float(z0),
        reaches_p0=bool(reaches), monotone=bool(np.all(np.diff(y_arr) > 0.0)),
        x_start=x0, x_stop=x_stop_eff, saddle=sd, _sol=sol,
    )


@dataclass(frozen=True)
class Connection:
    kind: str                 # continuous | jump
    x_left: float
    x_right: float
    y_c: float
    resolved: bool = True     # False: jump guaranteed but narrower than x_stop

    def as_dict(self) -> dict:
        return {"kind": self.kind, "x_left": self.x_left, "x_right": self.x_right,
                "y_c": self.y_c, "resolved": self.resolved}


@dataclass
class HeteroclinicOrbit:
    rs: ReducedSystem
    branch_minus: ManifoldBranch
    branch_plus: ManifoldBranch
    connection: Connection
    p0: P0Data | None = None
    zeta: np.ndarray | None = None
    x: np.ndarray | None = None
    y: np.ndarray | None = None
    split: int | None = None   # index of the first sample of the plus piece
    tail_gap: tuple[float, float] | None = None

    @property
    def is_jump(self) -> bool:
        return self.connection.kind == "jump"

    @property
    def zeta_param(self) -> list[tuple[float, float, float]]:
        if self.zeta is None:
            return []
        return list(zip(self.zeta.tolist(), self.x.tolist(), self.y.tolist()))


def _p0_kind(rs: ReducedSystem) -> tuple[bool, P0Data | None]:
    dG0 = rs.G_prime(0.0)
    if dG0 <= 0.0:
        raise UnsupportedRegime(f"G'(0) = {dG0!r} <= 0: connection may be non-unique")
    try:
        p0 = classify_p0(rs)
    except DegenerateP0:
        p0 = None
    return dG0 < 2.0 * rs.nu**2, p0


def match_branches(
    rs: ReducedSystem,
    bm: ManifoldBranch,
    bp: ManifoldBranch,
    tol: float = DEFAULT_TOL_CONNECT,
    root_tol: float = DEFAULT_ROOT_TOL,
) -> HeteroclinicOrbit:
    """Join the two branches continuously through P0 or by a single admissible jump.

    The jump abscissa solves ``phi+(x) = phi-(-x)``, which is the root of
    ``h(y) = psi+(y) + psi-(y)`` written in the x variable; ``x_left`` is then
    recovered by inverting the minus branch at the matched height.
    """
    spiral, p0 = _p0_kind(rs)
    G0 = rs.G(0.0)
    scale = tol * (1.0 + abs(G0))
    gap_m = bm.value_at_zero - G0
    gap_p = G0 - bp.value_at_zero
    reach_m, reach_p = abs(gap_m) <= scale, abs(gap_p) <= scale

    if reach_m and reach_p and not spiral:
        return HeteroclinicOrbit(rs, bm, bp, Connection("continuous", 0.0, 0.0, G0), p0)
    if reach_m != reach_p and not spiral:
        other = gap_p if reach_m else gap_m
        if other <= 100.0 * scale:
            raise AmbiguousConnection(
                f"one branch enters P0 while the other misses it by {other:.3e}; "
                "connection type cannot be decided at this tolerance"
            )

    x_lo = max(bm.x_stop, bp.x_stop)
    x_hi = 1.0 - abs(bp.x_start - 1.0)

    def k(x):
        return bp.phi(x) - bm.phi(-x)

    k_lo, k_hi = k(x_lo), k(x_hi)
    if k_hi <= 0.0:
        raise NoIntersection(f"branches do not cross: phi+(x) - phi-(-x) = {k_hi!r} near x = 1")
    if k_lo >= 0.0:
        if not (spiral or reach_m or reach_p):
            raise NoIntersection("no sign change of phi+(x) - phi-(-x) on the matching bracket")
        # jump exists but is narrower than the resolution of the branches
        y_c = 0.5 * (bm.phi(-x_lo) + bp.phi(x_lo))
        return HeteroclinicOrbit(rs, bm, bp, Connection("jump", -x_lo, x_lo, y_c, resolved=False), p0)

    x_r = find_root(k, x_lo, x_hi, root_tol)
    y_c = bp.phi(x_r)
    x_l_lo, x_l_hi = bm.x_start, -bm.x_stop
    if bm.phi(x_l_lo) - y_c >= 0.0:
        x_l = x_l_lo
    else:
        x_l = find_root(lambda x: bm.phi(x) - y_c, x_l_lo, x_l_hi, root_tol)
    return HeteroclinicOrbit(rs, bm, bp, Connection("jump", x_l, x_r, y_c), p0)


@dataclass(frozen=True)
class _PieceMonitor:
    """Fine table along one smooth piece, ordered by increasing zeta."""

    x: np.ndarray
    dz: np.ndarray
    dx: np.ndarray
    dy: np.ndarray
    bend: np.ndarray  # sqrt(|d2x/dzeta2|) dzeta per fine interval


def _piece_monitor(rs: ReducedSystem, branch: ManifoldBranch, x_conn: float, z_conn_raw: float) -> _PieceMonitor:
    """Placement monitor for the piece between the branch start and ``x_conn``.

    Only used to decide where samples go, so a linear interpolation of the
    branch refined by the local speed dx/dzeta is accurate enough.
    """
    sgn = -1.0 if branch.side == "minus" else 1.0
    keep = sgn * (branch.x - x_conn) > 0.0
    xk = np.append(branch.x[keep], x_conn)
    zk = np.append(branch.zeta_raw[keep] - z_conn_raw, 0.0)
    order = np.argsort(zk)
    zk, xk = zk[order], xk[order]
    if np.any(np.diff(zk) <= 0.0):
        raise QuadratureFailure(f"zeta is not monotone along the {branch.side} branch")
    idx = np.arange(len(xk), dtype=float)
    fine = np.linspace(0.0, idx[-1], PLACEMENT_REFINE * (len(xk) - 1) + 1)
    xf = np.interp(fine, idx, xk)
    yk = np.array([branch.state(float(v))[0] for v in xk])
    yf = np.interp(fine, idx, yk)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (np.asarray(rs.G(xf), dtype=float) - yf) / (rs.nu * xf)
    # G - y cancels near the axis; treat the speed there as locally constant
    bad = ~np.isfinite(v) | (np.abs(xf) < _NEAR_AXIS)
    if bad.all():
        v[:] = 1.0
    elif bad.any():
        v[bad] = np.interp(np.flatnonzero(bad), np.flatnonzero(~bad), v[~bad])
    dx, dy = np.diff(xf), np.diff(yf)
    # split each branch step's zeta increment in proportion to 1/speed
    w = np.abs(dx) * 0.5 * (1.0 / np.abs(v[:-1]) + 1.0 / np.abs(v[1:]))
    w = w.reshape(len(xk) - 1, PLACEMENT_REFINE)
    tot = w.sum(axis=1, keepdims=True)
    share = np.where(tot > 0.0, w / np.where(tot > 0.0, tot, 1.0), 1.0 / PLACEMENT_REFINE)
    dz = (share * np.diff(zk)[:, None]).ravel()
    bend = np.sqrt(np.abs(np.diff(v)) * dz)
    return _PieceMonitor(xf, dz, np.abs(dx), np.abs(dy), bend)


def _densities(mons: list[_PieceMonitor]) -> list[np.ndarray]:
    """Half the budget follows normalized (zeta, x, y) arclength, half the bending."""
    norms = [sum(float(getattr(m, k).sum()) for m in mons) or 1.0 for k in ("dz", "dx", "dy")]
    arcs = [np.sqrt((m.dz / norms[0]) ** 2 + (m.dx / norms[1]) ** 2 + (m.dy / norms[2]) ** 2) for m in mons]
    arc_tot = sum(float(a.sum()) for a in arcs) or 1.0
    bend_tot = sum(float(m.bend.sum()) for m in mons)
    if bend_tot > 0.0:
        return [0.5 * a / arc_tot + 0.5 * m.bend / bend_tot for a, m in zip(arcs, mons)]
    return [a / arc_tot for a in arcs]


def _piece(branch: ManifoldBranch, mon: _PieceMonitor, dens: np.ndarray, x_conn: float, z_conn_raw: float, n: int):
    """``n`` samples from the saddle end to the connection, each evaluated exactly on the branch."""
    cum = np.concatenate([[0.0], np.cumsum(dens)])
    targets = np.linspace(0.0, cum[-1], n)
    if branch.side == "plus":
        targets = targets[::-1]
    xt = np.interp(targets, cum, mon.x)
    xt[0], xt[-1] = branch.x_start, x_conn
    zs = np.empty(n)
    ys = np.empty(n)
    for i, xv in enumerate(xt):
        phi, z = branch.state(float(xv))
        ys[i] = phi
        zs[i] = z - z_conn_raw
    zs[-1] = 0.0
    return zs, xt, ys


def _tail(branch: ManifoldBranch, zeta_start: float, dz: float, tail_gap: float, zeta_max: float):
    """Exponential tail from the integration start to within ``tail_gap`` of the saddle."""
    sd = branch.saddle
    sgn = -1.0 if branch.side == "minus" else 1.0
    lam = sd.branch_eigenvalue
    d0 = abs(branch.x_start - sgn)
    z_end = zeta_start + math.log(tail_gap / d0) / lam
    # truncate at |zeta| <= zeta_max
    if abs(z_end) > zeta_max:
        z_end = math.copysign(zeta_max, z_end)
    if abs(z_end) <= abs(zeta_start):
        return np.empty(0), np.empty(0), np.empty(0)
    # spacing grows geometrically from the piece spacing up to a fraction of the decay length
    length = abs(z_end - zeta_start)
    h_max = max(dz, TAIL_STEP_FRACTION / abs(lam))
    offsets = [0.0]
    h = dz
    while offsets[-1] + h < length:
        offsets.append(offsets[-1] + h)
        h = min(h * TAIL_GROWTH, h_max)
    offsets = np.array(offsets[1:] + [length])
    zs = zeta_start + math.copysign(1.0, z_end - zeta_start) * offsets
    dist = d0 * np.exp(lam * (zs - zeta_start))
    h = -sgn * dist
    xs = sgn + h
    ys = sgn + sd.branch_tangent_slope * h + 0.5 * sd.branch_curvature * h * h
    return zs, xs, ys


def reparametrize(
    rs: ReducedSystem,
    orbit: HeteroclinicOrbit,
    n_samples: int = DEFAULT_SAMPLES,
    zeta_max: float | None = None,
    tail_gap: float = DEFAULT_TAIL_GAP,
) -> HeteroclinicOrbit:
    """Attach the zeta-parametrization, zeta = 0 at the connection point.

    Samples on each smooth piece follow an arclength-plus-bending monitor and lie exactly on the
    integrated branches; exponential tails extend each end to within
    ``tail_gap`` of the saddle or to ``|zeta| = zeta_max``.
    """
    bm, bp, conn = orbit.branch_minus, orbit.branch_plus, orbit.connection
    if conn.kind == "continuous":
        xl = xr = 0.0
        zl, zr = bm.zeta_raw_at_zero, bp.zeta_raw_at_zero
    else:
        xl, xr = conn.x_left, conn.x_right
        zl, zr = bm.state(xl)[1], bp.state(xr)[1]
    if not all(map(math.isfinite, (zl, zr))):
        raise QuadratureFailure("zeta diverges at the connection point")

    lam_m = bm.saddle.branch_eigenvalue
    lam_p = abs(bp.saddle.branch_eigenvalue)
    if zeta_max is None:
        zeta_max = 50.0 / min(lam_m, lam_p)

    mon_m = _piece_monitor(rs, bm, xl, zl)
    mon_p = _piece_monitor(rs, bp, xr, zr)
    dens_m, dens_p = _densities([mon_m, mon_p])
    n_m = max(MIN_PIECE_SAMPLES, int(round(n_samples * float(dens_m.sum()))))
    n_p = max(MIN_PIECE_SAMPLES, n_samples - n_m)
    zm, xm, ym = _piece(bm, mon_m, dens_m, xl, zl, n_m)
    zp, xp, yp = _piece(bp, mon_p, dens_p, xr, zr, n_p)
    zp, xp, yp = zp[::-1], xp[::-1], yp[::-1]

    tzm, txm, tym = _tail(bm, float(zm[0]), abs(zm[1] - zm[0]), tail_gap, zeta_max)
    tzp, txp, typ = _tail(bp, float(zp[-1]), abs(zp[-1] - zp[-2]), tail_gap, zeta_max)

    if conn.kind == "continuous":
        zp, xp, yp = zp[1:], xp[1:], yp[1:]
        xm[-1], ym[-1] = 0.0, conn.y_c
    else:
        xm[-1] = xl
        ym[-1] = yp[0] = conn.y_c
        xp[0] = xr
    zeta = np.concatenate([tzm[::-1], zm, zp, tzp])
    x = np.concatenate([txm[::-1], xm, xp, txp])
    y = np.concatenate([tym[::-1], ym, yp, typ])
    split = len(tzm) + len(zm)
    gaps = (abs(x[0] + 1.0) + abs(y[0] + 1.0), abs(x[-1] - 1.0) + abs(y[-1] - 1.0))
    return replace(orbit, zeta=zeta, x=x, y=y, split=split, tail_gap=gaps)


def connect(
    rs: ReducedSystem,
    tol: float = DEFAULT_TOL,
    tol_connect: float = DEFAULT_TOL_CONNECT,
    offset: float = DEFAULT_OFFSET,
    n_samples: int = DEFAULT_SAMPLES,
    zeta_max: float | None = None,
    root_tol: float = DEFAULT_ROOT_TOL,
) -> HeteroclinicOrbit:
    """Branches, matching and reparametrization in one call.

    The reach test at x = 0 cannot be tighter than the branch error, which
    grows near the singular axis; its tolerance is ``max(tol_connect, 1e3 tol)``.
    """
    _p0_kind(rs)
    tol_connect = max(tol_connect, REACH_FACTOR * tol)
    bm = integrate_branch(rs, "minus", offset=offset, tol=tol, tol_connect=tol_connect)
    bp = integrate_branch(rs, "plus", offset=offset, tol=tol, tol_connect=tol_connect)
    orbit = match_branches(rs, bm, bp, tol=tol_connect, root_tol=root_tol)
    return reparametrize(rs, orbit, n_samples=n_samples, zeta_max=zeta_max)
