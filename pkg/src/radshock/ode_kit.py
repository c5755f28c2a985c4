"""Adaptive explicit ODE integration and bracketed root finding.

The integrator is the Dormand-Prince 5(4) pair with a proportional-integral
step-size controller and the pair's quartic continuous extension for dense
output. Events are located by bisection on the dense output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import NoBracket, NonFiniteRhs, StepFailure

__all__ = [
    "Event",
    "IvpProblem",
    "IvpSolution",
    "integrate",
    "find_root",
]

# Dormand-Prince tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
_E = np.array([-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40])
# quartic continuous extension (Shampine); row i multiplies stage k_i
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

_SAFETY = 0.9
_BETA = 0.04
_EXPO = 0.2 - 0.75 * _BETA
_FAC_MIN = 0.2
_FAC_MAX = 10.0
_UNDERFLOW = 1e-14


@dataclass(frozen=True)
class Event:
    """Scalar event ``fn(t, y) = 0``.

    ``direction`` +1 keeps only negative-to-positive crossings, -1 only
    positive-to-negative ones, 0 both.
    """

    fn: Callable[[float, np.ndarray], float]
    direction: int = 0
    terminal: bool = True


@dataclass(frozen=True)
class IvpProblem:
    rhs: Callable[[float, np.ndarray], Sequence[float]]
    t0: float
    t_end: float
    y0: Sequence[float]
    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    events: tuple[Event, ...] = ()
    max_step: float = math.inf

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.t0 == self.t_end:
            raise ValueError("t0 and t_end must differ")


@dataclass
class IvpSolution:
    t: np.ndarray
    y: np.ndarray  # shape (n_samples, n_state)
    terminated_by: int | str | None = None
    _steps: list = field(default_factory=list, repr=False)

    @property
    def direction(self) -> float:
        return 1.0 if self.t[-1] >= self.t[0] else -1.0

    def __call__(self, t: float) -> np.ndarray:
        """Dense evaluation on the covered interval."""
        d = self.direction
        if not (d * (t - self.t[0]) >= -1e-15 * abs(self.t[0]) - 1e-300
                and d * (self.t[-1] - t) >= -1e-15 * abs(self.t[-1]) - 1e-300):
            raise ValueError(f"t={t} outside covered interval [{self.t[0]}, {self.t[-1]}]")
        if not self._steps:
            return self.y[0].copy()
        # samples are monotone in the direction of integration
        key = d * np.asarray(self.t[1:])
        i = int(np.searchsorted(key, d * t, side="left"))
        i = min(i, len(self._steps) - 1)
        t_old, h, y_old, Q = self._steps[i]
        theta = (t - t_old) / h
        return y_old + h * (Q @ np.array([theta, theta**2, theta**3, theta**4]))

    @property
    def t_final(self) -> float:
        return float(self.t[-1])

    @property
    def y_final(self) -> np.ndarray:
        return self.y[-1]


def _rms(v: np.ndarray) -> float:
    return float(np.sqrt(np.mean(v * v)))


def _eval_rhs(rhs, t, y) -> np.ndarray:
    f = np.asarray(rhs(t, y), dtype=float)
    if not np.all(np.isfinite(f)):
        raise NonFiniteRhs(f"non-finite rhs at t={t!r}, y={y!r}")
    return f


def _initial_step(rhs, t0, y0, f0, direction, span, rtol, atol):
    scale = atol + rtol * np.abs(y0)
    d0 = _rms(y0 / scale)
    d1 = _rms(f0 / scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = y0 + direction * h0 * f0
    f1 = _eval_rhs(rhs, t0 + direction * h0, y1)
    d2 = _rms((f1 - f0) / scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, span)


def _crossed(g_old: float, g_new: float, direction: int) -> bool:
    up = g_old < 0.0 <= g_new
    down = g_old > 0.0 >= g_new
    if direction > 0:
        return up
    if direction < 0:
        return down
    return up or down


def _locate_event(ev: Event, sol_step, t_lo, t_hi, g_lo, abs_tol):
    """Bisection on the dense output until |g| <= abs_tol."""
    t_a, t_b = t_lo, t_hi
    g_a = g_lo
    best = None
    for _ in range(200):
        t_m = 0.5 * (t_a + t_b)
        y_m = sol_step(t_m)
        g_m = float(ev.fn(t_m, y_m))
        best = (t_m, y_m, g_m)
        if abs(g_m) <= abs_tol or t_m in (t_a, t_b):
            break
        if (g_a < 0) == (g_m < 0) and g_m != 0.0:
            t_a, g_a = t_m, g_m
        else:
            t_b = t_m
    return best


def integrate(problem: IvpProblem, raise_on_failure: bool = True) -> IvpSolution:
    """Integrate ``problem`` with error-controlled Dormand-Prince steps.

    Raises
    ------
    StepFailure
        Step size fell below ``1e-14 * |t_end - t0|``.
    NonFiniteRhs
        The right-hand side produced a NaN or infinity.
    """
    rhs = problem.rhs
    rtol, atol = problem.rel_tol, problem.abs_tol
    t0, t_end = float(problem.t0), float(problem.t_end)
    direction = 1.0 if t_end > t0 else -1.0
    span = abs(t_end - t0)
    h_min = _UNDERFLOW * span

    t = t0
    y = np.array(problem.y0, dtype=float)
    f = _eval_rhs(rhs, t, y)
    ts = [t]
    ys = [y.copy()]
    steps: list = []
    events = problem.events
    g_prev = [float(ev.fn(t, y)) for ev in events]

    h = min(_initial_step(rhs, t, y, f, direction, span, rtol, atol), problem.max_step)
    err_prev = 1e-4
    n = y.size
    K = np.empty((7, n))
    rejected = False
    terminated_by = None

    while direction * (t_end - t) > 0:
        if h < h_min:
            sol = IvpSolution(np.array(ts), np.array(ys), "step-failure", steps)
            if raise_on_failure:
                raise StepFailure(f"step size underflow at t={t!r} (h={h:.3e})", partial=sol)
            return sol
        h = min(h, abs(t_end - t))
        hs = direction * h
        K[0] = f
        for i in range(1, 6):
            yi = y + hs * (_A[i] @ K[:i])
            K[i] = _eval_rhs(rhs, t + _C[i] * hs, yi)
        y_new = y + hs * (_B @ K[:6])
        t_new = t + hs if abs(t_end - (t + hs)) > 1e-15 * span else t_end
        f_new = _eval_rhs(rhs, t_new, y_new)
        K[6] = f_new
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = _rms(hs * (_E @ K) / scale)

        if err > 1.0:
            h *= max(_FAC_MIN, _SAFETY * err**-0.2)
            rejected = True
            continue

        Q = K.T @ _P
        steps.append((t, hs, y.copy(), Q))
        t_old, y_old = t, y
        t, y, f = t_new, y_new, f_new

        fired = None
        for j, ev in enumerate(events):
            g_new = float(ev.fn(t, y))
            if _crossed(g_prev[j], g_new, ev.direction) and ev.terminal:
                step = steps[-1]

                def dense(tq, step=step):
                    th = (tq - step[0]) / step[1]
                    return step[2] + step[1] * (step[3] @ np.array([th, th**2, th**3, th**4]))

                t_ev, y_ev, _ = _locate_event(ev, dense, t_old, t, g_prev[j], atol)
                if fired is None or direction * (t_ev - fired[1]) < 0:
                    fired = (j, t_ev, y_ev)
            g_prev[j] = g_new
        if fired is not None:
            j, t_ev, y_ev = fired
            if direction * (t_ev - ts[-1]) > 0:
                ts.append(t_ev)
                ys.append(np.asarray(y_ev))
            terminated_by = j
            break

        ts.append(t)
        ys.append(y.copy())

        if err == 0.0:
            fac = _FAC_MAX
        else:
            fac = _SAFETY * err**-_EXPO * err_prev**_BETA
            fac = min(_FAC_MAX, max(_FAC_MIN, fac))
        if rejected:
            fac = min(1.0, fac)
            rejected = False
        err_prev = max(err, 1e-4)
        h = min(h * fac, problem.max_step)

    return IvpSolution(np.array(ts), np.array(ys), terminated_by, steps)


def find_root(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12) -> float:
    """Root of ``f`` in ``[a, b]`` by Brent's method.

    ``f`` is only ever evaluated inside ``[a, b]``.
    """
    if not a < b:
        raise ValueError("need a < b")
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if fa * fb > 0:
        raise NoBracket(f"f(a)={fa!r} and f(b)={fb!r} have the same sign on [{a}, {b}]")
    xtol = 0.25 * tol
    rtol = max(0.25 * tol, 4 * np.finfo(float).eps)
    return float(brentq(f, a, b, xtol=xtol, rtol=rtol, maxiter=500))
