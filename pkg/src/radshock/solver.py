"""One-call pipeline: reduction, classification, connection, profile and checks."""

from __future__ import annotations

from dataclasses import dataclass

from .phaseplane import (
    DEFAULT_OFFSET,
    DEFAULT_ROOT_TOL,
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    DEFAULT_TOL_CONNECT,
    HeteroclinicOrbit,
    connect,
)
from .profile import (
    JumpAdmissibility,
    ResidualReport,
    ShockProfile,
    SpikeInfo,
    detect_spike,
    jump_admissibility,
    reconstruct,
    verify,
)
from .reduction import ReducedSystem, RegimeReport, classify


@dataclass(frozen=True)
class Tolerances:
    integration: float = DEFAULT_TOL
    matching: float = DEFAULT_ROOT_TOL
    connection: float = DEFAULT_TOL_CONNECT

    def __post_init__(self):
        for name in ("integration", "matching", "connection"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} tolerance must lie in (0, 1), got {v}")


@dataclass
class Solution:
    report: RegimeReport
    orbit: HeteroclinicOrbit
    profile: ShockProfile
    spike: SpikeInfo | None
    residuals: ResidualReport
    admissibility: JumpAdmissibility | None

    @property
    def is_jump(self) -> bool:
        return self.orbit.is_jump

    def summary(self) -> dict:
        p = self.profile
        jump = None
        if p.jump is not None:
            jump = {"xi": p.jump.xi, "left": dict(p.jump.left), "right": dict(p.jump.right)}
        adm = None
        if self.admissibility is not None:
            a = self.admissibility
            adm = {
                "U_left": a.U_left,
                "U_right": a.U_right,
                "above_mean": a.above_mean,
                "below_twice_mean": a.below_twice_mean,
                "symmetric": a.symmetric,
                "x_left_in_range": a.x_left_in_range,
                "ok": a.ok,
            }
        return {
            "regime": self.report.as_dict(),
            "connection": self.orbit.connection.as_dict(),
            "jump": jump,
            "spike": self.spike.as_dict() if self.spike is not None else None,
            "residuals": self.residuals.as_dict(),
            "jump_admissibility": adm,
            "tail_gap": list(self.orbit.tail_gap),
            "n_samples": int(len(p.xi)),
        }


def solve(
    rs: ReducedSystem,
    tolerances: Tolerances | None = None,
    n_samples: int = DEFAULT_SAMPLES,
    zeta_max: float | None = None,
    offset: float = DEFAULT_OFFSET,
) -> Solution:
    tol = tolerances or Tolerances()
    report = classify(rs)
    orbit = connect(
        rs,
        tol=tol.integration,
        tol_connect=tol.connection,
        offset=offset,
        n_samples=n_samples,
        zeta_max=zeta_max,
        root_tol=tol.matching,
    )
    prof = reconstruct(orbit)
    spike = detect_spike(prof)
    residuals = verify(prof)
    adm = jump_admissibility(prof) if prof.jump is not None and prof.is_radhydro else None
    return Solution(report, orbit, prof, spike, residuals, adm)
