"""Radiative shock profiles computed as heteroclinic orbits of a planar reduction."""

from __future__ import annotations

from .errors import NumericalError, RadShockError, UnsupportedRegime, ValidationError
from .gasdynamics import GasParams, RadiationParams, ShockData, build_shock, shock_from_states
from .phaseplane import HeteroclinicOrbit, connect
from .profile import ShockProfile, detect_spike, jump_admissibility, reconstruct, verify
from .reduction import ReducedSystem, RegimeReport, classify, reduce_hamer, reduce_radhydro
from .solver import Solution, Tolerances, solve

__version__ = "0.1.0"

__all__ = [
    "GasParams",
    "RadiationParams",
    "ShockData",
    "build_shock",
    "shock_from_states",
    "ReducedSystem",
    "RegimeReport",
    "reduce_radhydro",
    "reduce_hamer",
    "classify",
    "HeteroclinicOrbit",
    "connect",
    "ShockProfile",
    "reconstruct",
    "detect_spike",
    "verify",
    "jump_admissibility",
    "Solution",
    "Tolerances",
    "solve",
    "RadShockError",
    "ValidationError",
    "NumericalError",
    "UnsupportedRegime",
]
