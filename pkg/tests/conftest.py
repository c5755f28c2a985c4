from __future__ import annotations

import functools

import pytest

from radshock import GasParams, RadiationParams, build_shock, reduce_hamer, reduce_radhydro, solve

GAS = GasParams(5.0 / 3.0, 8.31)
RAD = RadiationParams(sigma=1.0, sigma_s=1.0, tau=1.0, alpha=2.0)
RHO_MINUS = 0.1


def radhydro(delta: float, Uc: float, gamma: float = 5.0 / 3.0, R: float = 8.31,
             rad: RadiationParams = RAD, rho_minus: float = RHO_MINUS):
    return reduce_radhydro(build_shock(GasParams(gamma, R), rho_minus, Uc, delta), rad)


def hamer_linear(jump: float, sigma: float = 1.0):
    # u- = jump/2, u+ = -jump/2, so c = 0
    return reduce_hamer(0.5 * jump, -0.5 * jump, sigma, 1)


@functools.lru_cache(maxsize=None)
def solved_radhydro(delta: float, Uc: float, tau: float = 1.0):
    rad = RadiationParams(sigma=1.0, sigma_s=1.0, tau=tau, alpha=2.0)
    return solve(radhydro(delta, Uc, rad=rad))


@functools.lru_cache(maxsize=None)
def solved_hamer(jump: float):
    return solve(hamer_linear(jump))


@pytest.fixture
def grid_case():
    return solved_radhydro
