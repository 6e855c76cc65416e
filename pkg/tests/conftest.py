"""Shared fixtures. The nanosecond preset runs ~1.2M steps, so the standard
trajectories are computed once per session and reused across modules."""

import math
from dataclasses import replace

import pytest

from pulsekick import experiments

KICK_WIDTHS = (0.1e-12, 0.5e-12, 1e-12)


@pytest.fixture(scope="session")
def fig1_pi_traj():
    return experiments.run(experiments.scenario_adiabatic(math.pi))


@pytest.fixture(scope="session")
def fig1_pi_traj_rk4():
    cfg = replace(experiments.scenario_adiabatic(math.pi), method="rk4")
    return experiments.run(cfg)


@pytest.fixture(scope="session")
def fig1_pihalf_traj():
    return experiments.run(experiments.scenario_adiabatic(math.pi / 2))


@pytest.fixture(scope="session")
def kick_trajs():
    """Picosecond presets (carrier on), keyed by width."""
    return {
        w: experiments.run(experiments.scenario_kick(w)) for w in KICK_WIDTHS
    }
