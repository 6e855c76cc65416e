import math

import numpy as np
import pytest

from pulsekick import (
    DEFAULT_QUBIT,
    HBAR,
    classify_regime,
    kick_vs_analytic,
    rabi_doubling_check,
    scenario_adiabatic,
    scenario_kick,
    sweep_tau,
)
from pulsekick.experiments import default_time_step

from conftest import KICK_WIDTHS

OMEGA0 = DEFAULT_QUBIT.omega0


class TestRegime:
    def test_nanosecond_preset_is_adiabatic(self):
        # omega0 * tau ~ 650
        assert classify_regime(DEFAULT_QUBIT, 23e-9) == "adiabatic"

    def test_subpicosecond_is_diabatic(self):
        # omega0 * tau ~ 2.8e-3
        assert classify_regime(DEFAULT_QUBIT, 0.1e-12) == "diabatic"

    def test_boundary_widths_are_intermediate(self):
        for x in (0.1, 1.0, 10.0):
            assert classify_regime(DEFAULT_QUBIT, x / OMEGA0) == "intermediate"

    def test_monotone_in_width(self):
        order = {"diabatic": 0, "intermediate": 1, "adiabatic": 2}
        widths = np.geomspace(1e-14, 1e-7, 30)
        tags = [order[classify_regime(DEFAULT_QUBIT, w)] for w in widths]
        assert tags == sorted(tags)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(ValueError):
            classify_regime(DEFAULT_QUBIT, 0.0)


class TestPresets:
    def test_adiabatic_structure(self):
        cfg = scenario_adiabatic(math.pi)
        assert cfg.pulse.width == 23e-9
        assert cfg.pulse.center == pytest.approx(3 * 23e-9)
        assert cfg.pulse.carrier_enabled
        assert cfg.pulse.carrier_frequency == OMEGA0
        assert cfg.grid.t_end == pytest.approx(6 * 23e-9)
        assert cfg.initial.a0 == 1.0

    def test_adiabatic_peak_rabi(self):
        cfg = scenario_adiabatic(math.pi)
        peak = DEFAULT_QUBIT.dipole_moment * cfg.pulse.amplitude / HBAR
        assert peak / (2 * math.pi * 1e6) == pytest.approx(12.3, abs=0.1)

    def test_adiabatic_rejects_bad_area(self):
        with pytest.raises(ValueError):
            scenario_adiabatic(0.0)

    def test_kick_structure(self):
        cfg = scenario_kick(0.1e-12)
        assert cfg.pulse.center == 5e-12
        assert cfg.grid.t_end == 10e-12
        assert cfg.pulse.carrier_enabled
        off = scenario_kick(0.1e-12, carrier_enabled=False)
        assert not off.pulse.carrier_enabled
        # same envelope either way
        assert off.pulse.amplitude == cfg.pulse.amplitude

    def test_kick_rejects_bad_width(self):
        with pytest.raises(ValueError):
            scenario_kick(-1e-12)

    def test_default_step_switches_limits(self):
        cfg = scenario_adiabatic(math.pi)
        # nanosecond pulse: carrier period limits the step
        assert default_time_step(cfg.qubit, cfg.pulse) == pytest.approx(
            2 * math.pi / OMEGA0 / 2000
        )
        narrow = scenario_kick(0.1e-12)
        # sub-picosecond pulse: envelope width limits the step
        assert default_time_step(narrow.qubit, narrow.pulse) == pytest.approx(
            0.1e-12 / 100
        )


class TestSweep:
    def test_rows_follow_input_order(self, kick_trajs):
        base = scenario_kick(0.5e-12)
        res = sweep_tau(base, KICK_WIDTHS)
        assert tuple(r.width for r in res.rows) == KICK_WIDTHS
        # rows agree with standalone runs of the same scenarios
        for row, w in zip(res.rows, KICK_WIDTHS):
            traj = kick_trajs[w]
            standalone = float(abs(traj.amplitudes[-1, 1]) ** 2)
            assert row.fidelity == pytest.approx(standalone, abs=1e-12)
            assert row.regime == classify_regime(DEFAULT_QUBIT, w)

    def test_permuting_widths_permutes_rows(self):
        base = scenario_kick(0.5e-12)
        fwd = sweep_tau(base, [0.5e-12, 1e-12])
        rev = sweep_tau(base, [1e-12, 0.5e-12])
        assert fwd.rows[0] == rev.rows[1]
        assert fwd.rows[1] == rev.rows[0]

    def test_area_preserved_across_widths(self):
        base = scenario_kick(0.5e-12)
        res = sweep_tau(base, [0.2e-12, 1e-12])
        for row in res.rows:
            # carrier suppression only: |effective| <= pi/2, approaching it
            # as the pulse narrows
            assert abs(row.effective_area) <= math.pi / 2 + 1e-12
        assert abs(res.rows[0].effective_area) > abs(res.rows[1].effective_area)

    def test_rejects_empty_or_bad_widths(self):
        base = scenario_kick(0.5e-12)
        with pytest.raises(ValueError):
            sweep_tau(base, [])
        with pytest.raises(ValueError):
            sweep_tau(base, [1e-12, 0.0])


class TestKickVsAnalytic:
    def test_zero_area_matches_free_precession(self):
        assert kick_vs_analytic(0.1e-12, 0.0) <= 1e-9

    def test_deviation_shrinks_with_width(self):
        devs = [kick_vs_analytic(w, math.pi / 2) for w in (1e-12, 0.3e-12, 0.1e-12)]
        assert devs[0] > devs[1] > devs[2]

    def test_deviation_scale_linear_in_width(self):
        # leading correction is first order in omega0 * tau
        d1 = kick_vs_analytic(0.1e-12, math.pi / 2)
        d2 = kick_vs_analytic(0.2e-12, math.pi / 2)
        assert d2 / d1 == pytest.approx(2.0, rel=0.05)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            kick_vs_analytic(0.0, 1.0)
        with pytest.raises(ValueError):
            kick_vs_analytic(1e-12, -1.0)


class TestRabiDoubling:
    def test_half_pi_area(self):
        p1_kick, p1_rwa = rabi_doubling_check(math.pi / 2)
        # kick: sin^2(pi/2) = 1; half-angle rotation: sin^2(pi/4) = 1/2
        assert p1_kick == pytest.approx(1.0, abs=1e-4)
        assert p1_rwa == pytest.approx(0.5, abs=1e-12)

    def test_quarter_pi_area(self):
        p1_kick, p1_rwa = rabi_doubling_check(math.pi / 4)
        assert p1_kick == pytest.approx(0.5, abs=1e-3)
        assert p1_rwa == pytest.approx(math.sin(math.pi / 8) ** 2, abs=1e-12)

    def test_rejects_out_of_range_area(self):
        with pytest.raises(ValueError):
            rabi_doubling_check(0.0)
        with pytest.raises(ValueError):
            rabi_doubling_check(math.pi)
