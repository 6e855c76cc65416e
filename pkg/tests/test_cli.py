import csv
import json
import math
import os

import pytest

from pulsekick import cli


def run_cli(*argv):
    return cli.main(list(argv))


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestConfigParsing:
    def test_unknown_key_names_key_and_line(self):
        with pytest.raises(cli.ConfigError, match=r"line 2.*'bogus'"):
            cli.parse_config_text("scenario = kick\nbogus = 1\n")

    def test_bad_number_names_key(self):
        with pytest.raises(cli.ConfigError, match="width_ps"):
            cli.parse_config_text("width_ps = fast\n")

    def test_bad_choice_lists_options(self):
        with pytest.raises(cli.ConfigError, match="magnus2, rk4"):
            cli.parse_config_text("method = euler\n")

    def test_comments_and_blank_lines_ignored(self):
        out = cli.parse_config_text("# header\n\nwidth_ps = 0.1  # tail\n")
        assert out == {"width_ps": 0.1}

    def test_missing_equals_rejected(self):
        with pytest.raises(cli.ConfigError, match="line 1"):
            cli.parse_config_text("width_ps 0.1\n")

    def test_area_and_amplitude_exclusive(self):
        with pytest.raises(cli.ConfigError, match="mutually exclusive"):
            cli.build_run_config({"area_rad": 1.0, "amplitude_vpm": 1.0})

    def test_custom_scenario_requires_width(self):
        with pytest.raises(cli.ConfigError, match="width_ps"):
            cli.build_run_config({"area_rad": 1.0})

    def test_dump_config_round_trips(self):
        cfg = cli.build_run_config({"scenario": "kick", "width_ps": 0.5})
        again = cli.build_run_config(cli.parse_config_text(cli.dump_config(cfg)))
        assert again == cfg

    def test_negative_width_rejected_at_conversion(self):
        cfg = cli.build_run_config(
            {"scenario": "kick", "width_ps": -0.1}
        )
        with pytest.raises(cli.ConfigError, match="width_ps"):
            cli.to_scenario(cfg)


class TestExitCodes:
    def test_no_config_or_preset(self, capsys):
        assert run_cli("simulate") == 2
        assert "config error" in capsys.readouterr().err

    def test_unknown_preset(self, capsys):
        assert run_cli("simulate", "--preset", "fig9") == 2
        assert "fig9" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.cfg")
        assert run_cli("simulate", "--config", missing) == 2
        assert "nope.cfg" in capsys.readouterr().err

    def test_bad_config_value(self, tmp_path, capsys):
        path = write_config(tmp_path, "scenario = kick\nwidth_ps = 0\n")
        assert run_cli("simulate", "--config", path) == 2
        assert "width_ps" in capsys.readouterr().err

    def test_norm_drift_exits_3(self, tmp_path, capsys):
        # rk4 far outside its stability envelope on a narrow pulse
        path = write_config(
            tmp_path,
            "scenario = kick\nwidth_ps = 0.1\ncarrier = off\n"
            "dt_ps = 0.033\nmethod = rk4\n",
        )
        assert run_cli("simulate", "--config", path, "--out", str(tmp_path)) == 3
        assert "numerical failure" in capsys.readouterr().err


class TestSimulate:
    def test_dump_config_prints_and_writes_nothing(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert (
            run_cli(
                "simulate", "--preset", "fig2-0.5ps", "--dump-config",
                "--out", str(out),
            )
            == 0
        )
        text = capsys.readouterr().out
        assert "scenario = kick" in text and "width_ps = 0.5" in text
        assert not out.exists()

    def test_kick_preset_outputs(self, tmp_path):
        out = str(tmp_path / "out")
        assert run_cli("simulate", "--preset", "fig2-0.5ps", "--out", out) == 0
        with open(os.path.join(out, "trajectory.csv")) as fh:
            rows = list(csv.DictReader(fh))
        assert tuple(rows[0]) == cli.CSV_COLUMNS
        assert float(rows[0]["t"]) == 0.0
        assert float(rows[-1]["t"]) == pytest.approx(10e-12, rel=1e-12)
        assert float(rows[0]["sz"]) == pytest.approx(1.0, abs=1e-12)
        for row in rows[:: max(1, len(rows) // 50)]:
            norm = (
                float(row["re_a0"]) ** 2
                + float(row["im_a0"]) ** 2
                + float(row["re_a1"]) ** 2
                + float(row["im_a1"]) ** 2
            )
            assert norm == pytest.approx(1.0, abs=1e-9)
        with open(os.path.join(out, "summary.json")) as fh:
            summary = json.load(fh)
        assert summary["regime"] == "diabatic"
        assert summary["params"]["width_s"] == pytest.approx(0.5e-12)
        assert 0 <= summary["final_fidelity"] <= 1
        assert "final_fidelity_carrier_off" in summary
        assert summary["final_fidelity_carrier_off"] == pytest.approx(
            0.99989, abs=2e-4
        )
        assert not [f for f in os.listdir(out) if f.endswith(".tmp")]

    def test_auto_stride_caps_rows_and_keeps_last(self, tmp_path):
        out = str(tmp_path / "out")
        path = write_config(
            tmp_path, "scenario = kick\nwidth_ps = 0.1\nt_end_ps = 10\n"
        )
        assert run_cli("simulate", "--config", path, "--out", out) == 0
        with open(os.path.join(out, "trajectory.csv")) as fh:
            rows = list(csv.DictReader(fh))
        # ~1e6 integration samples are decimated to roughly the target size
        assert len(rows) <= 2 * cli.AUTO_STRIDE_ROWS
        assert float(rows[-1]["t"]) == pytest.approx(10e-12, rel=1e-12)

    def test_rotating_frame_freezes_free_precession(self, tmp_path):
        out = str(tmp_path / "out")
        path = write_config(
            tmp_path,
            "width_ps = 100\narea_rad = 0\ncenter_ps = 300\n"
            "t_end_ps = 600\ndt_ps = 0.01\nframe = rotating\n",
        )
        assert run_cli("simulate", "--config", path, "--out", out) == 0
        with open(os.path.join(out, "trajectory.csv")) as fh:
            rows = list(csv.DictReader(fh))
        # |0> under zero drive is static in the co-rotating frame
        for row in rows[:: max(1, len(rows) // 20)]:
            assert float(row["im_a0"]) == pytest.approx(0.0, abs=1e-9)
            assert float(row["sz"]) == pytest.approx(1.0, abs=1e-9)

    def test_method_flag_overrides(self, tmp_path, capsys):
        assert (
            run_cli(
                "simulate", "--preset", "fig2-0.5ps", "--method", "rk4",
                "--dump-config",
            )
            == 0
        )
        assert "method = rk4" in capsys.readouterr().out


class TestSweep:
    def test_single_width_matches_simulate(self, tmp_path):
        out = str(tmp_path / "out")
        assert (
            run_cli(
                "sweep", "--preset", "fig2-0.5ps", "--widths-ps", "0.5",
                "--out", out,
            )
            == 0
        )
        with open(os.path.join(out, "sweep.csv")) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 1
        assert float(rows[0]["width_ps"]) == 0.5
        assert rows[0]["regime"] == "diabatic"

        sim_out = str(tmp_path / "sim")
        run_cli("simulate", "--preset", "fig2-0.5ps", "--out", sim_out)
        with open(os.path.join(sim_out, "summary.json")) as fh:
            summary = json.load(fh)
        assert float(rows[0]["fidelity"]) == pytest.approx(
            summary["final_fidelity"], abs=1e-12
        )

    def test_bad_width_list(self, capsys):
        assert (
            run_cli("sweep", "--preset", "fig2-0.5ps", "--widths-ps", "0.5,-1")
            == 2
        )
        assert "widths_ps" in capsys.readouterr().err


class TestCompareKick:
    def test_carrier_on_rejected(self, capsys):
        assert (
            run_cli(
                "compare-kick", "--widths-ps", "0.1", "--carrier", "on"
            )
            == 2
        )
        assert "carrier" in capsys.readouterr().err

    def test_zero_area_deviation_vanishes(self, tmp_path):
        out = str(tmp_path / "out")
        path = write_config(
            tmp_path, "scenario = kick\nwidth_ps = 0.1\narea_rad = 0\n"
        )
        assert (
            run_cli(
                "compare-kick", "--config", path, "--widths-ps", "0.1,0.5",
                "--out", out,
            )
            == 0
        )
        with open(os.path.join(out, "kick_comparison.csv")) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 2
        for row in rows:
            assert float(row["deviation"]) <= 1e-9

    def test_default_run_monotone_deviation(self, tmp_path):
        out = str(tmp_path / "out")
        assert (
            run_cli(
                "compare-kick", "--widths-ps", "1,0.3,0.1", "--out", out
            )
            == 0
        )
        with open(os.path.join(out, "kick_comparison.csv")) as fh:
            rows = list(csv.DictReader(fh))
        devs = [float(r["deviation"]) for r in rows]
        assert devs[0] > devs[1] > devs[2]
        taus = [float(r["omega0_tau"]) for r in rows]
        assert taus[0] == pytest.approx(
            2 * math.pi * 4.5e9 * 1e-12, rel=1e-12
        )


class TestCalibrate:
    def test_nanosecond_pi_pulse_report(self, capsys):
        assert run_cli("calibrate", "--width-ps", "23000") == 0
        out = dict(
            line.split(" = ")
            for line in capsys.readouterr().out.strip().splitlines()
        )
        assert float(out["peak_field_v_per_m"]) == pytest.approx(
            0.0270896, rel=1e-4
        )
        assert float(out["peak_rabi_mhz"]) == pytest.approx(12.3, abs=0.1)
        assert float(out["peak_voltage_v"]) == pytest.approx(
            5.4179e-7, rel=1e-4
        )
        assert out["regime"] == "adiabatic"
        # nanosecond resonant pulse transfers no net kick area
        assert float(out["effective_kick_area_rad"]) == 0.0

    def test_zero_area_allowed(self, capsys):
        assert run_cli("calibrate", "--width-ps", "0.1", "--area-rad", "0") == 0
        out = dict(
            line.split(" = ")
            for line in capsys.readouterr().out.strip().splitlines()
        )
        assert float(out["peak_field_v_per_m"]) == 0.0
        assert float(out["peak_voltage_v"]) == 0.0
        assert out["regime"] == "diabatic"

    def test_bad_width_exits_2(self, capsys):
        assert run_cli("calibrate", "--width-ps", "0") == 2
        assert "width_ps" in capsys.readouterr().err
