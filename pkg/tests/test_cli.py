import subprocess
import sys

import pytest

from onebit_mimo.cli import load_config_file, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rate_prints_closed_form_anchor(capsys):
    code, out, _ = run_cli(capsys, "rate", "--m", "283", "--k", "10", "--rho-p-db", "10",
                           "--pt-db", "10", "--trials", "10")
    assert code == 0
    assert "closed_form" in out and "sum_rate=35.0127" in out
    assert "use_and_forget" in out and "conventional" in out and "monte_carlo" in out


def test_plan_prints_antenna_requirements(capsys):
    code, out, _ = run_cli(capsys, "plan", "--target-per-user", "3.5")
    assert code == 0
    assert "one_bit       m=283" in out
    assert "conventional  m=115" in out
    code, out, _ = run_cli(capsys, "plan", "--target-per-user", "3.49")
    assert code == 0
    assert "conventional  m=114" in out


def test_unknown_flag_exits_2(capsys):
    assert run_cli(capsys, "rate", "--m", "8", "--bogus")[0] == 2
    assert run_cli(capsys, "transmogrify")[0] == 2


def test_missing_required_argument_exits_2(capsys):
    code, _, err = run_cli(capsys, "rate", "--trials", "5")
    assert code == 2
    assert "--m" in err


def test_invalid_service_arguments_exit_2(capsys):
    code, _, err = run_cli(capsys, "rate", "--m", "0", "--trials", "5")
    assert code == 2
    assert "invalid arguments" in err


def test_help_exits_zero(capsys):
    assert run_cli(capsys, "--help")[0] == 0


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scenario\nm = 283\npt-db = 10\ntrials = 10\n")
    code, out, _ = run_cli(capsys, "rate", "--config", str(cfg))
    assert code == 0
    assert "sum_rate=35.0127" in out


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("m = 283\ntrials = 10\n")
    code, out, _ = run_cli(capsys, "rate", "--m", "128", "--config", str(cfg))
    assert code == 0
    assert "M=128" in out and "sum_rate=25.0318" in out


def test_bad_config_exits_2(tmp_path, capsys):
    missing = tmp_path / "nope.cfg"
    assert run_cli(capsys, "rate", "--m", "8", "--config", str(missing))[0] == 2
    bad_key = tmp_path / "bad.cfg"
    bad_key.write_text("warp_factor = 9\n")
    code, _, err = run_cli(capsys, "rate", "--m", "8", "--config", str(bad_key))
    assert code == 2
    assert "warp_factor" in err


def test_config_parser_accepts_both_separators(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("m: 64\nrho-p-db = 10  # inline comment\n")
    assert load_config_file(str(cfg)) == {"m": "64", "rho_p_db": 10.0}


def test_negative_power_grid_uses_equals_form(tmp_path, capsys):
    out = tmp_path / "neg.csv"
    code, _, _ = run_cli(capsys, "rate-vs-power", "--m", "8", "--pt-db=-10,-5",
                         "--k", "2", "--trials", "2", "--out", str(out))
    assert code == 0
    assert ",-10," in out.read_text()
    # without the = form, argparse reads the leading dash as an option: usage error
    assert run_cli(capsys, "rate-vs-power", "--m", "8", "--pt-db", "-10,-5",
                   "--k", "2", "--trials", "2", "--out", str(out))[0] == 2


def test_sweep_writes_deterministic_csv(tmp_path, capsys):
    args = ["rate-vs-power", "--m", "8", "--pt-db", "0,10", "--k", "4",
            "--trials", "8", "--seed", "7"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(capsys, *args, "--out", str(out1))[0] == 0
    assert run_cli(capsys, *args, "--out", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("# onebit-mimo-sim v1, seed=7\n")


def test_unwritable_output_exits_1(tmp_path, capsys):
    target = tmp_path / "no_such_dir" / "x.csv"
    code, _, err = run_cli(capsys, "antenna-comparison", "--m", "100",
                           "--out", str(target))
    assert code == 1
    assert "no_such_dir" in err


def test_antenna_comparison_reports_crossing(tmp_path, capsys):
    out = tmp_path / "ac.csv"
    code, stdout, _ = run_cli(capsys, "antenna-comparison", "--m", "100,283",
                              "--out", str(out))
    assert code == 0
    assert "one_bit m=283" in stdout and "conventional m=115" in stdout
    assert "# crossing" in out.read_text()


def test_power_scaling_sweep(tmp_path, capsys):
    out = tmp_path / "ps.csv"
    code, stdout, _ = run_cli(capsys, "power-scaling", "--m", "4,16", "--k", "2",
                              "--trials", "4", "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert "power_scaling_case1" in text and "power_scaling_case2" in text


def test_module_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "onebit_mimo.cli", "plan", "--target-per-user", "1.0"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "one_bit       m=28" in proc.stdout
