import math

import numpy as np
import numpy.testing as npt
import pytest

from onebit_mimo import RandomStream, SystemConfig, monte_carlo_rate
from onebit_mimo.experiments import (
    CSV_COLUMNS,
    CSV_VERSION,
    render_csv,
    run_antenna_comparison,
    run_power_scaling,
    run_rate_vs_power,
    write_csv,
)

CASE1_LIMIT_SUM = 4.8673703840264715
CASE2_LIMIT_SUM = 53.760289356703765


def small_rate_vs_power(trials=40, seed=3):
    return run_rate_vs_power(
        m_list=[8, 16], p_t_db_grid=[0.0, 10.0], k=4, trials=trials, seed=seed
    )


def test_empty_grids_rejected_before_io():
    with pytest.raises(ValueError):
        run_rate_vs_power(m_list=[], p_t_db_grid=[0.0])
    with pytest.raises(ValueError):
        run_rate_vs_power(m_list=[32], p_t_db_grid=[])
    with pytest.raises(ValueError):
        run_power_scaling(m_grid=[])
    with pytest.raises(ValueError):
        run_antenna_comparison(m_grid=[])


def test_csv_layout_and_determinism():
    rows = small_rate_vs_power()
    text1 = render_csv(rows, seed=3)
    text2 = render_csv(small_rate_vs_power(), seed=3)
    assert text1 == text2
    lines = text1.splitlines()
    assert lines[0] == f"# {CSV_VERSION}, seed=3"
    assert lines[1] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2 + len(rows)
    # unused columns stay empty on rate_vs_power rows
    assert lines[2].endswith(",,,")


def test_rate_vs_power_rows_match_direct_evaluation():
    rows = small_rate_vs_power()
    assert len(rows) == 4
    row = rows[-1]  # m=16, p_t = 10 dB
    cfg = SystemConfig(m=16, k=4, rho_p=10.0, p_t=10.0)
    direct = monte_carlo_rate(cfg, 40, RandomStream(3), mode="simulated")
    npt.assert_allclose(row.mc_sum_rate, direct.sum_rate, rtol=1e-12)
    npt.assert_allclose(row.mc_stderr, direct.sum_stderr, rtol=1e-12)
    assert row.scenario == "rate_vs_power"
    assert (row.case1_limit, row.case2_limit, row.conv_sum_rate) == (None, None, None)


def test_rate_vs_power_closed_form_anchor():
    rows = run_rate_vs_power(m_list=[128], p_t_db_grid=[10.0], trials=1, seed=0)
    npt.assert_allclose(rows[0].cf_sum_rate, 25.031825935288644, rtol=1e-12)


def test_power_scaling_limit_columns_and_effective_powers():
    rows = run_power_scaling(m_grid=[16, 64, 100], k=10, trials=2, seed=1)
    case1 = [r for r in rows if r.scenario == "power_scaling_case1"]
    case2 = [r for r in rows if r.scenario == "power_scaling_case2"]
    assert len(case1) == len(case2) == 3
    for r in case1:
        npt.assert_allclose(r.case1_limit, CASE1_LIMIT_SUM, rtol=1e-12)
        assert r.case2_limit is None
        npt.assert_allclose(r.rho_p_db, 10.0)
    for r in case2:
        npt.assert_allclose(r.case2_limit, CASE2_LIMIT_SUM, rtol=1e-12)
        assert r.case1_limit is None
    # M = 100: case 1 has P_t = E_t/M -> -10 dB; case 2 scales both by 1/sqrt(M)
    m100_c1 = [r for r in case1 if r.m == 100][0]
    npt.assert_allclose(m100_c1.p_t_db, -10.0, atol=1e-12)
    m100_c2 = [r for r in case2 if r.m == 100][0]
    npt.assert_allclose(m100_c2.p_t_db, 0.0, atol=1e-12)
    npt.assert_allclose(m100_c2.rho_p_db, 0.0, atol=1e-12)


def test_power_scaling_case1_closed_form_monotone_toward_limit():
    rows = run_power_scaling(m_grid=[16, 64, 256, 1024], k=10, trials=1, seed=1)
    cf = [r.cf_sum_rate for r in rows if r.scenario == "power_scaling_case1"]
    assert all(a < b for a, b in zip(cf, cf[1:]))
    assert all(v < CASE1_LIMIT_SUM for v in cf)


def test_antenna_comparison_rows_and_crossing():
    rows, crossing = run_antenna_comparison(m_grid=[100, 114, 283], target_sum_rate=35.0)
    assert (crossing.one_bit_m, crossing.conventional_m) == (283, 115)
    for r in rows:
        assert r.conv_sum_rate > r.cf_sum_rate
        assert r.trials == 0 and r.mc_sum_rate is None
    by_m = {r.m: r for r in rows}
    # both systems sit within 0.15 bits/s/Hz of the 35 bits/s/Hz mark
    assert abs(by_m[283].cf_sum_rate - 35.0) < 0.15
    assert abs(by_m[114].conv_sum_rate - 35.0) < 0.15


def test_crossing_encoded_in_csv_comment():
    rows, crossing = run_antenna_comparison(m_grid=[100], target_sum_rate=35.0)
    text = render_csv(rows, seed=0, crossing=crossing)
    assert "# crossing target_sum_rate=35 one_bit_m=283 conventional_m=115" in text


def test_write_csv_roundtrip_and_path_context(tmp_path):
    rows = small_rate_vs_power(trials=5)
    out = tmp_path / "sweep.csv"
    write_csv(str(out), rows, seed=3)
    assert out.read_text() == render_csv(rows, seed=3)
    bad = tmp_path / "missing_dir" / "sweep.csv"
    with pytest.raises(OSError, match="missing_dir"):
        write_csv(str(bad), rows, seed=3)


def test_doubling_trials_is_consistent():
    cfg_kwargs = dict(m_list=[16], p_t_db_grid=[10.0], k=4, seed=5)
    r1 = run_rate_vs_power(trials=200, **cfg_kwargs)[0]
    r2 = run_rate_vs_power(trials=400, **cfg_kwargs)[0]
    combined_se = math.hypot(r1.mc_stderr, r2.mc_stderr)
    assert abs(r1.mc_sum_rate - r2.mc_sum_rate) < 3 * combined_se
