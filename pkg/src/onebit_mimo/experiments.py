"""Scenario sweeps behind the three standard experiment CSVs.

Every sweep emits rows in one fixed schema (missing fields stay empty), with a
versioned comment header so downstream plotting can refuse stale files:

    # onebit-mimo-sim v1, seed=<seed>
    scenario,m,k,rho_p_db,p_t_db,trials,mc_sum_rate,mc_stderr,cf_sum_rate,...

Sweeps are deterministic under a fixed seed: grid points derive their trial
substreams from the seed alone, never from execution order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

from .config import SystemConfig, db_to_linear
from .downlink import (
    case1_rate_limit,
    case2_rate_limit,
    closed_form_rate,
    conventional_rate,
    monte_carlo_rate,
    required_antennas,
)
from .numerics import RandomStream

CSV_VERSION = "onebit-mimo-sim v1"
CSV_COLUMNS = (
    "scenario",
    "m",
    "k",
    "rho_p_db",
    "p_t_db",
    "trials",
    "mc_sum_rate",
    "mc_stderr",
    "cf_sum_rate",
    "conv_sum_rate",
    "case1_limit",
    "case2_limit",
)


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a sweep; unused numeric fields are None."""

    scenario: str
    m: int
    k: int
    rho_p_db: float
    p_t_db: float
    trials: int = 0
    mc_sum_rate: float | None = None
    mc_stderr: float | None = None
    cf_sum_rate: float | None = None
    conv_sum_rate: float | None = None
    case1_limit: float | None = None
    case2_limit: float | None = None


@dataclass(frozen=True)
class CrossingReport:
    """Smallest antenna counts reaching a target sum rate, per system."""

    target_sum_rate: float
    one_bit_m: int
    conventional_m: int


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def render_csv(rows: list[SweepRow], seed: int, crossing: CrossingReport | None = None) -> str:
    """Serialize sweep rows to the versioned CSV text."""
    out = io.StringIO()
    out.write(f"# {CSV_VERSION}, seed={seed}\n")
    if crossing is not None:
        out.write(
            f"# crossing target_sum_rate={_fmt(crossing.target_sum_rate)} "
            f"one_bit_m={crossing.one_bit_m} conventional_m={crossing.conventional_m}\n"
        )
    out.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        out.write(",".join(_fmt(getattr(row, col)) for col in CSV_COLUMNS) + "\n")
    return out.getvalue()


def write_csv(
    path: str, rows: list[SweepRow], seed: int, crossing: CrossingReport | None = None
) -> None:
    text = render_csv(rows, seed, crossing)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as exc:
        raise OSError(f"failed to write sweep CSV to {path!r}: {exc}") from exc


def run_rate_vs_power(
    m_list: list[int],
    p_t_db_grid: list[float],
    k: int = 10,
    rho_p_db: float = 10.0,
    trials: int = 2000,
    seed: int = 0,
    mode: str = "simulated",
    threads: int = 1,
) -> list[SweepRow]:
    """Sum rate versus total transmit power, Monte-Carlo next to closed form.

    One row per (M, P_t) pair, Monte-Carlo first so the estimate and the
    closed form land in the same row.
    """
    if not m_list or not p_t_db_grid:
        raise ValueError("m_list and p_t_db_grid must be non-empty")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rho_p = db_to_linear(rho_p_db)
    rows = []
    for m in m_list:
        for p_t_db in p_t_db_grid:
            cfg = SystemConfig(m=m, k=k, rho_p=rho_p, p_t=db_to_linear(p_t_db))
            mc = monte_carlo_rate(cfg, trials, RandomStream(seed), mode=mode, threads=threads)
            rows.append(
                SweepRow(
                    scenario="rate_vs_power",
                    m=m,
                    k=k,
                    rho_p_db=rho_p_db,
                    p_t_db=p_t_db,
                    trials=trials,
                    mc_sum_rate=mc.sum_rate,
                    mc_stderr=mc.sum_stderr,
                    cf_sum_rate=closed_form_rate(cfg).sum_rate,
                )
            )
    return rows


def run_power_scaling(
    m_grid: list[int],
    e_t_db: float = 10.0,
    e_u_db: float = 10.0,
    rho_p_db: float = 10.0,
    k: int = 10,
    trials: int = 2000,
    seed: int = 0,
    mode: str = "simulated",
    threads: int = 1,
) -> list[SweepRow]:
    """Sum rate versus M under the two power-scaling regimes.

    Case 1 fixes the training power and scales P_t = E_t / M; case 2 scales
    both powers as 1/sqrt(M). Each M yields one row per case, carrying the
    effective dB powers actually used plus the constant asymptote column.
    """
    if not m_grid:
        raise ValueError("m_grid must be non-empty")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    e_t = db_to_linear(e_t_db)
    e_u = db_to_linear(e_u_db)
    rho_p1 = db_to_linear(rho_p_db)
    rows = []
    for m in m_grid:
        for case, rho_p, p_t, limit_per_user in (
            ("power_scaling_case1", rho_p1, e_t / m, case1_rate_limit(rho_p1, e_t, k)),
            ("power_scaling_case2", e_u / math.sqrt(m), e_t / math.sqrt(m), case2_rate_limit(e_u, e_t)),
        ):
            cfg = SystemConfig(m=m, k=k, rho_p=rho_p, p_t=p_t)
            mc = monte_carlo_rate(cfg, trials, RandomStream(seed), mode=mode, threads=threads)
            limits = {
                "case1_limit": k * limit_per_user if case.endswith("case1") else None,
                "case2_limit": k * limit_per_user if case.endswith("case2") else None,
            }
            rows.append(
                SweepRow(
                    scenario=case,
                    m=m,
                    k=k,
                    rho_p_db=10.0 * math.log10(rho_p),
                    p_t_db=10.0 * math.log10(p_t),
                    trials=trials,
                    mc_sum_rate=mc.sum_rate,
                    mc_stderr=mc.sum_stderr,
                    cf_sum_rate=closed_form_rate(cfg).sum_rate,
                    **limits,
                )
            )
    return rows


def run_antenna_comparison(
    m_grid: list[int],
    k: int = 10,
    rho_p_db: float = 10.0,
    p_t_db: float = 10.0,
    target_sum_rate: float = 35.0,
) -> tuple[list[SweepRow], CrossingReport]:
    """One-bit versus ideal-DAC sum rate per M, plus the crossing report.

    Both curves are analytic, so no trials are involved; the crossing report
    gives the smallest M per system whose sum rate reaches the target.
    """
    if not m_grid:
        raise ValueError("m_grid must be non-empty")
    rho_p = db_to_linear(rho_p_db)
    p_t = db_to_linear(p_t_db)
    rows = []
    for m in m_grid:
        cfg = SystemConfig(m=m, k=k, rho_p=rho_p, p_t=p_t)
        rows.append(
            SweepRow(
                scenario="antenna_comparison",
                m=m,
                k=k,
                rho_p_db=rho_p_db,
                p_t_db=p_t_db,
                cf_sum_rate=closed_form_rate(cfg).sum_rate,
                conv_sum_rate=conventional_rate(cfg).sum_rate,
            )
        )
    plan_cfg = SystemConfig(m=1, k=k, rho_p=rho_p, p_t=p_t)
    crossing = CrossingReport(
        target_sum_rate=target_sum_rate,
        one_bit_m=required_antennas(target_sum_rate / k, plan_cfg, "one_bit"),
        conventional_m=required_antennas(target_sum_rate / k, plan_cfg, "conventional"),
    )
    return rows, crossing
