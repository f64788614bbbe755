"""FastAPI service wrapping the simulation library.

The CLI talks to these endpoints (in-process by default, over the network
with --server); anything a subcommand can do maps to exactly one endpoint.
Domain errors from the library surface as HTTP 400 with the message intact.
"""

from __future__ import annotations

import dataclasses

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..config import SystemConfig, db_to_linear
from ..downlink import (
    RateReport,
    closed_form_rate,
    conventional_rate,
    monte_carlo_rate,
    required_antennas,
    use_and_forget_rate,
)
from ..experiments import (
    CrossingReport,
    SweepRow,
    render_csv,
    run_antenna_comparison,
    run_power_scaling,
    run_rate_vs_power,
)
from ..numerics import RandomStream
from . import models

_MODE_MAP = {"simulated": "simulated", "gaussian": "gaussian_approx"}


def _method_rate(report: RateReport) -> models.MethodRate:
    return models.MethodRate(
        method=report.method,
        per_user_rate=[float(r) for r in report.per_user_rate],
        sum_rate=report.sum_rate,
        trials=report.trials,
        sum_stderr=report.sum_stderr,
        per_user_stderr=(
            None if report.per_user_stderr is None else [float(s) for s in report.per_user_stderr]
        ),
        components=[
            models.ComponentBreakdown(
                desired=c.desired,
                gain_var=c.gain_var,
                interference=c.interference,
                quant_noise=c.quant_noise,
                awgn=c.awgn,
            )
            for c in report.components
        ],
    )


def _sweep_response(
    rows: list[SweepRow], seed: int, crossing: CrossingReport | None = None
) -> models.SweepResponse:
    return models.SweepResponse(
        csv=render_csv(rows, seed, crossing),
        rows=[models.SweepRowModel(**dataclasses.asdict(r)) for r in rows],
        seed=seed,
        crossing=None
        if crossing is None
        else models.CrossingModel(**dataclasses.asdict(crossing)),
    )


def create_app() -> FastAPI:
    app = FastAPI(title="onebit-mimo-sim", version=__version__)

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/v1/health", response_model=models.HealthResponse)
    def health():
        return models.HealthResponse(status="ok", version=__version__)

    @app.post("/v1/rate", response_model=models.RateResponse)
    def rate(req: models.RateRequest):
        cfg = SystemConfig(
            m=req.m, k=req.k, rho_p=db_to_linear(req.rho_p_db), p_t=db_to_linear(req.p_t_db)
        )
        mc = monte_carlo_rate(
            cfg,
            req.trials,
            RandomStream(req.seed),
            mode=_MODE_MAP[req.mode],
            threads=req.threads,
        )
        return models.RateResponse(
            request=req,
            closed_form=_method_rate(closed_form_rate(cfg)),
            use_and_forget=_method_rate(use_and_forget_rate(cfg)),
            conventional=_method_rate(conventional_rate(cfg)),
            monte_carlo=_method_rate(mc),
        )

    @app.post("/v1/plan", response_model=models.PlanResponse)
    def plan(req: models.PlanRequest):
        cfg = SystemConfig(
            m=1, k=req.k, rho_p=db_to_linear(req.rho_p_db), p_t=db_to_linear(req.p_t_db)
        )
        one_bit = required_antennas(req.target_per_user_rate, cfg, "one_bit")
        conventional = required_antennas(req.target_per_user_rate, cfg, "conventional")
        return models.PlanResponse(
            target_per_user_rate=req.target_per_user_rate,
            one_bit_m=one_bit,
            conventional_m=conventional,
            antenna_ratio=one_bit / conventional,
        )

    @app.post("/v1/sweeps/rate-vs-power", response_model=models.SweepResponse)
    def rate_vs_power(req: models.RateVsPowerRequest):
        rows = run_rate_vs_power(
            m_list=req.m_list,
            p_t_db_grid=req.p_t_db_grid,
            k=req.k,
            rho_p_db=req.rho_p_db,
            trials=req.trials,
            seed=req.seed,
            mode=_MODE_MAP[req.mode],
            threads=req.threads,
        )
        return _sweep_response(rows, req.seed)

    @app.post("/v1/sweeps/power-scaling", response_model=models.SweepResponse)
    def power_scaling(req: models.PowerScalingRequest):
        rows = run_power_scaling(
            m_grid=req.m_grid,
            e_t_db=req.e_t_db,
            e_u_db=req.e_u_db,
            rho_p_db=req.rho_p_db,
            k=req.k,
            trials=req.trials,
            seed=req.seed,
            mode=_MODE_MAP[req.mode],
            threads=req.threads,
        )
        return _sweep_response(rows, req.seed)

    @app.post("/v1/sweeps/antenna-comparison", response_model=models.SweepResponse)
    def antenna_comparison(req: models.AntennaComparisonRequest):
        rows, crossing = run_antenna_comparison(
            m_grid=req.m_grid,
            k=req.k,
            rho_p_db=req.rho_p_db,
            p_t_db=req.p_t_db,
            target_sum_rate=req.target_sum_rate,
        )
        return _sweep_response(rows, 0, crossing)

    return app


app = create_app()
