"""Request/response schemas for the simulation service.

Powers cross this boundary in dB (matching the CLI flags and the figures);
conversion to linear scale happens once, inside the handlers.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

EstimateMode = Literal["simulated", "gaussian"]


class ScenarioParams(BaseModel):
    m: int = Field(ge=1, description="base-station antennas")
    k: int = Field(default=10, ge=1, description="single-antenna users")
    rho_p_db: float = Field(default=10.0, description="per-user training power, dB")
    p_t_db: float = Field(default=10.0, description="total transmit power, dB")


class RateRequest(ScenarioParams):
    trials: int = Field(default=2000, ge=1)
    seed: int = 0
    mode: EstimateMode = "simulated"
    threads: int = Field(default=1, ge=1)


class ComponentBreakdown(BaseModel):
    desired: float
    gain_var: float
    interference: float
    quant_noise: float
    awgn: float


class MethodRate(BaseModel):
    method: str
    per_user_rate: list[float]
    sum_rate: float
    trials: int
    sum_stderr: Optional[float] = None
    per_user_stderr: Optional[list[float]] = None
    components: list[ComponentBreakdown]


class RateResponse(BaseModel):
    request: RateRequest
    closed_form: MethodRate
    use_and_forget: MethodRate
    conventional: MethodRate
    monte_carlo: MethodRate


class PlanRequest(BaseModel):
    target_per_user_rate: float = Field(ge=0.0)
    k: int = Field(default=10, ge=1)
    rho_p_db: float = 10.0
    p_t_db: float = 10.0


class PlanResponse(BaseModel):
    target_per_user_rate: float
    one_bit_m: int
    conventional_m: int
    antenna_ratio: float


class RateVsPowerRequest(BaseModel):
    m_list: list[int] = Field(default=[32, 64, 128], min_length=1)
    p_t_db_grid: list[float] = Field(default=[-10.0, -5.0, 0.0, 5.0, 10.0], min_length=1)
    k: int = Field(default=10, ge=1)
    rho_p_db: float = 10.0
    trials: int = Field(default=2000, ge=1)
    seed: int = 0
    mode: EstimateMode = "simulated"
    threads: int = Field(default=1, ge=1)


class PowerScalingRequest(BaseModel):
    m_grid: list[int] = Field(default=[16, 32, 64, 128, 256], min_length=1)
    e_t_db: float = 10.0
    e_u_db: float = 10.0
    rho_p_db: float = 10.0
    k: int = Field(default=10, ge=1)
    trials: int = Field(default=2000, ge=1)
    seed: int = 0
    mode: EstimateMode = "simulated"
    threads: int = Field(default=1, ge=1)


class AntennaComparisonRequest(BaseModel):
    m_grid: list[int] = Field(default=list(range(20, 501, 20)), min_length=1)
    k: int = Field(default=10, ge=1)
    rho_p_db: float = 10.0
    p_t_db: float = 10.0
    target_sum_rate: float = 35.0


class SweepRowModel(BaseModel):
    scenario: str
    m: int
    k: int
    rho_p_db: float
    p_t_db: float
    trials: int = 0
    mc_sum_rate: Optional[float] = None
    mc_stderr: Optional[float] = None
    cf_sum_rate: Optional[float] = None
    conv_sum_rate: Optional[float] = None
    case1_limit: Optional[float] = None
    case2_limit: Optional[float] = None


class CrossingModel(BaseModel):
    target_sum_rate: float
    one_bit_m: int
    conventional_m: int


class SweepResponse(BaseModel):
    csv: str
    rows: list[SweepRowModel]
    seed: int = 0
    crossing: Optional[CrossingModel] = None


class HealthResponse(BaseModel):
    status: str
    version: str
