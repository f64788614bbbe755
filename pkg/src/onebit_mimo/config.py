"""Scenario configuration shared by the training and downlink stages.

All powers are linear-scale here. dB values are accepted only at the CLI /
service boundary and converted exactly once (see :mod:`onebit_mimo.cli`).
"""

from __future__ import annotations

from dataclasses import dataclass


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    import math

    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemConfig:
    """One multi-user downlink scenario.

    m       base-station antennas
    k       single-antenna users
    tau     pilot length in symbols; the estimator assumes tau == k
    rho_p   per-user training power, linear scale
    p_t     total downlink transmit power, linear scale
    """

    m: int
    k: int
    rho_p: float
    p_t: float
    tau: int | None = None

    def __post_init__(self):
        if self.tau is None:
            object.__setattr__(self, "tau", self.k)
        if self.m < 1 or self.k < 1:
            raise ValueError(f"m and k must be >= 1, got m={self.m}, k={self.k}")
        if self.rho_p <= 0:
            raise ValueError(f"rho_p must be > 0, got {self.rho_p}")
        if self.p_t <= 0:
            raise ValueError(f"p_t must be > 0, got {self.p_t}")
