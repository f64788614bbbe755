"""Link-level simulator and rate analysis for the one-bit-DAC massive MIMO downlink."""

from .config import SystemConfig, db_to_linear, linear_to_db
from .downlink import (
    MseBoundReport,
    RateReport,
    SinrComponents,
    case1_rate_limit,
    case2_rate_limit,
    closed_form_rate,
    conventional_rate,
    downlink_bussgang_gain,
    empirical_mse_bound,
    mf_precode,
    monte_carlo_rate,
    required_antennas,
    sinr_terms_conditional,
    transmit,
    transmit_gain,
    use_and_forget_rate,
)
from .numerics import RandomStream, kron, sample_cn, unvec, vec
from .quantizer import (
    BussgangModel,
    arcsine_covariance,
    bussgang_gain,
    one_bit_quantize,
    quantization_noise_covariance,
)
from .training import (
    ChannelEstimate,
    estimate_variance,
    generate_pilots,
    sample_estimate_gaussian_approx,
    train_and_estimate,
    training_bussgang_gain,
)

__version__ = "0.1.0"
