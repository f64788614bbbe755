"""Matched-filter precoding through one-bit DACs and the achievable-rate engines.

Four rate evaluators share one scenario config:

* ``monte_carlo_rate``     ergodic lower bound, averaging the conditional
                           per-realization SINR over (channel, estimate) pairs;
* ``use_and_forget_rate``  deterministic bound that treats the mean channel
                           gain as the signal and every deviation as noise,
                           evaluated term by term from the moment identities;
* ``closed_form_rate``     the same bound collapsed to a single log expression;
* ``conventional_rate``    ideal-DAC baseline for the antenna-count comparison.

``use_and_forget_rate`` and ``closed_form_rate`` are algebraically identical;
computing both is the regression check that the moment substitution (including
the squared normalization gain in the inter-user term) is implemented right.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig
from .numerics import RandomStream, sample_cn
from .quantizer import one_bit_quantize, quantization_noise_covariance
from .training import (
    ChannelEstimate,
    estimate_variance,
    sample_estimate_gaussian_approx,
    train_and_estimate,
)

LOG2 = math.log(2.0)

# Substream lanes: trial t of a Monte-Carlo run owns stream ids
# t*_LANES + lane, so channel, training noise and payload draws never collide
# and any trial is replayable in isolation.
_LANE_CHANNEL = 0
_LANE_TRAINING = 1
_LANE_PAYLOAD = 2
_LANES = 3

ESTIMATE_MODES = ("simulated", "gaussian_approx")


@dataclass(frozen=True)
class SinrComponents:
    """Per-user powers behind one SINR value.

    ``gain_var`` is the variance of the known-mean gain term; it is zero in
    conditional (per-realization) mode where that gain is not averaged out.
    AWGN power is 1 by the noise normalization.
    """

    desired: float
    gain_var: float
    interference: float
    quant_noise: float
    awgn: float = 1.0

    @property
    def sinr(self) -> float:
        return self.desired / (self.gain_var + self.interference + self.quant_noise + self.awgn)

    @property
    def rate(self) -> float:
        return math.log1p(self.sinr) / LOG2


@dataclass(frozen=True)
class RateReport:
    """Per-user achievable rates plus the power decomposition behind them.

    ``trials`` is 0 for analytic methods; Monte-Carlo methods also carry the
    standard errors of the per-user and sum-rate estimates.
    """

    per_user_rate: np.ndarray
    sum_rate: float
    components: list[SinrComponents]
    method: str
    trials: int = 0
    per_user_stderr: np.ndarray | None = None
    sum_stderr: float | None = None


@dataclass(frozen=True)
class MseBoundReport:
    """Empirical symbol-estimation bound log2(1/MSE) per user."""

    per_user_rate: np.ndarray
    per_user_stderr: np.ndarray
    mse: np.ndarray
    trials: int


def transmit_gain(cfg: SystemConfig) -> float:
    """Normalization sqrt(P_t / M) that fixes the radiated power.

    One-bit DAC outputs have unit modulus, so ||y||^2 == M deterministically
    and the power constraint pins the gain exactly.
    """
    return math.sqrt(cfg.p_t / cfg.m)


def downlink_bussgang_gain(cfg: SystemConfig) -> float:
    """Equivalent linear gain of the downlink DACs, sqrt(2 / (pi K eta^2)).

    The precoded signal has per-antenna variance K eta^2 on average; this is
    the scalar gain the rate analysis uses in the signal terms.
    """
    return math.sqrt(2.0 / (math.pi * cfg.k * estimate_variance(cfg)))


def mf_precode(h_hat: ChannelEstimate) -> np.ndarray:
    """Matched-filter precoder: the entrywise conjugate of the estimate."""
    return h_hat.h_hat.conj()


def transmit(w: np.ndarray, s: np.ndarray) -> np.ndarray:
    """One-bit DAC output for precoded symbols: Q(W s), entries in Y."""
    w = np.asarray(w)
    s = np.asarray(s)
    if w.shape[1] != s.shape[0]:
        raise ValueError(f"precoder is {w.shape}, symbols are {s.shape}")
    return one_bit_quantize(w @ s)


def simulate_downlink_symbols(
    h: np.ndarray, w: np.ndarray, cfg: SystemConfig, gen: np.random.Generator, count: int
):
    """Run ``count`` symbol slots through precode -> quantize -> channel.

    Returns (s, x, y, r): Gaussian symbols, precoded signal, DAC output and
    the noisy received samples gamma H^T y + n.
    """
    scale = math.sqrt(0.5)
    s = scale * (gen.standard_normal((cfg.k, count)) + 1j * gen.standard_normal((cfg.k, count)))
    x = w @ s
    y = one_bit_quantize(x)
    n = scale * (gen.standard_normal((cfg.k, count)) + 1j * gen.standard_normal((cfg.k, count)))
    r = transmit_gain(cfg) * (h.T @ y) + n
    return s, x, y, r


def sinr_terms_conditional(
    h: np.ndarray, h_hat: ChannelEstimate, cfg: SystemConfig
) -> list[SinrComponents]:
    """Per-user SINR components conditioned on one (H, H_hat) realization.

    Signal and interference use the scalar DAC gain; the quantization-noise
    power is the exact quadratic form through the arcsine-law noise
    covariance of this realization's precoded signal, h_k^T C_qq h_k^*.
    """
    if h.shape != (cfg.m, cfg.k) or h_hat.h_hat.shape != (cfg.m, cfg.k):
        raise ValueError(
            f"expected {cfg.m}x{cfg.k} channel and estimate, "
            f"got {h.shape} and {h_hat.h_hat.shape}"
        )
    gamma_sq = cfg.p_t / cfg.m
    alpha_d_sq = downlink_bussgang_gain(cfg) ** 2

    cross = h.T @ h_hat.h_hat.conj()  # cross[k, i] = h_k^T h_hat_i^*
    cross_pow = np.abs(cross) ** 2
    desired = gamma_sq * alpha_d_sq * np.diag(cross_pow)
    interference = gamma_sq * alpha_d_sq * (cross_pow.sum(axis=1) - np.diag(cross_pow))

    c_qq = quantization_noise_covariance(h_hat.h_hat.conj() @ h_hat.h_hat.T).c_qq
    quad = np.einsum("mk,mn,nk->k", h, c_qq, h.conj(), optimize=True)
    # PSD quadratic form; the real cast and floor only strip fp noise.
    quant = np.maximum(gamma_sq * quad.real, 0.0)

    return [
        SinrComponents(
            desired=float(desired[k]),
            gain_var=0.0,
            interference=float(interference[k]),
            quant_noise=float(quant[k]),
        )
        for k in range(cfg.k)
    ]


def _draw_channel_pair(cfg: SystemConfig, stream: RandomStream, trial: int, mode: str):
    base = trial * _LANES
    if mode == "simulated":
        h = sample_cn(cfg.m, cfg.k, 1.0, stream.substream(base + _LANE_CHANNEL))
        est = train_and_estimate(h, cfg, stream.substream(base + _LANE_TRAINING))
        return h, est
    if mode == "gaussian_approx":
        return sample_estimate_gaussian_approx(cfg, stream.substream(base + _LANE_CHANNEL))
    raise ValueError(f"unknown estimate mode {mode!r}, expected one of {ESTIMATE_MODES}")


def monte_carlo_rate(
    cfg: SystemConfig,
    trials: int,
    stream: RandomStream,
    mode: str = "simulated",
    threads: int = 1,
) -> RateReport:
    """Monte-Carlo ergodic rate: average of log2(1 + conditional SINR).

    Trial t draws its own channel/estimate pair from substreams derived from
    ``stream``, so the report is identical for any thread count and any
    execution order.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rates = np.empty((trials, cfg.k))
    comps = np.empty((trials, cfg.k, 3))  # desired, interference, quant_noise

    def run_trial(t: int) -> None:
        h, est = _draw_channel_pair(cfg, stream, t, mode)
        terms = sinr_terms_conditional(h, est, cfg)
        for k, c in enumerate(terms):
            rates[t, k] = c.rate
            comps[t, k] = (c.desired, c.interference, c.quant_noise)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_trial, range(trials)))
    else:
        for t in range(trials):
            run_trial(t)

    per_user = rates.mean(axis=0)
    mean_comps = comps.mean(axis=0)
    per_user_se = rates.std(axis=0, ddof=1) / math.sqrt(trials) if trials > 1 else np.zeros(cfg.k)
    sums = rates.sum(axis=1)
    sum_se = float(sums.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    components = [
        SinrComponents(
            desired=float(mean_comps[k, 0]),
            gain_var=0.0,
            interference=float(mean_comps[k, 1]),
            quant_noise=float(mean_comps[k, 2]),
        )
        for k in range(cfg.k)
    ]
    return RateReport(
        per_user_rate=per_user,
        sum_rate=float(sums.mean()),
        components=components,
        method="monte_carlo",
        trials=trials,
        per_user_stderr=per_user_se,
        sum_stderr=sum_se,
    )


def one_bit_sinr(m: float, k: float, rho_p: float, p_t: float) -> float:
    """Closed-form SINR 4 M rho_p P_t / (pi^2 (1 + K rho_p)(1 + P_t)).

    Accepts float antenna counts so scaling identities can be checked off the
    integer grid; the public config path validates integrality.
    """
    return 4.0 * m * rho_p * p_t / (math.pi**2 * (1.0 + k * rho_p) * (1.0 + p_t))


def conventional_sinr(m: float, k: float, rho_p: float, p_t: float) -> float:
    """Ideal-DAC matched-filter SINR M rho_p P_t / ((1 + K rho_p)(1 + P_t))."""
    return m * rho_p * p_t / ((1.0 + k * rho_p) * (1.0 + p_t))


def _moment_components(cfg: SystemConfig) -> SinrComponents:
    """Joint-Gaussian moment identities evaluated for this config (all users alike).

    desired       |E{h_hat_k^T h_k^*}|^2 = (M eta^2)^2 through the gains;
    gain_var      Var{h_hat_k^T h_k^*}  =  M eta^2;
    interference  sum over the other K-1 users of E|h_hat_k^T h_i^*|^2,
                  each M eta^2 (the normalization gain enters squared here,
                  without the square the closed form is not recovered);
    quant_noise   (1 - 2/pi) E||h_k||^2 through gamma^2.
    """
    eta_sq = estimate_variance(cfg)
    gamma_sq = cfg.p_t / cfg.m
    alpha_d_sq = 2.0 / (math.pi * cfg.k * eta_sq)
    m_eta = cfg.m * eta_sq
    return SinrComponents(
        desired=alpha_d_sq * gamma_sq * m_eta**2,
        gain_var=alpha_d_sq * gamma_sq * m_eta,
        interference=alpha_d_sq * gamma_sq * m_eta * (cfg.k - 1),
        quant_noise=gamma_sq * (1.0 - 2.0 / math.pi) * cfg.m,
    )


def closed_form_rate(cfg: SystemConfig) -> RateReport:
    """Per-user rate log2(1 + 4 M rho_p P_t / (pi^2 (1+K rho_p)(1+P_t)))."""
    rate = math.log1p(one_bit_sinr(cfg.m, cfg.k, cfg.rho_p, cfg.p_t)) / LOG2
    per_user = np.full(cfg.k, rate)
    comps = [_moment_components(cfg)] * cfg.k
    return RateReport(
        per_user_rate=per_user,
        sum_rate=rate * cfg.k,
        components=comps,
        method="closed_form",
    )


def use_and_forget_rate(cfg: SystemConfig) -> RateReport:
    """Known-mean-gain bound evaluated term by term from the moment identities.

    Must equal :func:`closed_form_rate` to machine precision; the pair acts
    as a mutual regression check.
    """
    c = _moment_components(cfg)
    per_user = np.full(cfg.k, c.rate)
    return RateReport(
        per_user_rate=per_user,
        sum_rate=c.rate * cfg.k,
        components=[c] * cfg.k,
        method="use_and_forget",
    )


def conventional_rate(cfg: SystemConfig) -> RateReport:
    """Ideal-DAC baseline rate log2(1 + M rho_p P_t / ((1+P_t)(1+K rho_p)))."""
    rate = math.log1p(conventional_sinr(cfg.m, cfg.k, cfg.rho_p, cfg.p_t)) / LOG2
    eta_c_sq = cfg.k * cfg.rho_p / (1.0 + cfg.k * cfg.rho_p)
    c = SinrComponents(
        desired=cfg.p_t * cfg.m * eta_c_sq / cfg.k,
        gain_var=cfg.p_t / cfg.k,
        interference=cfg.p_t * (cfg.k - 1) / cfg.k,
        quant_noise=0.0,
    )
    return RateReport(
        per_user_rate=np.full(cfg.k, rate),
        sum_rate=rate * cfg.k,
        components=[c] * cfg.k,
        method="conventional",
    )


def empirical_mse_bound(cfg: SystemConfig, trials: int, stream: RandomStream) -> MseBoundReport:
    """Empirical symbol-MSE bound log2(1/MSE_k) through the full chain.

    Each trial runs training, precoding, one-bit conversion and reception for
    one symbol slot. The received sample is modeled as the known mean gain
    gamma alpha_d M eta^2 times the symbol plus effective noise; the MSE of
    the scalar LMMSE symbol estimate then follows from the measured effective
    noise power. Standard errors come from the delta method.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    gain = transmit_gain(cfg) * downlink_bussgang_gain(cfg) * cfg.m * estimate_variance(cfg)
    residual_pow = np.empty((trials, cfg.k))
    for t in range(trials):
        base = t * _LANES
        h = sample_cn(cfg.m, cfg.k, 1.0, stream.substream(base + _LANE_CHANNEL))
        est = train_and_estimate(h, cfg, stream.substream(base + _LANE_TRAINING))
        gen = stream.substream(base + _LANE_PAYLOAD).generator()
        s, _, _, r = simulate_downlink_symbols(h, mf_precode(est), cfg, gen, 1)
        residual_pow[t] = np.abs(r[:, 0] - gain * s[:, 0]) ** 2

    noise_pow = residual_pow.mean(axis=0)
    mse = noise_pow / (gain**2 + noise_pow)
    rate = np.log2(1.0 / mse)
    # delta method: d rate / d noise_pow = -(1/ln2) gain^2 / (N (gain^2 + N))
    noise_se = residual_pow.std(axis=0, ddof=1) / math.sqrt(trials)
    rate_se = gain**2 / (noise_pow * (gain**2 + noise_pow)) / LOG2 * noise_se
    return MseBoundReport(per_user_rate=rate, per_user_stderr=rate_se, mse=mse, trials=trials)


def case1_rate_limit(rho_p: float, e_t: float, k: int) -> float:
    """Large-array per-user rate when total power scales as E_t / M.

    With fixed training power the estimate quality is pinned, so transmit
    power can be cut proportionally to 1/M at constant rate.
    """
    return math.log1p(4.0 * rho_p * e_t / (math.pi**2 * (1.0 + k * rho_p))) / LOG2


def case2_rate_limit(e_u: float, e_t: float) -> float:
    """Large-array per-user rate when both powers scale as 1/sqrt(M).

    Cutting training power degrades the estimate, so only the gentler
    1/sqrt(M) scaling keeps the rate; the user count drops out entirely.
    """
    return math.log1p(4.0 * e_u * e_t / math.pi**2) / LOG2


def required_antennas(target_rate_per_user: float, cfg: SystemConfig, system: str) -> int:
    """Smallest antenna count whose closed-form per-user rate meets the target.

    ``system`` selects the one-bit closed form or the ideal-DAC baseline. The
    one-bit system needs about pi^2/4 = 2.47x the antennas of the baseline
    for the same target.
    """
    if system == "one_bit":
        sinr_of_m = lambda m: one_bit_sinr(m, cfg.k, cfg.rho_p, cfg.p_t)
    elif system == "conventional":
        sinr_of_m = lambda m: conventional_sinr(m, cfg.k, cfg.rho_p, cfg.p_t)
    else:
        raise ValueError(f"unknown system {system!r}, expected 'one_bit' or 'conventional'")
    if target_rate_per_user <= 0:
        return 1
    sinr_target = 2.0**target_rate_per_user - 1.0
    m = max(1, math.ceil(sinr_target / sinr_of_m(1.0) - 1e-12))
    while sinr_of_m(m) < sinr_target:
        m += 1
    while m > 1 and sinr_of_m(m - 1) >= sinr_target:
        m -= 1
    return m
