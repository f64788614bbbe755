"""Uplink pilot training through one-bit ADCs and the LMMSE channel estimator.

The K users send mutually orthogonal pilots (a K x K DFT matrix, so entries
are unit modulus and Phi^H Phi = tau * I exactly). The received block is
quantized to one bit per real dimension; the estimator applies the adjoint of
the Bussgang-linearized pilot operator, which is the LMMSE estimate for this
setup. Each estimate entry has variance

    eta^2 = 2 K rho_p / (pi (1 + K rho_p)),

saturating at 2/pi: more training power cannot push a one-bit estimate past
that ceiling.

Two estimate modes are exposed. ``simulated`` runs the actual quantized
training chain; ``gaussian_approx`` draws (h, h_hat) jointly Gaussian with
the same first and second moments, which isolates the central-limit
approximation the rate analysis is built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig
from .numerics import RandomStream, sample_cn, unvec, vec
from .quantizer import one_bit_quantize


@dataclass(frozen=True)
class ChannelEstimate:
    """Estimated M x K channel with its per-entry model variance.

    ``mode`` records provenance: "simulated" (ran the one-bit training chain)
    or "gaussian_approx" (sampled from the joint-Gaussian model).
    """

    h_hat: np.ndarray
    variance: float
    mode: str


def generate_pilots(k: int, tau: int) -> np.ndarray:
    """tau x K orthogonal pilot matrix with unit-modulus entries (DFT).

    Only tau == k is supported; other pilot lengths are a different design
    problem and are rejected explicitly rather than silently mishandled.
    """
    if tau != k:
        raise ValueError(f"only tau == k pilot designs are supported, got tau={tau}, k={k}")
    n = np.arange(k)
    return np.exp(-2j * np.pi * np.outer(n, n) / k)


def training_bussgang_gain(cfg: SystemConfig) -> float:
    """Equivalent linear gain of the one-bit ADCs during training.

    The pre-quantizer training signal is white with per-entry variance
    K rho_p + 1, so the gain is sqrt(2 / (pi (K rho_p + 1))).
    """
    return math.sqrt(2.0 / (math.pi * (cfg.k * cfg.rho_p + 1.0)))


def estimate_variance(cfg: SystemConfig) -> float:
    """Per-entry variance eta^2 of the LMMSE one-bit channel estimate."""
    kr = cfg.k * cfg.rho_p
    return 2.0 * kr / (math.pi * (1.0 + kr))


def estimate_from_quantized(r_p: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """LMMSE estimate from the quantized training block: a fixed linear map.

    With R_p the M x tau matrix form of the quantized samples, the stacked
    estimate alpha_p sqrt(rho_p) (Phi^H kron I_M) r_p collapses to
    alpha_p sqrt(rho_p) R_p conj(Phi).
    """
    phi = generate_pilots(cfg.k, cfg.tau)
    r_mat = unvec(r_p, cfg.m, cfg.tau)
    return training_bussgang_gain(cfg) * math.sqrt(cfg.rho_p) * (r_mat @ phi.conj())


def train_and_estimate(h: np.ndarray, cfg: SystemConfig, stream: RandomStream) -> ChannelEstimate:
    """Run the uplink training chain for channel ``h`` and estimate it.

    Forms the received block sqrt(rho_p) H Phi^T + N with unit-variance AWGN,
    quantizes it to one bit per real dimension, and applies the LMMSE map.
    """
    if h.shape != (cfg.m, cfg.k):
        raise ValueError(f"channel must be {cfg.m}x{cfg.k}, got {h.shape}")
    phi = generate_pilots(cfg.k, cfg.tau)
    noise = sample_cn(cfg.m, cfg.tau, 1.0, stream)
    y_p = math.sqrt(cfg.rho_p) * (h @ phi.T) + noise
    r_p = one_bit_quantize(vec(y_p))
    h_hat = estimate_from_quantized(r_p, cfg)
    return ChannelEstimate(h_hat=h_hat, variance=estimate_variance(cfg), mode="simulated")


def sample_estimate_gaussian_approx(
    cfg: SystemConfig, stream: RandomStream
) -> tuple[np.ndarray, ChannelEstimate]:
    """Draw a (channel, estimate) pair from the joint-Gaussian model.

    Entrywise: h ~ CN(0,1), h_hat ~ CN(0, eta^2), E{h_hat h*} = eta^2. This
    is the unique jointly Gaussian model matching the moment identities the
    closed-form rate uses, realized as h_hat = eta^2 h + sqrt(eta^2 - eta^4) e
    with independent e ~ CN(0,1).
    """
    eta_sq = estimate_variance(cfg)
    gen = stream.generator()
    scale = math.sqrt(0.5)
    h = scale * (gen.standard_normal((cfg.m, cfg.k)) + 1j * gen.standard_normal((cfg.m, cfg.k)))
    e = scale * (gen.standard_normal((cfg.m, cfg.k)) + 1j * gen.standard_normal((cfg.m, cfg.k)))
    h_hat = eta_sq * h + math.sqrt(eta_sq - eta_sq**2) * e
    return h, ChannelEstimate(h_hat=h_hat, variance=eta_sq, mode="gaussian_approx")
