"""One-bit complex quantizer and its Bussgang statistics.

A one-bit DAC/ADC keeps only the signs of the real and imaginary parts, so
every output lands in (1/sqrt(2))*{+-1 +- 1j}. For a Gaussian input the
quantizer is statistically equivalent to a linear gain plus uncorrelated
noise (Bussgang decomposition); the output covariance follows the classical
arcsine law, which is exact for jointly Gaussian inputs. That arcsine-law
covariance is what lets the quantization-noise covariance be computed in
closed form instead of estimated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Boundary slack for arcsin arguments: empirical correlations can overshoot
# +-1 by floating-point noise, anything beyond this is a real domain error.
ARCSINE_CLAMP_TOL = 1e-9

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class BussgangModel:
    """Equivalent linear gain and quantization-noise covariance of a one-bit
    quantizer driven by a Gaussian vector.

    ``alpha`` holds the per-component diagonal of the linear gain;
    ``c_qq`` is the Hermitian PSD covariance of the residual noise.
    """

    alpha: np.ndarray
    c_qq: np.ndarray


def one_bit_quantize(x: np.ndarray) -> np.ndarray:
    """Quantize each entry to (sgn(Re x) + j sgn(Im x)) / sqrt(2).

    Zero real or imaginary parts map to +1 (deterministic tie-break, keeps
    runs reproducible). Every output entry has unit modulus.
    """
    x = np.asarray(x)
    re = np.where(x.real >= 0, 1.0, -1.0)
    im = np.where(x.imag >= 0, 1.0, -1.0)
    return (re + 1j * im) * _INV_SQRT2


def bussgang_gain(cxx_diag: np.ndarray) -> np.ndarray:
    """Per-component equivalent linear gain sqrt(2/pi) / sqrt(input variance).

    ``cxx_diag`` holds the input variances; they must be strictly positive
    (the gain of a one-bit quantizer is undefined for a degenerate input).
    """
    cxx_diag = np.asarray(cxx_diag, dtype=float)
    if np.any(cxx_diag <= 0):
        raise ValueError("input variances must be strictly positive")
    return np.sqrt(2.0 / np.pi) / np.sqrt(cxx_diag)


def arcsine_covariance(cxx: np.ndarray) -> np.ndarray:
    """Covariance of the one-bit quantizer output for CN(0, cxx) input.

    With Sigma the correlation matrix of ``cxx``, the result is
    (2/pi) * (arcsin(Re Sigma) + j arcsin(Im Sigma)), elementwise. The
    diagonal is exactly 1 (unit-modulus outputs).
    """
    cxx = np.asarray(cxx)
    d = np.real(np.diag(cxx))
    if np.any(d <= 0):
        raise ValueError("covariance diagonal must be strictly positive")
    inv_sqrt_d = 1.0 / np.sqrt(d)
    sigma = cxx * np.outer(inv_sqrt_d, inv_sqrt_d)
    re, im = sigma.real.copy(), sigma.imag.copy()
    # the normalized diagonal is 1 by construction; pinning it avoids the
    # infinite arcsin slope amplifying 1-ulp rounding into ~1e-8 wobble
    np.fill_diagonal(re, 1.0)
    np.fill_diagonal(im, 0.0)
    for part, name in ((re, "real"), (im, "imaginary")):
        overshoot = np.max(np.abs(part)) - 1.0
        if overshoot > ARCSINE_CLAMP_TOL:
            raise ValueError(
                f"{name} correlation magnitude exceeds 1 by {overshoot:.3e}, "
                "input is not a valid covariance"
            )
    re = np.clip(re, -1.0, 1.0)
    im = np.clip(im, -1.0, 1.0)
    return (2.0 / np.pi) * (np.arcsin(re) + 1j * np.arcsin(im))


def quantization_noise_covariance(cxx: np.ndarray) -> BussgangModel:
    """Bussgang model of a one-bit quantizer for CN(0, cxx) input.

    The noise covariance is the arcsine-law output covariance minus the
    linearized part A cxx A^H. Its diagonal is exactly (1 - 2/pi) regardless
    of the input scale, and the matrix is PSD (it is a true covariance).
    """
    cxx = np.asarray(cxx)
    alpha = bussgang_gain(np.real(np.diag(cxx)))
    c_yy = arcsine_covariance(cxx)
    c_qq = c_yy - cxx * np.outer(alpha, alpha)
    return BussgangModel(alpha=alpha, c_qq=c_qq)
