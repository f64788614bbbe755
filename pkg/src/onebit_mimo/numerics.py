"""Complex-matrix substrate: seeded circularly-symmetric Gaussian sampling and
the column-stacking / Kronecker identities the channel estimator relies on.

All arrays are dense complex128. Reproducibility is handled through
:class:`RandomStream` descriptors rather than global RNG state, so Monte-Carlo
trials can be replayed (or distributed) independently of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RandomStream:
    """Immutable descriptor for one reproducible random substream.

    Identical ``(seed, stream_id)`` pairs reproduce identical draws
    bit-for-bit; distinct ``stream_id`` values give statistically
    independent streams of the same seed.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh generator for this substream; calling twice replays the draws."""
        return np.random.default_rng(
            np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        )

    def substream(self, stream_id: int) -> "RandomStream":
        """Sibling stream with the same seed and a different substream index."""
        return RandomStream(self.seed, stream_id)


def sample_cn(rows: int, cols: int, variance: float, stream: RandomStream) -> np.ndarray:
    """Draw an i.i.d. circularly-symmetric complex Gaussian matrix.

    Each entry is CN(0, variance): real and imaginary parts are independent
    N(0, variance/2). ``variance == 0`` gives an all-zero matrix.
    """
    if variance < 0:
        raise ValueError(f"variance must be >= 0, got {variance}")
    gen = stream.generator()
    scale = np.sqrt(variance / 2.0)
    z = gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols))
    return scale * z


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product. Used to assemble the stacked pilot operator."""
    return np.kron(a, b)


def vec(a: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization: returns an (rows*cols) x 1 column vector.

    Column-major order is load-bearing: it is what makes
    ``vec(A @ X @ B) == kron(B.T, A) @ vec(X)`` hold.
    """
    return np.asarray(a).reshape(-1, 1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec`: reshape a stacked column back to rows x cols."""
    v = np.asarray(v)
    if v.size != rows * cols:
        raise ValueError(f"cannot unvec length-{v.size} vector into {rows}x{cols}")
    return v.reshape(rows, cols, order="F")
