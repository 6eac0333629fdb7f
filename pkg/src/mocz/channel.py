"""Rayleigh multipath channel sampling, AWGN, and SNR accounting.

Two power conventions appear in this package:

* unnormalized: the transmit block has unit energy and tap l has variance
  p**l, so the average received SNR is (1/(N*N0)) * (1-p**L)/(1-p);
* normalized (the simulation convention): the transmit block is scaled by
  sqrt(N) and the taps by 1/sqrt(E||h||^2), which makes the average received
  SNR exactly 1/N0.
"""
from __future__ import annotations

from dataclasses import dataclass

import json

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ChannelModel:
    L: int
    p: float
    N0: float

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be at least 1")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must lie in (0, 1]")
        if self.N0 < 0.0:
            raise ValueError("N0 must be nonnegative")

    def pdp(self) -> np.ndarray:
        return self.p ** np.arange(self.L, dtype=np.float64)

    def expected_energy(self) -> float:
        if self.p == 1.0:
            return float(self.L)
        return (1.0 - self.p**self.L) / (1.0 - self.p)


@dataclass(frozen=True)
class RngStream:
    """Counter-based stream addressed by (seed, stream id).

    Identical (seed, stream) pairs reproduce identical draws regardless of
    which worker consumes them. generator() restarts the stream, so callers
    needing sequential draws across operations should create one generator
    and pass it to each operation.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        key = (self.seed & _MASK64) | ((self.stream & _MASK64) << 64)
        return np.random.Generator(np.random.Philox(key=key))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng


def complex_normal(gen: np.random.Generator, variance, size: int) -> np.ndarray:
    """Circularly-symmetric complex Gaussian draws with the given variances."""
    scale = np.sqrt(np.asarray(variance, dtype=np.float64) / 2.0)
    return scale * (gen.standard_normal(size) + 1j * gen.standard_normal(size))


def sample_channel(model: ChannelModel, rng) -> np.ndarray:
    """One tap vector with independent CN(0, p**l) entries."""
    gen = _as_generator(rng)
    return complex_normal(gen, model.pdp(), model.L)


def transmit(x, h, model: ChannelModel, rng) -> np.ndarray:
    """Received block under the normalized simulation convention.

    x is scaled by sqrt(N) and h by 1/sqrt(E||h||^2); noise is iid CN(0, N0).
    """
    gen = _as_generator(rng)
    xv = np.asarray(x, dtype=np.complex128)
    hv = np.asarray(h, dtype=np.complex128)
    N = len(xv) + model.L - 1
    scaled = np.sqrt(N) * xv
    normalized = hv / np.sqrt(model.expected_energy())
    noise = complex_normal(gen, model.N0, N)
    return np.convolve(scaled, normalized) + noise


def rsnr(model: ChannelModel, N: int | None = None) -> float:
    """Average received SNR.

    With N omitted, returns the normalized-convention value 1/N0. With N
    given, returns the unnormalized-convention value E||h||^2 / (N * N0).
    """
    if N is None:
        return 1.0 / model.N0
    return model.expected_energy() / (N * model.N0)


def ebn0_from_snr(snr: float, K: int, N: int) -> float:
    if snr <= 0.0:
        raise ValueError("snr must be positive")
    if K < 1 or N < K:
        raise ValueError("need N >= K >= 1")
    return snr * N / K


def model_to_json(model: ChannelModel) -> str:
    return json.dumps({"L": model.L, "p": model.p, "N0": model.N0})


def model_from_json(text: str) -> ChannelModel:
    data = json.loads(text)
    return ChannelModel(L=int(data["L"]), p=float(data["p"]), N0=float(data["N0"]))
