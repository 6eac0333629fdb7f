"""Binary modulation-on-zeros codebooks built from Huffman sequences.

Each of the K bit positions owns a conjugate-reciprocal pair of zeros that
share the phase 2*pi*k/K: an outer zero of modulus R and an inner zero of
modulus 1/R. A bit word selects one zero per pair and the transmit signal is
the unit-energy coefficient vector of the polynomial with those roots.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch
from .poly import ZeroSet, vieta_expand


def optimal_radius(K: int, lam: float = 1.0) -> float:
    """Radius balancing pair distance against lam times neighbor distance."""
    if K < 1:
        raise ValueError("K must be positive")
    if lam < 1.0:
        raise ValueError("lam must be at least 1")
    return math.sqrt(1.0 + (2.0 / lam) * math.sin(math.pi / K))


def eta_from_radius(R: float, K: int) -> float:
    """Side-lobe level of the length-(K+1) Huffman autocorrelation."""
    if R <= 1.0:
        raise ValueError("R must exceed 1")
    return 1.0 / (R**K + R ** (-K))


@dataclass(frozen=True)
class HuffmanCodebook:
    K: int
    R: float
    eta: float
    pairs: tuple  # K entries of (outer, inner) complex zeros

    def outer(self, k: int) -> complex:
        return self.pairs[k][0]

    def inner(self, k: int) -> complex:
        return self.pairs[k][1]

    def all_zeros(self) -> np.ndarray:
        return np.array([z for pair in self.pairs for z in pair])

    def autocorrelation(self) -> np.ndarray:
        """The word-independent autocorrelation (-eta, 0...0, 1, 0...0, -eta)."""
        a = np.zeros(2 * self.K + 1, dtype=np.complex128)
        a[self.K] = 1.0
        a[0] = -self.eta
        a[-1] = -self.eta
        return a


def build_codebook(K: int, R: float) -> HuffmanCodebook:
    if K < 1:
        raise ValueError("K must be positive")
    if R <= 1.0:
        raise ValueError("R must exceed 1")
    pairs = []
    for k in range(K):
        phase = np.exp(2j * np.pi * k / K)
        pairs.append((R * phase, phase / R))
    return HuffmanCodebook(K=K, R=float(R), eta=eta_from_radius(R, K), pairs=tuple(pairs))


@dataclass(frozen=True)
class Signal:
    """Unit-energy transmit block; leading coefficient real and positive."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.complex128)


def _check_word(word, K: int) -> np.ndarray:
    bits = np.asarray(word, dtype=np.int64)
    if bits.ndim != 1 or len(bits) != K:
        raise LengthMismatch(f"expected {K} bits, got shape {bits.shape}")
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError("bits must be 0 or 1")
    return bits


def signal_zeros(word, cb: HuffmanCodebook) -> ZeroSet:
    """The zero selected per pair: outer for bit 1, inner for bit 0."""
    bits = _check_word(word, cb.K)
    zeros = [cb.outer(k) if bits[k] else cb.inner(k) for k in range(cb.K)]
    return ZeroSet(tuple(zeros))


def normalize_signal(coeffs: np.ndarray) -> np.ndarray:
    """Scale to unit energy and rotate so the leading coefficient is real > 0."""
    c = coeffs / np.linalg.norm(coeffs)
    lead = c[-1]
    c = c * (np.conj(lead) / abs(lead))
    c[-1] = c[-1].real
    return c


def encode(word, cb: HuffmanCodebook) -> Signal:
    coeffs = vieta_expand(signal_zeros(word, cb))
    return Signal(tuple(normalize_signal(coeffs)))


def papr_expected(K: int, R: float) -> float:
    """Closed-form expected peak power (times K+1) under uniform bit words.

    Models the peak as the larger of the first and last coefficient and
    averages over half the weight range by symmetry; see the enumeration
    cross-check in the tests for how tight this is at small K.
    """
    if K < 1 or K % 2 != 0:
        raise ValueError("K must be a positive even integer")
    if R <= 1.0:
        raise ValueError("R must exceed 1")
    return (K + 1) * ((1.0 + R**-2) / 2.0) ** (K / 2) / (R ** (2 * K) + 1.0)


def codebook_to_json(cb: HuffmanCodebook) -> str:
    pairs = [
        {
            "outer": {"re": pair[0].real, "im": pair[0].imag},
            "inner": {"re": pair[1].real, "im": pair[1].imag},
        }
        for pair in cb.pairs
    ]
    return json.dumps({"K": cb.K, "R": cb.R, "eta": cb.eta, "pairs": pairs})


def codebook_from_json(text: str) -> HuffmanCodebook:
    data = json.loads(text)
    pairs = tuple(
        (
            complex(p["outer"]["re"], p["outer"]["im"]),
            complex(p["inner"]["re"], p["inner"]["im"]),
        )
        for p in data["pairs"]
    )
    cb = HuffmanCodebook(K=int(data["K"]), R=float(data["R"]), eta=float(data["eta"]), pairs=pairs)
    rebuilt = build_codebook(cb.K, cb.R)
    if np.max(np.abs(cb.all_zeros() - rebuilt.all_zeros())) > 1e-9:
        raise ValueError("codebook zeros inconsistent with K and R")
    return cb
