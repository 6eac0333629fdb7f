"""Blind estimation of the channel autocorrelation from one received block.

The received autocorrelation is the convolution of the (word-independent)
signal autocorrelation with the channel autocorrelation, so the channel part
is recovered by pointwise spectral division. The codebook's side-lobe level
keeps every divisor bin at magnitude >= 1 - 2*eta, bounding the noise
amplification.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelModel
from .codebook import HuffmanCodebook
from .errors import EtaTooLarge, SpectralZero
from .poly import autocorrelation, dft, inverse_dft

SPECTRAL_FLOOR = 1e-6


@dataclass(frozen=True)
class AutocorrEstimate:
    a_h: np.ndarray
    residual_energy: float


def signal_spectrum_floor(cb: HuffmanCodebook, M: int) -> float:
    """Smallest divisor-bin magnitude min_k |sqrt(M) (F a_x)_k|."""
    ax = cb.autocorrelation()
    return float(np.min(np.abs(np.sqrt(M) * dft(ax, M))))


def estimate_channel_autocorr(y, cb: HuffmanCodebook, L: int) -> AutocorrEstimate:
    yv = np.asarray(y, dtype=np.complex128)
    N = len(yv)
    if L < 1 or 2 * L - 1 > 2 * N - 1:
        raise ValueError("tap count inconsistent with block length")
    M = 2 * N - 1
    ay = autocorrelation(yv)
    ax = cb.autocorrelation()
    Ax = np.sqrt(M) * dft(ax, M)
    if np.min(np.abs(Ax)) < SPECTRAL_FLOOR:
        raise SpectralZero("signal autocorrelation spectrum has a near-zero bin")
    Ah = dft(ay, M) / Ax
    ah_full = inverse_dft(Ah)
    a_h = ah_full[: 2 * L - 1]
    residual = float(np.sum(np.abs(ah_full[2 * L - 1 :]) ** 2))
    return AutocorrEstimate(a_h=a_h, residual_energy=residual)


def colored_noise_bound(model: ChannelModel, N: int) -> float:
    """Upper bound on the expected energy of the autocorrelation noise terms."""
    return 2.0 * N * model.N0 * model.L + N * model.N0**2


def amplification_factor(eta: float) -> float:
    """Worst-case spectral-division noise amplification 1/(1-2*eta)^2."""
    if not 0.0 < eta < 0.5:
        raise ValueError("eta must lie in (0, 1/2)")
    return 1.0 / (1.0 - 2.0 * eta) ** 2


def estimation_mse_bound(model: ChannelModel, cb: HuffmanCodebook, N: int) -> float:
    """Mean-squared-error bound 18*N*N0*(N0+L), valid for eta < 1/3."""
    if cb.eta >= 1.0 / 3.0:
        raise EtaTooLarge("bound requires eta < 1/3; use amplification_factor")
    return 18.0 * N * model.N0 * (model.N0 + model.L)
