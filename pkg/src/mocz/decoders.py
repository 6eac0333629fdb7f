"""Receivers: root-finding minimum distance, exhaustive ML, and direct zero
testing (polynomial evaluation or DFT based)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelModel
from .codebook import HuffmanCodebook, signal_zeros
from .errors import NotPositiveDefinite, SearchBudgetExceeded
from .poly import find_roots, horner_eval, vieta_expand

EMPTY_SECTOR = "EmptySector"
ML_MAX_BITS = 24
_TABLE_MAX_BITS = 16


@dataclass(frozen=True)
class DecodeResult:
    bits: tuple
    margins: tuple
    flags: tuple = field(default=None)

    def __post_init__(self):
        if self.flags is None:
            object.__setattr__(self, "flags", tuple(None for _ in self.bits))

    def as_bits(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=np.int64)


def word_bits(index: int, K: int) -> np.ndarray:
    """Bit k of the enumeration index selects pair k."""
    return (index >> np.arange(K)) & 1


def word_index(bits) -> int:
    b = np.asarray(bits, dtype=np.int64)
    return int((b << np.arange(len(b))).sum())


_signal_table_cache: dict = {}


def codeword_signals(cb: HuffmanCodebook) -> np.ndarray:
    """(2**K, K+1) array of all encoded signals, rows indexed by word_index."""
    key = (cb.K, cb.R)
    table = _signal_table_cache.get(key)
    if table is not None:
        return table
    if cb.K > _TABLE_MAX_BITS:
        raise SearchBudgetExceeded("codeword table limited to K <= 16")
    coeffs = np.ones((1, 1), dtype=np.complex128)
    for k in range(cb.K):
        rows, width = coeffs.shape
        grown = np.zeros((2 * rows, width + 1), dtype=np.complex128)
        # bit k = 0 rows first (inner zero), then bit k = 1 rows (outer zero)
        for half, alpha in ((0, cb.inner(k)), (1, cb.outer(k))):
            block = grown[half * rows : (half + 1) * rows]
            block[:, 1:] += coeffs
            block[:, :-1] -= alpha * coeffs
        coeffs = grown
    coeffs /= np.linalg.norm(coeffs, axis=1, keepdims=True)
    lead = coeffs[:, -1]
    coeffs *= (np.conj(lead) / np.abs(lead))[:, None]
    coeffs[:, -1] = coeffs[:, -1].real
    _signal_table_cache[key] = coeffs
    return coeffs


def _trim_trailing(y: np.ndarray) -> np.ndarray:
    mags = np.abs(y)
    scale = mags.max()
    if scale == 0.0:
        return y[:0]
    keep = np.nonzero(mags > 1e-12 * scale)[0][-1] + 1
    return y[:keep]


def decode_rfmd(y, cb: HuffmanCodebook) -> DecodeResult:
    """Factor the received polynomial and decide each bit by the nearest
    codebook zero among the roots falling in that pair's phase sector."""
    yv = np.asarray(y, dtype=np.complex128)
    trimmed = _trim_trailing(yv)
    if len(trimmed) < 2:
        # zero (or constant) received block: no roots to test
        return DecodeResult(
            bits=tuple(0 for _ in range(cb.K)),
            margins=tuple(0.0 for _ in range(cb.K)),
            flags=tuple(EMPTY_SECTOR for _ in range(cb.K)),
        )
    roots = np.asarray(find_roots(trimmed).zeros)
    K = cb.K
    phases = np.mod(np.angle(roots), 2.0 * np.pi)
    # nearest sector phase; an exact midpoint goes to the lower index
    sectors = np.mod(np.ceil(phases * K / (2.0 * np.pi) - 0.5).astype(int), K)
    outer = np.array([cb.outer(k) for k in range(K)])
    inner = np.array([cb.inner(k) for k in range(K)])
    bits, margins, flags = [], [], []
    for k in range(K):
        members = roots[sectors == k]
        flag = None
        if members.size == 0:
            dists = np.minimum(np.abs(roots - outer[k]), np.abs(roots - inner[k]))
            members = roots[[int(np.argmin(dists))]]
            flag = EMPTY_SECTOR
        d_out = float(np.min(np.abs(members - outer[k])))
        d_in = float(np.min(np.abs(members - inner[k])))
        bits.append(1 if d_out < d_in else 0)
        margins.append(abs(d_in - d_out))
        flags.append(flag)
    return DecodeResult(bits=tuple(bits), margins=tuple(margins), flags=tuple(flags))


@dataclass(frozen=True)
class MlWeighting:
    """B = sigma^2 * D_p^{-1} + A_L with a precomputed inverse square root."""

    B: np.ndarray
    inv_sqrt: np.ndarray
    L: int


def ml_weighting(cb: HuffmanCodebook, model: ChannelModel) -> MlWeighting:
    L = model.L
    a = cb.autocorrelation()
    K = cb.K
    lags = np.arange(L)[:, None] - np.arange(L)[None, :]
    A = np.where(np.abs(lags) <= K, a[np.clip(K + lags, 0, 2 * K)], 0.0)
    A = A.astype(np.complex128)
    B = A + np.diag(model.N0 * model.p ** (-np.arange(L, dtype=np.float64)))
    if np.max(np.abs(B - B.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(B))):
        raise NotPositiveDefinite("weighting matrix is not Hermitian")
    w, V = np.linalg.eigh(B)
    if w.min() <= 1e-12:
        raise NotPositiveDefinite("weighting matrix is not positive definite")
    inv_sqrt = (V * (w**-0.5)) @ V.conj().T
    return MlWeighting(B=B, inv_sqrt=inv_sqrt, L=L)


def decode_ml(y, cb: HuffmanCodebook, w: MlWeighting) -> DecodeResult:
    """Exhaustive maximizer of ||B^{-1/2} X* y||^2 over all codewords."""
    if cb.K > ML_MAX_BITS:
        raise SearchBudgetExceeded(f"exhaustive search limited to K <= {ML_MAX_BITS}")
    yv = np.asarray(y, dtype=np.complex128)
    L = w.L
    if len(yv) != cb.K + L:
        raise ValueError("received block length must equal K + L")
    table = codeword_signals(cb)
    # windows[n, l] = y[n + l]; (X* y)_l = sum_n conj(x_n) y_{n+l}
    windows = np.lib.stride_tricks.sliding_window_view(yv, L)
    corr = table.conj() @ windows
    weighted = corr @ w.inv_sqrt.T
    metrics = np.einsum("ij,ij->i", weighted, weighted.conj()).real
    order = np.argsort(metrics)
    best = int(order[-1])
    # deterministic tie break: the lowest word index among maximizers
    ties = np.nonzero(metrics == metrics[best])[0]
    best = int(ties.min())
    second = metrics[order[-2]] if len(metrics) > 1 else metrics[best]
    margin = float(metrics[best] - second)
    bits = tuple(int(b) for b in word_bits(best, cb.K))
    return DecodeResult(bits=bits, margins=tuple(margin for _ in bits))


def geometric_weight(alpha_abs: float, N: int) -> float:
    """sqrt((1-|a|^2)/(1-|a|^{2N})), continuously extended at |a| = 1."""
    a2 = alpha_abs * alpha_abs
    if abs(a2 - 1.0) < 1e-12:
        return 1.0 / np.sqrt(N)
    return float(np.sqrt((1.0 - a2) / (1.0 - a2**N)))


def _dizet_decision(Yo: np.ndarray, Yi: np.ndarray, cb: HuffmanCodebook, N: int) -> DecodeResult:
    wo = geometric_weight(cb.R, N)
    wi = geometric_weight(1.0 / cb.R, N)
    mo = wo * np.abs(Yo)
    mi = wi * np.abs(Yi)
    bits = tuple(int(v) for v in (mo < mi))
    margins = tuple(float(m) for m in np.abs(mi - mo))
    return DecodeResult(bits=bits, margins=margins)


def decode_dizet(y, cb: HuffmanCodebook) -> DecodeResult:
    """Evaluate the received polynomial at both candidate zeros per pair and
    compare the geometrically weighted magnitudes."""
    yv = np.asarray(y, dtype=np.complex128)
    N = len(yv)
    outer = np.array([cb.outer(k) for k in range(cb.K)])
    inner = np.array([cb.inner(k) for k in range(cb.K)])
    Yo = horner_eval(yv, outer)
    Yi = horner_eval(yv, inner)
    return _dizet_decision(Yo, Yi, cb, N)


def decode_dizet_dft(y, cb: HuffmanCodebook) -> DecodeResult:
    """Same rule via two DFTs; y is zero-padded so the codebook phases fall on
    DFT bins, which leaves the polynomial evaluations unchanged."""
    yv = np.asarray(y, dtype=np.complex128)
    N = len(yv)
    K = cb.K
    t = -(-N // K)
    Np = t * K
    ypad = np.zeros(Np, dtype=np.complex128)
    ypad[:N] = yv
    n = np.arange(Np)
    idx = (-t * np.arange(K)) % Np
    Yo = np.fft.fft(ypad * cb.R**n)[idx]
    Yi = np.fft.fft(ypad * cb.R ** (-n.astype(np.float64)))[idx]
    return _dizet_decision(Yo, Yi, cb, N)
