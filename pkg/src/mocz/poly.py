"""Complex polynomial primitives.

Coefficient vectors are stored in ascending order (x_0, ..., x_K), so the
polynomial is X(z) = sum_k x_k z^k.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLeading, NonConvergence

LEADING_THRESHOLD = 1e-12
ROOT_TOL = 1e-9
MAX_ITERATIONS = 200
STEP_TOL = 1e-12


def as_complex_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("expected a non-empty 1-d complex vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("coefficient vector contains NaN or Inf")
    return v


@dataclass(frozen=True)
class ZeroSet:
    """A polynomial given by its roots and leading coefficient."""

    zeros: tuple
    leading: complex = 1.0 + 0.0j

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        object.__setattr__(self, "leading", complex(self.leading))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def min_pairwise_distance(self) -> float:
        z = np.asarray(self.zeros)
        if z.size < 2:
            return np.inf
        d = np.abs(z[:, None] - z[None, :])
        np.fill_diagonal(d, np.inf)
        return float(d.min())

    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.zeros)))


def horner_eval(coeffs, z):
    """Evaluate the polynomial at one or more points by Horner's rule."""
    c = as_complex_vector(coeffs)
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, c[-1])
    for k in range(len(c) - 2, -1, -1):
        acc = acc * z + c[k]
    if acc.ndim == 0:
        return complex(acc)
    return acc


def vieta_expand(zeros: ZeroSet) -> np.ndarray:
    """Coefficients of leading * prod_k (z - alpha_k), ascending order."""
    coeffs = np.array([zeros.leading], dtype=np.complex128)
    for alpha in zeros.zeros:
        coeffs = np.convolve(coeffs, np.array([-alpha, 1.0], dtype=np.complex128))
    return coeffs


def linear_convolve(a, b) -> np.ndarray:
    return np.convolve(as_complex_vector(a), as_complex_vector(b))


def autocorrelation(x) -> np.ndarray:
    """Aperiodic autocorrelation: x convolved with its conjugate reversal."""
    v = as_complex_vector(x)
    return np.convolve(v, np.conj(v[::-1]))


def dft(x, size: int) -> np.ndarray:
    """Unitary forward DFT of x zero-padded to the given size."""
    v = as_complex_vector(x)
    if size < len(v):
        raise ValueError("dft size must be at least len(x)")
    return np.fft.fft(v, n=size) / np.sqrt(size)


def inverse_dft(x) -> np.ndarray:
    v = as_complex_vector(x)
    return np.fft.ifft(v) * np.sqrt(len(v))


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    radius = 1.0 + np.max(np.abs(c[:-1])) / abs(c[-1])
    k = np.arange(n)
    # distinct, slightly irregular phases so symmetric configurations cannot
    # lock the simultaneous iteration
    phases = 2.0 * np.pi * (k + 0.25) / n + 0.42 / n
    radii = radius * (1.0 + 1e-3 * k / max(n, 1))
    return radii * np.exp(1j * phases)


def find_roots(coeffs) -> ZeroSet:
    """All roots of the polynomial via Aberth-Ehrlich simultaneous iteration."""
    c = as_complex_vector(coeffs)
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        raise DegenerateLeading("zero polynomial has no defined roots")
    if abs(c[-1]) <= LEADING_THRESHOLD * scale:
        raise DegenerateLeading("leading coefficient below degeneracy threshold")
    n = len(c) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return ZeroSet((-c[0] / c[1],), c[1])

    dc = c[1:] * np.arange(1, n + 1)
    z = _initial_guesses(c)
    converged = False
    for _ in range(MAX_ITERATIONS):
        pv = horner_eval(c, z)
        dv = horner_eval(dc, z)
        dv = np.where(np.abs(dv) < 1e-300, 1e-300, dv)
        newton = pv / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        denom = 1.0 - newton * inv.sum(axis=1)
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        step = newton / denom
        z = z - step
        if np.max(np.abs(step)) < STEP_TOL * max(1.0, float(np.max(np.abs(z)))):
            converged = True
            break
    if not converged:
        raise NonConvergence("root iteration did not converge")
    # relative forward error: compare |X(z)| against the evaluation magnitude
    # sum_k |c_k| |z|^k, which is the attainable rounding scale at each root
    residual = np.abs(horner_eval(c, z))
    eval_scale = np.polyval(np.abs(c)[::-1], np.abs(z))
    if np.max(residual / np.maximum(eval_scale, scale)) > ROOT_TOL:
        raise NonConvergence("root residual exceeds tolerance")
    return ZeroSet(tuple(z), c[-1])
