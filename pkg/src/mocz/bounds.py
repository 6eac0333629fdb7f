"""Robustness certificates for zero-based modulation.

Includes the perturbation certificate (how much coefficient noise keeps every
root inside a disc of radius delta around its original), a sharper exact
grid-searched bound, closed-form noise bounds for Huffman codebooks, an
annulus packing limit, and product-of-distance extrema for regular polygons
of zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundsDomainError, DegenerateLeading, DeltaTooLarge
from .poly import LEADING_THRESHOLD, ZeroSet, as_complex_vector, horner_eval, vieta_expand


@dataclass(frozen=True)
class PerturbationCertificate:
    delta: float
    epsilon: float
    dmin: float
    R: float
    xN_abs: float
    within_hypothesis: bool


def theorem2_bound(zeros: ZeroSet, delta: float) -> PerturbationCertificate:
    """Certified coefficient-noise level keeping each root in its delta-disc.

    epsilon = |x_N| * delta * (dmin-delta)^(N-1) / (sqrt(1+N) * (R+delta)^N).
    The closed form assumes at least one zero outside the unit circle; when
    all zeros are inside, R is clamped to 1 and the certificate is flagged.
    """
    dmin = zeros.min_pairwise_distance()
    if not np.isfinite(dmin) or dmin <= 0.0:
        raise BoundsDomainError("zeros must be simple (dmin > 0)")
    if delta < 0.0 or delta > dmin / 2.0:
        raise DeltaTooLarge("delta must lie in [0, dmin/2]")
    N = zeros.degree
    R_actual = zeros.max_modulus()
    within = R_actual >= 1.0
    R = max(1.0, R_actual)
    xN = abs(zeros.leading)
    eps = xN * delta * (dmin - delta) ** (N - 1) / (math.sqrt(1.0 + N) * (R + delta) ** N)
    return PerturbationCertificate(
        delta=float(delta), epsilon=float(eps), dmin=float(dmin), R=float(R),
        xN_abs=float(xN), within_hypothesis=within,
    )


def huffman_theorem2_at_half_dmin(N: int, R: float) -> float:
    """Specialization at delta = dmin/2 for the all-inner-zero codeword.

    Uses the zeros' actual maximal modulus 1/R rather than the clamped value,
    so it upper-bounds the (conservative) clamped certificate.
    """
    s = math.sin(math.pi / N)
    return 1.0 / (math.sqrt(1.0 + N) * math.sqrt(R ** (-2 * N) + 1.0) * (1.0 / s + 1.0) ** N)


def exact_worstcase_bound(zeros: ZeroSet, delta: float, theta_grid: int = 1000) -> float:
    """Grid-searched exact noise bound.

    sqrt of min over zeros and angles of |X(alpha + delta e^{i theta})|^2
    divided by sum_n |z|^{2n}; always at least the closed-form certificate.
    """
    dmin = zeros.min_pairwise_distance()
    if delta <= 0.0 or delta > dmin / 2.0:
        raise DeltaTooLarge("delta must lie in (0, dmin/2]")
    coeffs = vieta_expand(zeros)
    N = zeros.degree
    theta = np.linspace(0.0, 2.0 * np.pi, theta_grid, endpoint=False)
    ring = delta * np.exp(1j * theta)
    best = np.inf
    powers = 2 * np.arange(N + 1)
    for alpha in zeros.zeros:
        z = alpha + ring
        num = np.abs(horner_eval(coeffs, z)) ** 2
        den = (np.abs(z)[:, None] ** powers[None, :]).sum(axis=1)
        best = min(best, float(np.min(num / den)))
    return math.sqrt(best)


def huffman_bmocz_noise_bound(K: int, R: float, delta: float) -> float:
    """Closed-form maximal noise power guaranteeing delta-disc neighborhoods
    for Huffman codebooks with K = 4M zeros, M >= 3."""
    if K % 4 != 0 or K < 12:
        raise BoundsDomainError("K must equal 4M with M >= 3")
    if R <= 1.0:
        raise BoundsDomainError("R must exceed 1")
    M = K // 4
    N = K
    dmin = 2.0 * math.sin(math.pi / N) / R
    if delta < 0.0 or delta > dmin / 2.0:
        raise DeltaTooLarge("delta must lie in [0, dmin/2]")
    lead = 1.0 / (R ** (8 * M) + 1.0)
    ratio_rp = ((R + delta) ** 2 - 1.0) / ((R + delta) ** (8 * M) - 1.0)
    prod_m = math.prod(m**4 for m in range(3, M + 1))
    sine_ratio = (
        (math.sin(2.0 * math.pi / N) - math.sin(4.0 * math.pi / N) - 2.0 * math.sin(math.pi / N))
        / (2.0 * (1.0 - math.sin(2.0 * math.pi / N)))
    )
    return (
        lead
        * ratio_rp
        * R ** (2 - 4 * M)
        * delta**4
        * (dmin - delta) ** 4
        * prod_m
        * sine_ratio ** (4 * M - 12)
    )


def packing_limit(R: float, dmin: float) -> float:
    """Upper bound on how many zeros with pairwise distance dmin fit in the
    annulus between radii 1/R and R."""
    if R <= 1.0:
        raise BoundsDomainError("R must exceed 1")
    if dmin <= 0.0:
        raise BoundsDomainError("dmin must be positive")
    return math.pi * (R**2 - R**-2) / (dmin**2 * math.sqrt(12.0))


@dataclass(frozen=True)
class PolygonExtrema:
    min: float
    max: float
    argmin_theta: float
    argmax_theta: float


def polygon_product_extrema(N: int, r: float, delta: float, include_centroid: bool = False) -> PolygonExtrema:
    """Extrema over theta of the product of distances from delta*e^{i theta}
    to the vertices of a regular N-gon of radius r (optionally also to the
    centroid, which scales both extrema by delta)."""
    if N < 2 or r <= 0.0 or delta <= 0.0:
        raise BoundsDomainError("need N >= 2, r > 0, delta > 0")
    lo = abs(r**N - delta**N)
    hi = r**N + delta**N
    if include_centroid:
        lo *= delta
        hi *= delta
    return PolygonExtrema(min=lo, max=hi, argmin_theta=0.0, argmax_theta=math.pi / N)


@dataclass(frozen=True)
class VertexConjectureReport:
    holds: bool
    observed_min: float
    conjectured: float
    argmin_theta: float
    min_at_pi: bool


def verify_vertex_conjecture(N: int, r: float, delta: float, theta_grid: int = 10_000) -> VertexConjectureReport:
    """Numerically check that the minimal product of distances from a circle
    of radius delta around one vertex to all vertices is r^N - (r-delta)^N,
    attained opposite the vertex (theta = pi)."""
    if N < 2 or r <= 0.0:
        raise BoundsDomainError("need N >= 2 and r > 0")
    if not 0.0 < delta <= r * math.sin(math.pi / N):
        raise BoundsDomainError("delta must lie in (0, r*sin(pi/N)]")
    theta = np.linspace(0.0, 2.0 * np.pi, theta_grid, endpoint=False)
    z = r + delta * np.exp(1j * theta)
    products = np.abs(z**N - r**N)
    idx = int(np.argmin(products))
    observed = float(products[idx])
    conjectured = r**N - (r - delta) ** N
    step = 2.0 * np.pi / theta_grid
    return VertexConjectureReport(
        holds=bool(observed >= conjectured - 1e-9),
        observed_min=observed,
        conjectured=float(conjectured),
        argmin_theta=float(theta[idx]),
        min_at_pi=bool(abs(theta[idx] - math.pi) <= step),
    )


@dataclass(frozen=True)
class LemmaComparison:
    lhs: float
    rhs: float
    strict: bool


def centroid_vs_vertex_lemma(N: int, r: float, delta: float) -> LemmaComparison:
    """Compare the centroid-circle product bound delta*(r^N - delta^N) against
    the vertex-circle bound (r^N - (r-delta)^N)*(r-delta)."""
    if N < 2 or r <= 0.0:
        raise BoundsDomainError("need N >= 2 and r > 0")
    if not 0.0 < delta < r / 2.0:
        raise BoundsDomainError("delta must lie in (0, r/2)")
    lhs = delta * (r**N - delta**N)
    rhs = (r**N - (r - delta) ** N) * (r - delta)
    return LemmaComparison(lhs=float(lhs), rhs=float(rhs), strict=bool(lhs < rhs))


def vertex_lowerbound_huffman(M: int, r: float, delta: float) -> float:
    """Closed-form lower bound on the vertex-circle distance product for a
    regular 4M-gon, M >= 3, via two geometric reference points."""
    if M < 3:
        raise BoundsDomainError("M must be at least 3")
    if r <= 0.0:
        raise BoundsDomainError("r must be positive")
    if not 0.0 <= delta < r * math.sin(math.pi / (4 * M)):
        raise BoundsDomainError("delta must lie in [0, r*sin(pi/(4M)))")
    dt = delta / r
    s = math.sin(math.pi / (2 * M))
    per_m = (1.0 + s - 2.0 * dt * (dt + 1.0 + s)) * r**4 * math.sin(math.pi / (4 * M)) ** 2
    product = math.prod(per_m * (2 * m - 1) ** 2 for m in range(1, M + 1))
    return delta * (2.0 * r - delta) * product


def cauchy_root_bound(coeffs) -> float:
    """Every root has modulus at most 1 + max_k |x_k / x_N|."""
    c = as_complex_vector(coeffs)
    if len(c) < 2:
        raise ValueError("degree must be at least 1")
    if abs(c[-1]) <= LEADING_THRESHOLD * float(np.max(np.abs(c))):
        raise DegenerateLeading("leading coefficient below degeneracy threshold")
    return 1.0 + float(np.max(np.abs(c[:-1]))) / abs(c[-1])
