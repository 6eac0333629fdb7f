import math

import numpy as np
import pytest

from conftest import grid_extrema
from mocz.bounds import (
    cauchy_root_bound,
    centroid_vs_vertex_lemma,
    exact_worstcase_bound,
    huffman_bmocz_noise_bound,
    huffman_theorem2_at_half_dmin,
    packing_limit,
    polygon_product_extrema,
    theorem2_bound,
    verify_vertex_conjecture,
    vertex_lowerbound_huffman,
)
from mocz.codebook import build_codebook, encode, optimal_radius, signal_zeros
from mocz.errors import BoundsDomainError, DegenerateLeading, DeltaTooLarge
from mocz.poly import ZeroSet, find_roots, vieta_expand


def normalized_zero_set(word, cb):
    zs = signal_zeros(word, cb)
    lead = encode(word, cb).as_array()[-1]
    return ZeroSet(zs.zeros, lead)


class TestPerturbationCertificate:
    def test_zero_delta_gives_zero_epsilon(self):
        zs = normalized_zero_set([1, 0, 1, 0], build_codebook(4, optimal_radius(4)))
        cert = theorem2_bound(zs, 0.0)
        assert cert.epsilon == 0.0
        assert cert.within_hypothesis

    def test_delta_domain(self):
        zs = normalized_zero_set([1, 0, 1, 0], build_codebook(4, optimal_radius(4)))
        with pytest.raises(DeltaTooLarge):
            theorem2_bound(zs, zs.min_pairwise_distance())
        with pytest.raises(DeltaTooLarge):
            theorem2_bound(zs, -0.1)

    def test_coincident_zeros_rejected(self):
        with pytest.raises(BoundsDomainError):
            theorem2_bound(ZeroSet((1.0, 1.0)), 0.1)

    def test_all_inside_clamps_and_flags(self):
        zs = ZeroSet((0.3, -0.3, 0.3j))
        cert = theorem2_bound(zs, 0.1)
        assert cert.R == 1.0
        assert not cert.within_hypothesis

    def test_closed_form_specialization(self):
        # the all-inner codeword at delta = dmin/2 has a product-free closed
        # form when the zeros' true maximal modulus 1/R is used
        for K in (4, 8, 12):
            cb = build_codebook(K, optimal_radius(K))
            zs = normalized_zero_set([0] * K, cb)
            N, R = K, cb.R
            dmin = zs.min_pairwise_distance()
            delta = dmin / 2.0
            raw = (
                abs(zs.leading)
                * delta
                * (dmin - delta) ** (N - 1)
                / (math.sqrt(1.0 + N) * (1.0 / R + delta) ** N)
            )
            closed = huffman_theorem2_at_half_dmin(N, R)
            assert closed == pytest.approx(raw, rel=1e-10)
            # the clamped certificate is more conservative
            cert = theorem2_bound(zs, delta)
            assert not cert.within_hypothesis
            assert cert.epsilon <= closed

    def test_certificate_actually_certifies(self):
        # perturb coefficients at exactly the certified level; every root must
        # stay within delta of its original
        cb = build_codebook(8, optimal_radius(8))
        rng = np.random.default_rng(31)
        for _ in range(10):
            word = rng.integers(0, 2, size=8)
            zs = normalized_zero_set(word, cb)
            delta = 0.9 * zs.min_pairwise_distance() / 2.0
            cert = theorem2_bound(zs, delta)
            coeffs = vieta_expand(zs)
            for _ in range(5):
                w = rng.standard_normal(9) + 1j * rng.standard_normal(9)
                w *= cert.epsilon / np.linalg.norm(w)
                perturbed = np.asarray(find_roots(coeffs + w).zeros)
                originals = np.asarray(zs.zeros)
                for z in originals:
                    assert np.min(np.abs(perturbed - z)) <= delta + 1e-12

    def test_exact_bound_dominates_certificate(self):
        cb = build_codebook(8, optimal_radius(8))
        rng = np.random.default_rng(32)
        for _ in range(10):
            word = rng.integers(0, 2, size=8)
            zs = normalized_zero_set(word, cb)
            delta = 0.8 * zs.min_pairwise_distance() / 2.0
            cert = theorem2_bound(zs, delta)
            exact = exact_worstcase_bound(zs, delta, theta_grid=400)
            assert exact >= cert.epsilon

    def test_exact_bound_grid_converged(self):
        zs = normalized_zero_set([1, 0, 1, 1, 0, 0, 1, 0], build_codebook(8, optimal_radius(8)))
        delta = 0.5 * zs.min_pairwise_distance() / 2.0
        coarse = exact_worstcase_bound(zs, delta, theta_grid=1000)
        fine = exact_worstcase_bound(zs, delta, theta_grid=100_000)
        assert coarse == pytest.approx(fine, rel=5e-3)


class TestHuffmanNoiseBound:
    def test_domain(self):
        with pytest.raises(BoundsDomainError):
            huffman_bmocz_noise_bound(10, 1.1, 0.01)
        with pytest.raises(BoundsDomainError):
            huffman_bmocz_noise_bound(8, 1.1, 0.01)
        with pytest.raises(BoundsDomainError):
            huffman_bmocz_noise_bound(12, 1.0, 0.01)
        dmin = 2.0 * math.sin(math.pi / 12) / 1.1
        with pytest.raises(DeltaTooLarge):
            huffman_bmocz_noise_bound(12, 1.1, dmin)

    def test_m3_structure(self):
        # at M = 3 the factorial product is 3^4 = 81 and the sine-ratio power
        # vanishes, so the bound reduces to the first four factors times 81
        K, R = 12, 1.08
        dmin = 2.0 * math.sin(math.pi / K) / R
        delta = dmin / 2.0
        lead = 1.0 / (R**24 + 1.0)
        ratio = ((R + delta) ** 2 - 1.0) / ((R + delta) ** 24 - 1.0)
        expected = lead * ratio * R**-10 * delta**4 * (dmin - delta) ** 4 * 81.0
        assert huffman_bmocz_noise_bound(K, R, delta) == pytest.approx(expected, rel=1e-12)

    def test_positive_on_interior(self):
        for K in (12, 16, 20):
            R = optimal_radius(K)
            dmin = 2.0 * math.sin(math.pi / K) / R
            for frac in (0.25, 0.5, 1.0):
                assert huffman_bmocz_noise_bound(K, R, frac * dmin / 2.0) >= 0.0

    def test_zero_at_zero_delta(self):
        assert huffman_bmocz_noise_bound(12, 1.1, 0.0) == 0.0


class TestPackingLimit:
    def test_value(self):
        assert packing_limit(2.0, 1.0) == pytest.approx(math.pi * 3.75 / math.sqrt(12.0))

    def test_monotone_in_dmin(self):
        assert packing_limit(1.5, 0.1) > packing_limit(1.5, 0.2)

    def test_domain(self):
        with pytest.raises(BoundsDomainError):
            packing_limit(1.0, 0.1)
        with pytest.raises(BoundsDomainError):
            packing_limit(1.5, 0.0)


class TestPolygonExtrema:
    @pytest.mark.parametrize("N", [2, 5, 9, 12])
    @pytest.mark.parametrize("frac", [0.1, 0.3, 0.49])
    def test_closed_form_matches_brute_force(self, N, frac):
        r, delta = 1.3, 1.3 * frac
        ext = polygon_product_extrema(N, r, delta)
        vertices = r * np.exp(2j * np.pi * np.arange(N) / N)

        def product(theta):
            z = delta * np.exp(1j * theta)
            return np.prod(np.abs(z[:, None] - vertices[None, :]), axis=1)

        lo, hi = grid_extrema(product, 10_000)
        assert ext.min == pytest.approx(lo, rel=1e-9)
        assert ext.max == pytest.approx(hi, rel=1e-9)

    def test_centroid_variant_scales_by_delta(self):
        base = polygon_product_extrema(6, 1.0, 0.4)
        with_centroid = polygon_product_extrema(6, 1.0, 0.4, include_centroid=True)
        assert with_centroid.min == pytest.approx(0.4 * base.min)
        assert with_centroid.max == pytest.approx(0.4 * base.max)

    def test_domain(self):
        with pytest.raises(BoundsDomainError):
            polygon_product_extrema(1, 1.0, 0.1)


class TestVertexConjecture:
    @pytest.mark.parametrize("N", range(2, 17))
    def test_holds_across_deltas(self, N):
        for delta in np.linspace(0.05, 1.0, 8) * math.sin(math.pi / N):
            report = verify_vertex_conjecture(N, 1.0, float(delta), theta_grid=4000)
            assert report.holds
            assert report.min_at_pi

    def test_domain(self):
        with pytest.raises(BoundsDomainError):
            verify_vertex_conjecture(4, 1.0, 2.0)


class TestCentroidVsVertexLemma:
    def test_strict_inequality_on_interior(self):
        for N in (2, 3, 5, 9, 16):
            for frac in (0.01, 0.2, 0.49):
                cmp = centroid_vs_vertex_lemma(N, 1.2, 1.2 * frac)
                assert cmp.strict
                assert cmp.lhs < cmp.rhs

    def test_domain(self):
        with pytest.raises(BoundsDomainError):
            centroid_vs_vertex_lemma(3, 1.0, 0.5)
        with pytest.raises(BoundsDomainError):
            centroid_vs_vertex_lemma(3, 1.0, 0.0)


class TestVertexLowerBound:
    @pytest.mark.parametrize("M", [3, 4, 5])
    def test_below_true_minimum(self, M):
        # the closed form must lower-bound the true minimal distance product
        # from the vertex circle to all 4M vertices
        N = 4 * M
        r = 1.0
        for frac in (0.1, 0.5, 0.9):
            delta = frac * r * math.sin(math.pi / N)
            theta = np.linspace(0.0, 2.0 * np.pi, 20_000, endpoint=False)
            z = r + delta * np.exp(1j * theta)
            true_min = float(np.min(np.abs(z**N - r**N)))
            assert vertex_lowerbound_huffman(M, r, delta) <= true_min

    def test_domain(self):
        with pytest.raises(BoundsDomainError):
            vertex_lowerbound_huffman(2, 1.0, 0.01)
        with pytest.raises(BoundsDomainError):
            vertex_lowerbound_huffman(3, 1.0, 0.9)


class TestCauchyBound:
    def test_contains_all_roots(self):
        rng = np.random.default_rng(33)
        for _ in range(100):
            n = int(rng.integers(2, 10))
            c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            bound = cauchy_root_bound(c)
            roots = np.roots(c[::-1])
            assert np.max(np.abs(roots)) <= bound + 1e-9

    def test_value(self):
        assert cauchy_root_bound([3.0, -1.0, 2.0]) == pytest.approx(2.5)

    def test_domain(self):
        with pytest.raises(ValueError):
            cauchy_root_bound([1.0])
        with pytest.raises(DegenerateLeading):
            cauchy_root_bound([1.0, 1e-16])
