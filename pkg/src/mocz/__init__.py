"""Noncoherent communication by modulation on conjugate-reciprocal zeros:
codebooks, channel simulation, decoders, blind estimation, robustness
bounds, and a reproducible Monte Carlo harness."""

from .blind import (
    AutocorrEstimate,
    amplification_factor,
    colored_noise_bound,
    estimate_channel_autocorr,
    estimation_mse_bound,
)
from .bounds import (
    PerturbationCertificate,
    cauchy_root_bound,
    centroid_vs_vertex_lemma,
    exact_worstcase_bound,
    huffman_bmocz_noise_bound,
    packing_limit,
    polygon_product_extrema,
    theorem2_bound,
    verify_vertex_conjecture,
    vertex_lowerbound_huffman,
)
from .channel import ChannelModel, RngStream, ebn0_from_snr, rsnr, sample_channel, transmit
from .codebook import (
    HuffmanCodebook,
    Signal,
    build_codebook,
    encode,
    eta_from_radius,
    optimal_radius,
    papr_expected,
    signal_zeros,
)
from .decoders import (
    DecodeResult,
    MlWeighting,
    decode_dizet,
    decode_dizet_dft,
    decode_ml,
    decode_rfmd,
    geometric_weight,
    ml_weighting,
)
from .harness import (
    BerCurve,
    BerPoint,
    ExperimentConfig,
    bpsk_flatfading_analytic,
    config_from_dict,
    curves_to_csv,
    pilot_qpsk_baseline,
    run_experiment,
)
from .poly import (
    ZeroSet,
    autocorrelation,
    dft,
    find_roots,
    horner_eval,
    inverse_dft,
    linear_convolve,
    vieta_expand,
)

__all__ = [name for name in dir() if not name.startswith("_")]
