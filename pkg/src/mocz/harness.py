"""Reproducible Monte Carlo bit-error-rate experiments and baselines.

Every trial owns a counter-based RNG stream addressed by (seed, kind, SNR
point, trial index), so results are deterministic and independent of how
trials are distributed across workers. All enabled decoders see the same
(word, channel, noise) draw per trial for paired comparisons.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from .channel import ChannelModel, RngStream, complex_normal, sample_channel, transmit
from .codebook import build_codebook, optimal_radius
from .decoders import (
    codeword_signals,
    decode_dizet,
    decode_dizet_dft,
    decode_ml,
    decode_rfmd,
    ml_weighting,
    word_bits,
)
from .errors import ConfigError, UnderdeterminedEstimate

DECODER_NAMES = ("rfmd", "ml", "dizet", "dizet_dft")
BASELINE_NAMES = ("bpsk_coherent_analytic", "bpsk_coherent_mc", "pilot_qpsk")

_KIND_MOCZ = 0
_KIND_BPSK = 1
_KIND_PILOT = 2
_KIND_PILOT_SEQ = 3

_CHUNK_TRIALS = 500


def _stream_id(kind: int, point: int, trial: int) -> int:
    return (kind << 56) | (point << 40) | trial


@dataclass(frozen=True)
class ExperimentConfig:
    k: int
    radius: object  # float or "optimal:<lambda>"
    l: int
    snr_grid_db: tuple
    p: float = 1.0
    snr_axis: str = "rsnr"
    decoders: tuple = ("rfmd", "ml", "dizet")
    baselines: tuple = ()
    trials_per_point: int = 1000
    seed: int = 0
    max_bit_errors: int = 1000
    pilot_count: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError("k must be positive")
        if self.l < 1:
            raise ConfigError("l must be positive")
        if not 0.0 < self.p <= 1.0:
            raise ConfigError("p must lie in (0, 1]")
        if self.trials_per_point < 1:
            raise ConfigError("trials_per_point must be at least 1")
        if self.max_bit_errors < 1:
            raise ConfigError("max_bit_errors must be at least 1")
        grid = tuple(float(s) for s in self.snr_grid_db)
        if len(grid) == 0 or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("snr_grid_db must be non-empty and strictly increasing")
        object.__setattr__(self, "snr_grid_db", grid)
        if self.snr_axis not in ("rsnr", "ebn0"):
            raise ConfigError("snr_axis must be 'rsnr' or 'ebn0'")
        decoders = tuple(self.decoders)
        if any(d not in DECODER_NAMES for d in decoders):
            raise ConfigError(f"decoders must be a subset of {DECODER_NAMES}")
        object.__setattr__(self, "decoders", decoders)
        baselines = tuple(self.baselines)
        if any(b not in BASELINE_NAMES for b in baselines):
            raise ConfigError(f"baselines must be a subset of {BASELINE_NAMES}")
        object.__setattr__(self, "baselines", baselines)
        self.resolve_radius()

    def resolve_radius(self) -> float:
        r = self.radius
        if isinstance(r, str):
            if r.startswith("optimal:"):
                try:
                    lam = float(r.split(":", 1)[1])
                except ValueError as exc:
                    raise ConfigError(f"bad radius spec {r!r}") from exc
                return optimal_radius(self.k, lam)
            try:
                r = float(r)
            except ValueError as exc:
                raise ConfigError(f"bad radius spec {self.radius!r}") from exc
        r = float(r)
        if r <= 1.0:
            raise ConfigError("radius must exceed 1")
        return r

    @property
    def block_length(self) -> int:
        return self.k + self.l

    def n0_for_point(self, snr_db: float) -> float:
        snr = 10.0 ** (snr_db / 10.0)
        if self.snr_axis == "ebn0":
            snr = snr * self.k / self.block_length
        return 1.0 / snr


def config_from_dict(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    known = {f for f in ExperimentConfig.__dataclass_fields__}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    missing = {"k", "radius", "l", "snr_grid_db"} - set(data)
    if missing:
        raise ConfigError(f"missing config fields: {sorted(missing)}")
    try:
        return ExperimentConfig(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class BerPoint:
    snr_db: float
    bits_sent: int
    bit_errors: int
    ber: float
    ber_ci_halfwidth: float
    wall_time_s: float


@dataclass(frozen=True)
class BerCurve:
    decoder: str
    points: tuple
    metadata: dict = field(default_factory=dict)


def wilson_halfwidth(errors: int, n: int, z: float = 1.96) -> float:
    if n == 0:
        return 0.0
    p = errors / n
    return z * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / (1.0 + z * z / n)


def _make_point(snr_db, errors, trials, bits_per_trial, wall) -> BerPoint:
    bits = trials * bits_per_trial
    ber = errors / bits if bits else 0.0
    return BerPoint(
        snr_db=float(snr_db), bits_sent=int(bits), bit_errors=int(errors),
        ber=float(ber), ber_ci_halfwidth=wilson_halfwidth(errors, bits),
        wall_time_s=float(wall),
    )


def _mocz_chunk(cfg: ExperimentConfig, point_idx: int, start: int, count: int) -> np.ndarray:
    """Per-trial bit error counts, shape (count, len(cfg.decoders))."""
    R = cfg.resolve_radius()
    cb = build_codebook(cfg.k, R)
    table = codeword_signals(cb)
    n0 = cfg.n0_for_point(cfg.snr_grid_db[point_idx])
    model = ChannelModel(L=cfg.l, p=cfg.p, N0=n0)
    weighting = None
    if "ml" in cfg.decoders:
        # the simulation convention scales the signal by sqrt(N) and the
        # channel by 1/sqrt(E||h||^2); folding both into an effective noise
        # level keeps the weighting matched while only rescaling the metric
        n0_eff = n0 * model.expected_energy() / cfg.block_length
        weighting = ml_weighting(cb, ChannelModel(L=cfg.l, p=cfg.p, N0=n0_eff))
    errors = np.zeros((count, len(cfg.decoders)), dtype=np.int32)
    n_words = 1 << cfg.k
    for i in range(count):
        trial = start + i
        gen = RngStream(cfg.seed, _stream_id(_KIND_MOCZ, point_idx, trial)).generator()
        word = int(gen.integers(0, n_words))
        h = sample_channel(model, gen)
        y = transmit(table[word], h, model, gen)
        true_bits = word_bits(word, cfg.k)
        for d, name in enumerate(cfg.decoders):
            if name == "rfmd":
                result = decode_rfmd(y, cb)
            elif name == "ml":
                result = decode_ml(y, cb, weighting)
            elif name == "dizet":
                result = decode_dizet(y, cb)
            else:
                result = decode_dizet_dft(y, cb)
            errors[i, d] = int(np.sum(result.as_bits() != true_bits))
    return errors


def _aggregate_early_stop(chunks, n_streams: int, max_errors: int):
    """Walk per-trial error counts in trial order, per stream, stopping each
    stream once it reaches max_errors. Returns (errors, trials) per stream."""
    total_err = np.zeros(n_streams, dtype=np.int64)
    total_trials = np.zeros(n_streams, dtype=np.int64)
    active = np.ones(n_streams, dtype=bool)
    for chunk in chunks:
        count = chunk.shape[0]
        for d in np.nonzero(active)[0]:
            cum = total_err[d] + np.cumsum(chunk[:, d])
            hit = int(np.searchsorted(cum, max_errors))
            if hit < count:
                total_err[d] = cum[hit]
                total_trials[d] += hit + 1
                active[d] = False
            else:
                total_err[d] = cum[-1]
                total_trials[d] += count
        if not active.any():
            break
    return total_err, total_trials, active


def _chunk_bounds(total: int, chunk: int = _CHUNK_TRIALS):
    return [(start, min(chunk, total - start)) for start in range(0, total, chunk)]


def _map_chunks(fn, args_list, workers: int):
    if workers <= 1:
        for args in args_list:
            yield fn(*args)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, *zip(*args_list))


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> dict:
    """Run the configured sweep; returns curve name -> BerCurve."""
    curves = {}
    meta = {"config": asdict(cfg), "seed": cfg.seed}
    if cfg.decoders:
        per_decoder_points = {name: [] for name in cfg.decoders}
        for point_idx, snr_db in enumerate(cfg.snr_grid_db):
            t0 = time.perf_counter()
            bounds = _chunk_bounds(cfg.trials_per_point)
            args = [(cfg, point_idx, start, count) for start, count in bounds]
            chunks = _map_chunks(_mocz_chunk, args, workers)
            errs, trials, _ = _aggregate_early_stop(chunks, len(cfg.decoders), cfg.max_bit_errors)
            wall = time.perf_counter() - t0
            for d, name in enumerate(cfg.decoders):
                per_decoder_points[name].append(
                    _make_point(snr_db, errs[d], trials[d], cfg.k, wall)
                )
        for name in cfg.decoders:
            curves[name] = BerCurve(decoder=name, points=tuple(per_decoder_points[name]), metadata=meta)
    for name in cfg.baselines:
        if name == "bpsk_coherent_analytic":
            points = tuple(
                BerPoint(
                    snr_db=s, bits_sent=0, bit_errors=0,
                    ber=bpsk_flatfading_analytic(10.0 ** (s / 10.0) * (cfg.k / cfg.block_length if cfg.snr_axis == "ebn0" else 1.0)),
                    ber_ci_halfwidth=0.0, wall_time_s=0.0,
                )
                for s in cfg.snr_grid_db
            )
            curves[name] = BerCurve(decoder=name, points=points, metadata=meta)
        elif name == "bpsk_coherent_mc":
            curves[name] = bpsk_coherent_mc(cfg)
        else:
            curves[name] = pilot_qpsk_baseline(cfg)
    return curves


def bpsk_flatfading_analytic(rsnr: float) -> float:
    """Bit error probability of coherent BPSK over flat Rayleigh fading."""
    if rsnr < 0.0:
        raise ValueError("rsnr must be nonnegative")
    return 0.5 * (1.0 - math.sqrt(rsnr / (1.0 + rsnr)))


def bpsk_coherent_mc(cfg: ExperimentConfig, bits_per_point: int | None = None) -> BerCurve:
    """Monte Carlo coherent BPSK over a single-tap Rayleigh channel."""
    bits_per_point = bits_per_point or cfg.trials_per_point * cfg.k
    points = []
    for point_idx, snr_db in enumerate(cfg.snr_grid_db):
        t0 = time.perf_counter()
        n0 = cfg.n0_for_point(snr_db)
        gen = RngStream(cfg.seed, _stream_id(_KIND_BPSK, point_idx, 0)).generator()
        bits = gen.integers(0, 2, size=bits_per_point)
        symbols = 1.0 - 2.0 * bits
        h = complex_normal(gen, 1.0, bits_per_point)
        w = complex_normal(gen, n0, bits_per_point)
        y = h * symbols + w
        decided = (np.real(np.conj(h) * y) < 0.0).astype(np.int64)
        errors = int(np.sum(decided != bits))
        wall = time.perf_counter() - t0
        points.append(_make_point(snr_db, errors, bits_per_point, 1, wall))
    return BerCurve(decoder="bpsk_coherent_mc", points=tuple(points), metadata={"config": asdict(cfg)})


def _qpsk_symbols(bits: np.ndarray) -> np.ndarray:
    b = bits.reshape(-1, 2)
    return ((1.0 - 2.0 * b[:, 0]) + 1j * (1.0 - 2.0 * b[:, 1])) / math.sqrt(2.0)


def _pilot_chunk(cfg: ExperimentConfig, point_idx: int, start: int, count: int) -> np.ndarray:
    L = cfg.l
    P = cfg.pilot_count if cfg.pilot_count is not None else L
    if P < 1:
        raise ConfigError("pilot_count must be at least 1")
    D = -(-cfg.k // 2)  # data symbols so the bit count matches K
    n_bits = 2 * D
    n0 = cfg.n0_for_point(cfg.snr_grid_db[point_idx])
    model = ChannelModel(L=L, p=cfg.p, N0=n0)
    assumed = min(P, L)  # with fewer pilots the receiver assumes a short channel
    # symbol power chosen so energy per bit matches the zero-codebook scheme
    rho = 2.0 * D * cfg.block_length / (cfg.k * (P + D))
    pilot_gen = RngStream(cfg.seed, _stream_id(_KIND_PILOT_SEQ, 0, 0)).generator()
    pilot_bits = pilot_gen.integers(0, 2, size=2 * P)
    pilots = _qpsk_symbols(pilot_bits)
    errors = np.zeros((count, 1), dtype=np.int32)
    for i in range(count):
        trial = start + i
        gen = RngStream(cfg.seed, _stream_id(_KIND_PILOT, point_idx, trial)).generator()
        data_bits = gen.integers(0, 2, size=n_bits)
        s = math.sqrt(rho) * np.concatenate([pilots, _qpsk_symbols(data_bits)])
        h = sample_channel(model, gen) / math.sqrt(model.expected_energy())
        y = np.convolve(s, h) + complex_normal(gen, n0, len(s) + L - 1)
        # least-squares channel estimate from the pilot-only samples
        T = np.zeros((P, assumed), dtype=np.complex128)
        for n in range(P):
            for l in range(min(assumed, n + 1)):
                T[n, l] = s[n - l]
        if np.linalg.matrix_rank(T) < assumed:
            raise UnderdeterminedEstimate("pilot system is rank deficient")
        hhat = np.linalg.lstsq(T, y[:P], rcond=None)[0]
        # zero-forcing equalization of the full block under the assumed length
        rows = len(s) + assumed - 1
        C = np.zeros((rows, len(s)), dtype=np.complex128)
        for l in range(assumed):
            idx = np.arange(len(s))
            C[idx + l, idx] += hhat[l]
        shat = np.linalg.lstsq(C, y[:rows], rcond=None)[0]
        data_hat = shat[P : P + D]
        decided = np.empty(n_bits, dtype=np.int64)
        decided[0::2] = (np.real(data_hat) < 0.0).astype(np.int64)
        decided[1::2] = (np.imag(data_hat) < 0.0).astype(np.int64)
        errors[i, 0] = int(np.sum(decided != data_bits))
    return errors


def pilot_qpsk_baseline(cfg: ExperimentConfig, workers: int = 1) -> BerCurve:
    """Pilot-aided QPSK with least-squares channel estimation and
    zero-forcing equalization through the same channel model."""
    D = -(-cfg.k // 2)
    points = []
    for point_idx, snr_db in enumerate(cfg.snr_grid_db):
        t0 = time.perf_counter()
        bounds = _chunk_bounds(cfg.trials_per_point)
        args = [(cfg, point_idx, start, count) for start, count in bounds]
        chunks = _map_chunks(_pilot_chunk, args, workers)
        errs, trials, _ = _aggregate_early_stop(chunks, 1, cfg.max_bit_errors)
        wall = time.perf_counter() - t0
        points.append(_make_point(snr_db, errs[0], trials[0], 2 * D, wall))
    return BerCurve(decoder="pilot_qpsk", points=tuple(points), metadata={"config": asdict(cfg)})


CSV_HEADER = "snr_db,decoder,bits_sent,bit_errors,ber,ber_ci_halfwidth,wall_time_s"


def curves_to_csv(curves: dict) -> str:
    lines = [CSV_HEADER]
    for name in sorted(curves):
        for pt in curves[name].points:
            lines.append(
                f"{pt.snr_db:.6g},{name},{pt.bits_sent},{pt.bit_errors},"
                f"{pt.ber:.12g},{pt.ber_ci_halfwidth:.12g},{pt.wall_time_s:.6f}"
            )
    return "\n".join(lines) + "\n"


def curves_to_dict(curves: dict) -> dict:
    return {
        name: {
            "decoder": curve.decoder,
            "points": [asdict(pt) for pt in curve.points],
            "metadata": curve.metadata,
        }
        for name, curve in curves.items()
    }
