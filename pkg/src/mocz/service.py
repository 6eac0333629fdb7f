"""HTTP service exposing encoding, decoding, simulation, and bound reports."""
from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, HTTPException

from . import bounds as bounds_mod
from .channel import ChannelModel
from .codebook import HuffmanCodebook, build_codebook, encode, optimal_radius, signal_zeros
from .decoders import decode_dizet, decode_dizet_dft, decode_ml, decode_rfmd, ml_weighting
from .errors import ConfigError, MoczError
from .harness import config_from_dict, curves_to_dict, run_experiment
from .poly import ZeroSet
from .schemas import (
    BerCurveModel,
    BoundsRequest,
    BoundsResponse,
    CertificateModel,
    CodebookModel,
    ComplexNumber,
    ConjectureRow,
    DecodeRequest,
    DecodeResponse,
    EncodeRequest,
    EncodeResponse,
    SimulateRequest,
    SimulateResponse,
    ZeroPair,
)

app = FastAPI(title="mocz", description="Modulation on conjugate-reciprocal zeros")


def parse_bits(text: str, k: int | None) -> list[int]:
    text = text.strip()
    if text.startswith(("0x", "0X")):
        value = int(text, 16)
        if k is None:
            raise ConfigError("hex bit words require an explicit k")
        bits = [(value >> (k - 1 - i)) & 1 for i in range(k)]
    else:
        if not text or set(text) - {"0", "1"}:
            raise ConfigError("bits must be a binary string or 0x-prefixed hex")
        bits = [int(c) for c in text]
    if k is not None and len(bits) != k:
        raise ConfigError(f"expected {k} bits, got {len(bits)}")
    return bits


def resolve_radius(spec, k: int) -> float:
    if isinstance(spec, str):
        if spec.startswith("optimal:"):
            return optimal_radius(k, float(spec.split(":", 1)[1]))
        spec = float(spec)
    if spec <= 1.0:
        raise ConfigError("radius must exceed 1")
    return float(spec)


def codebook_to_model(cb: HuffmanCodebook) -> CodebookModel:
    return CodebookModel(
        K=cb.K, R=cb.R, eta=cb.eta,
        pairs=[ZeroPair(outer=ComplexNumber.of(o), inner=ComplexNumber.of(i)) for o, i in cb.pairs],
    )


def codebook_from_model(model: CodebookModel) -> HuffmanCodebook:
    cb = build_codebook(model.K, model.R)
    given = np.array([z.value() for pair in model.pairs for z in (pair.outer, pair.inner)])
    if len(model.pairs) != model.K or np.max(np.abs(given - cb.all_zeros())) > 1e-9:
        raise ConfigError("codebook zeros inconsistent with K and R")
    return cb


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/encode", response_model=EncodeResponse)
def encode_endpoint(req: EncodeRequest) -> EncodeResponse:
    try:
        bits = parse_bits(req.bits, req.k)
        k = req.k if req.k is not None else len(bits)
        cb = build_codebook(k, resolve_radius(req.radius, k))
        signal = encode(bits, cb)
    except (ConfigError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return EncodeResponse(
        coeffs=[ComplexNumber.of(c) for c in signal.coeffs],
        codebook=codebook_to_model(cb),
    )


@app.post("/decode", response_model=DecodeResponse)
def decode_endpoint(req: DecodeRequest) -> DecodeResponse:
    try:
        cb = codebook_from_model(req.codebook)
        y = np.array([s.value() for s in req.samples])
        if req.decoder == "rfmd":
            result = decode_rfmd(y, cb)
        elif req.decoder == "dizet":
            result = decode_dizet(y, cb)
        elif req.decoder == "dizet_dft":
            result = decode_dizet_dft(y, cb)
        elif req.decoder == "ml":
            if req.channel is None:
                raise ConfigError("ml decoding requires a channel model")
            model = ChannelModel(L=req.channel.L, p=req.channel.p, N0=req.channel.N0)
            result = decode_ml(y, cb, ml_weighting(cb, model))
        else:
            raise ConfigError(f"unknown decoder {req.decoder!r}")
    except (ConfigError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except MoczError as exc:
        raise HTTPException(status_code=500, detail=str(exc))
    return DecodeResponse(
        bits="".join(str(b) for b in result.bits),
        margins=[float(m) for m in result.margins],
        flags=list(result.flags),
    )


@app.post("/simulate", response_model=SimulateResponse)
def simulate_endpoint(req: SimulateRequest) -> SimulateResponse:
    try:
        cfg = config_from_dict(req.config)
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    try:
        curves = run_experiment(cfg, workers=max(1, req.workers))
    except MoczError as exc:
        raise HTTPException(status_code=500, detail=str(exc))
    return SimulateResponse(
        curves={name: BerCurveModel(**data) for name, data in curves_to_dict(curves).items()}
    )


@app.post("/bounds", response_model=BoundsResponse)
def bounds_endpoint(req: BoundsRequest) -> BoundsResponse:
    try:
        if req.zeros is not None:
            leading = req.leading.value() if req.leading is not None else 1.0
            zero_set = ZeroSet(tuple(z.value() for z in req.zeros), leading)
            inputs = {"zeros": len(req.zeros)}
        elif req.codebook is not None:
            cb = codebook_from_model(req.codebook)
            bits = parse_bits(req.word, cb.K) if req.word else [1] * cb.K
            from .poly import vieta_expand
            from .codebook import normalize_signal
            zero_set = signal_zeros(bits, cb)
            coeffs = normalize_signal(vieta_expand(zero_set))
            zero_set = ZeroSet(zero_set.zeros, coeffs[-1])
            inputs = {"K": cb.K, "R": cb.R, "word": "".join(str(b) for b in bits)}
        else:
            raise ConfigError("provide either a codebook or an explicit zero set")
        dmin = zero_set.min_pairwise_distance()
        delta = dmin / 2.0 if req.delta == "max" else float(req.delta)
        inputs["delta"] = delta
        cert = bounds_mod.theorem2_bound(zero_set, delta)
        exact = bounds_mod.exact_worstcase_bound(zero_set, delta, req.theta_grid) if delta > 0 else 0.0
        coeffs = bounds_mod.vieta_expand(zero_set)
        cauchy = bounds_mod.cauchy_root_bound(coeffs)
        R = max(zero_set.max_modulus(), 1.0 + 1e-9)
        pack = bounds_mod.packing_limit(R, dmin)
        table = []
        for N in range(2, 13):
            delta_gon = 0.5 * math.sin(math.pi / N)
            report = bounds_mod.verify_vertex_conjecture(N, 1.0, delta_gon, theta_grid=req.theta_grid)
            table.append(ConjectureRow(
                N=N, delta=delta_gon, holds=report.holds,
                observed_min=report.observed_min, conjectured=report.conjectured,
            ))
    except (ConfigError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except MoczError as exc:
        raise HTTPException(status_code=500, detail=str(exc))
    return BoundsResponse(
        inputs=inputs,
        certificate=CertificateModel(**cert.__dict__),
        exact_worstcase_epsilon=float(exact),
        cauchy_root_bound=float(cauchy),
        packing_limit=float(pack),
        conjecture_table=table,
    )
