"""Pydantic request/response models for the HTTP service."""
from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ComplexNumber(BaseModel):
    re: float
    im: float

    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z: complex) -> "ComplexNumber":
        return cls(re=float(z.real), im=float(z.imag))


class ZeroPair(BaseModel):
    outer: ComplexNumber
    inner: ComplexNumber


class CodebookModel(BaseModel):
    K: int
    R: float
    eta: float
    pairs: list[ZeroPair]


class ChannelModelSchema(BaseModel):
    L: int = Field(ge=1)
    p: float = Field(gt=0.0, le=1.0)
    N0: float = Field(ge=0.0)


class EncodeRequest(BaseModel):
    bits: str = Field(description="binary string, or hex with an 0x prefix")
    k: Optional[int] = None
    radius: str | float = "optimal:1"


class EncodeResponse(BaseModel):
    coeffs: list[ComplexNumber]
    codebook: CodebookModel


class DecodeRequest(BaseModel):
    samples: list[ComplexNumber]
    codebook: CodebookModel
    decoder: str = "dizet"
    channel: Optional[ChannelModelSchema] = None


class DecodeResponse(BaseModel):
    bits: str
    margins: list[float]
    flags: list[Optional[str]]


class SimulateRequest(BaseModel):
    config: dict
    workers: int = 1


class BerPointModel(BaseModel):
    snr_db: float
    bits_sent: int
    bit_errors: int
    ber: float
    ber_ci_halfwidth: float
    wall_time_s: float


class BerCurveModel(BaseModel):
    decoder: str
    points: list[BerPointModel]
    metadata: dict


class SimulateResponse(BaseModel):
    curves: dict[str, BerCurveModel]


class BoundsRequest(BaseModel):
    codebook: Optional[CodebookModel] = None
    word: Optional[str] = None
    zeros: Optional[list[ComplexNumber]] = None
    leading: Optional[ComplexNumber] = None
    delta: str | float = "max"
    theta_grid: int = 10_000


class CertificateModel(BaseModel):
    delta: float
    epsilon: float
    dmin: float
    R: float
    xN_abs: float
    within_hypothesis: bool


class ConjectureRow(BaseModel):
    N: int
    delta: float
    holds: bool
    observed_min: float
    conjectured: float


class BoundsResponse(BaseModel):
    inputs: dict
    certificate: CertificateModel
    exact_worstcase_epsilon: float
    cauchy_root_bound: float
    packing_limit: float
    conjecture_table: list[ConjectureRow]
