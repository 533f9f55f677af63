"""Plaintext encoding, basic and perturbation-aware (FAE) encryption, decryption."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FlavorMismatchError, NoiseOverflowError, PlaintextRangeError
from .keys import PublicKey, SecretKey
from .params import FLAVORS, Params
from .ring import RingElement


@dataclass(frozen=True, eq=False)
class Ciphertext:
    c0: RingElement
    c1: RingElement
    flavor: str

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise FlavorMismatchError(f"unknown flavor {self.flavor!r}")

    def __eq__(self, other):
        if not isinstance(other, Ciphertext):
            return NotImplemented
        return self.flavor == other.flavor and self.c0 == other.c0 and self.c1 == other.c1

    __hash__ = None

    def to_bytes(self) -> bytes:
        return bytes([FLAVORS.index(self.flavor)]) + self.c0.to_bytes() + self.c1.to_bytes()

    @staticmethod
    def encoded_size(params: Params) -> int:
        return 1 + 2 * RingElement.encoded_size(params.n)

    @classmethod
    def from_bytes(cls, params: Params, data: bytes, offset: int = 0) -> tuple[Ciphertext, int]:
        tag = data[offset]
        if tag >= len(FLAVORS):
            raise FlavorMismatchError(f"unknown flavor tag {tag}")
        c0, offset = RingElement.from_bytes(params.ring, data, offset + 1)
        c1, offset = RingElement.from_bytes(params.ring, data, offset)
        return cls(c0, c1, FLAVORS[tag]), offset


@dataclass(frozen=True)
class NoiseTranscript:
    u: RingElement
    e1: RingElement
    e2: RingElement
    e_m: RingElement
    delta: int


def _check_range(m: int, params: Params) -> None:
    if abs(m) > params.max_plaintext:
        raise PlaintextRangeError(f"|{m}| exceeds M_max={params.max_plaintext}")


def encode_int(m: int, params: Params) -> RingElement:
    m = int(m)
    _check_range(m, params)
    return params.ring.constant(m * params.scale)


def real_to_int(x: float, frac_bits: int) -> int:
    return int(round(x * (1 << frac_bits)))


def encode_real(x: float, frac_bits: int, params: Params) -> RingElement:
    """Fixed-point encoding: encode_int(round(x * 2**frac_bits))."""
    return encode_int(real_to_int(x, frac_bits), params)


def _encrypt_encoding(pk: PublicKey, msg: RingElement, params: Params,
                      rng: np.random.Generator):
    ring = params.ring
    u = ring.sample_ternary(rng)
    e1 = ring.sample_bounded(rng, params.noise_bound)
    e2 = ring.sample_bounded(rng, params.noise_bound)
    c0 = pk.p0 * u + e1 + msg
    c1 = pk.a * u + e2
    return c0, c1, u, e1, e2


def enc_basic(pk: PublicKey, m: int, params: Params, rng: np.random.Generator,
              record: bool = False):
    """Two-element RLWE encryption of encode_int(m).

    Returns the ciphertext, or ``(ciphertext, transcript)`` when ``record``.
    """
    msg = encode_int(m, params)
    c0, c1, u, e1, e2 = _encrypt_encoding(pk, msg, params, rng)
    ct = Ciphertext(c0, c1, "basic")
    if record:
        return ct, NoiseTranscript(u, e1, e2, params.ring.zero(), 0)
    return ct


def enc_fae(pk: PublicKey, m: int, params: Params, rng: np.random.Generator,
            record: bool = False):
    """Perturbation-aware encryption.

    The scaled plaintext is shifted by an integer delta uniform in [-D, D]
    and a bounded noise polynomial e_m before the basic encryption step.
    """
    scaled = encode_int(m, params)
    d = params.perturbation_radius
    delta = int(rng.integers(-d, d, endpoint=True))
    e_m = params.ring.sample_bounded(rng, params.noise_bound)
    msg = scaled + params.ring.constant(delta) + e_m
    c0, c1, u, e1, e2 = _encrypt_encoding(pk, msg, params, rng)
    ct = Ciphertext(c0, c1, "fae")
    if record:
        return ct, NoiseTranscript(u, e1, e2, e_m, delta)
    return ct


def encrypt(pk: PublicKey, m: int, params: Params, rng: np.random.Generator,
            flavor: str = "basic", record: bool = False):
    if flavor == "basic":
        return enc_basic(pk, m, params, rng, record)
    if flavor == "fae":
        return enc_fae(pk, m, params, rng, record)
    raise FlavorMismatchError(f"unknown flavor {flavor!r}")


def phase(sk: SecretKey, ct: Ciphertext) -> int:
    """Centered constant coefficient of c0 + c1*s."""
    return int((ct.c0 + ct.c1 * sk.s).centered()[0])


def decrypt(sk: SecretKey, ct: Ciphertext, params: Params) -> int:
    x = phase(sk, ct)
    m, residual = divmod(x, params.scale)
    if 2 * residual > params.scale:
        m, residual = m + 1, residual - params.scale
    if 2 * abs(residual) >= params.scale or abs(m) > params.max_plaintext:
        raise NoiseOverflowError(f"phase {x} is not within scale/2 of an encodable plaintext")
    return m


def decrypt_real(sk: SecretKey, ct: Ciphertext, frac_bits: int, params: Params) -> float:
    return decrypt(sk, ct, params) / (1 << frac_bits)
