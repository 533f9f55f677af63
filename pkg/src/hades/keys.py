"""Key generation: secret key, public key and the Compare-Eval Key (CEK)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import UnsupportedOperationError
from .params import Params
from .ring import RingElement, constant_term_weights

CEK_MODES = ("gadget", "literal")


@dataclass(frozen=True)
class SecretKey:
    s: RingElement


@dataclass(frozen=True)
class PublicKey:
    a: RingElement
    p0: RingElement


@dataclass(frozen=True, eq=False)
class CompareEvalKey:
    """``parts[j] = s*scale*B_g**j + e_j`` (gadget) or ``[s*scale + e_cek]`` (literal)."""

    mode: str
    parts: tuple[RingElement, ...]

    def __eq__(self, other):
        if not isinstance(other, CompareEvalKey):
            return NotImplemented
        return self.mode == other.mode and self.parts == other.parts

    __hash__ = None

    @cached_property
    def constant_weights(self) -> np.ndarray:
        """Stacked :func:`constant_term_weights` of every part, shape (len(parts), n)."""
        w = np.stack([constant_term_weights(p) for p in self.parts])
        w.setflags(write=False)
        return w


@dataclass(frozen=True)
class KeyTranscript:
    """Noise drawn during keygen; only kept when explicitly requested."""

    e_pk: RingElement
    cek_noise: tuple[RingElement, ...]


@dataclass(frozen=True)
class KeyTriple:
    params: Params
    secret: SecretKey
    public: PublicKey
    cek: CompareEvalKey
    transcript: KeyTranscript | None = None


def keygen(params: Params, rng: np.random.Generator, mode: str = "gadget",
           record_transcript: bool = False) -> KeyTriple:
    if mode not in CEK_MODES:
        raise ValueError(f"cek mode must be one of {CEK_MODES}, got {mode!r}")
    ring = params.ring
    bound = params.noise_bound

    s = ring.sample_ternary(rng)
    a = ring.sample_uniform(rng)
    e_pk = ring.sample_bounded(rng, bound)
    p0 = -(a * s + e_pk)

    if mode == "gadget":
        factors = [params.scale * params.gadget_base**j for j in range(params.gadget_length)]
    else:
        factors = [params.scale]
    noises = tuple(ring.sample_bounded(rng, bound) for _ in factors)
    parts = tuple(s * f + e for f, e in zip(factors, noises))

    # sampler is bounded by construction; the check is kept as a guard
    for e in (e_pk, *noises):
        if e.inf_norm() > bound:
            raise AssertionError("keygen noise exceeded B_e")

    return KeyTriple(
        params=params,
        secret=SecretKey(s),
        public=PublicKey(a=a, p0=p0),
        cek=CompareEvalKey(mode=mode, parts=parts),
        transcript=KeyTranscript(e_pk, noises) if record_transcript else None,
    )


def cek_identity_check(triple: KeyTriple) -> bool:
    """True iff every CEK part minus s*scale*B_g**j equals the recorded noise."""
    if triple.transcript is None:
        raise UnsupportedOperationError("cek_identity_check needs a keygen transcript")
    p = triple.params
    s = triple.secret.s
    parts = triple.cek.parts
    noises = triple.transcript.cek_noise
    if len(parts) != len(noises):
        return False
    for j, (part, e) in enumerate(zip(parts, noises)):
        factor = p.scale * p.gadget_base**j if triple.cek.mode == "gadget" else p.scale
        if part - s * factor != e:
            return False
    return True
