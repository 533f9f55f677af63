"""Server-side comparison of ciphertexts with the Compare-Eval Key.

Only the constant coefficient of the evaluation polynomial carries the
message, so :func:`eval_cek` computes that coefficient directly in O(ell*n)
instead of forming full ring products.  :func:`eval_polynomial` is the
full-ring route and is kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encrypt import Ciphertext, enc_basic, enc_fae
from .errors import FlavorMismatchError, ParameterMismatchError
from .keys import CompareEvalKey, KeyTriple
from .params import Params
from .ring import RingElement, centered_lift

_LIMB = 31


@dataclass(frozen=True)
class GadgetDigits:
    digits: tuple[RingElement, ...]


@dataclass(frozen=True)
class EvalOutcome:
    value: int
    three_way: int | None = None
    strict: bool | None = None
    noise_margin: int = 0


def signed_digits(values: np.ndarray, base: int, length: int) -> np.ndarray:
    """Balanced base-``base`` digits of signed int64 ``values``, shape (length, len(values)).

    Lower digits lie in [-base/2, base/2); the top digit takes the remainder,
    which stays within [-base/2, base/2] whenever |values| <= base**length / 2.
    """
    half = base // 2
    x = np.array(values, dtype=np.int64)
    out = np.empty((length, x.size), dtype=np.int64)
    for j in range(length - 1):
        d = (x + half) % base - half
        out[j] = d
        x = (x - d) // base
    out[length - 1] = x
    return out


def gadget_decompose(p: RingElement, params: Params) -> GadgetDigits:
    ring = p.ring
    digits = signed_digits(centered_lift(p), params.gadget_base, params.gadget_length)
    return GadgetDigits(tuple(RingElement(ring, d % ring.q) for d in digits))


def gadget_recompose(digits: GadgetDigits, params: Params) -> RingElement:
    ring = digits.digits[0].ring
    total = ring.zero()
    for j, d in enumerate(digits.digits):
        total = total + d * pow(params.gadget_base, j, ring.q)
    return total


def _dot_mod(digits: np.ndarray, weights: np.ndarray, q: int) -> int:
    """sum(digits * weights) mod q with small signed digits and residue weights."""
    digit_bits = int(np.abs(digits).max(initial=1)).bit_length()
    if digit_bits + _LIMB + digits.size.bit_length() <= 62:
        lo = weights & ((1 << _LIMB) - 1)
        hi = weights >> _LIMB
        d = digits.ravel()
        s_lo = int(np.dot(d, lo.ravel()))
        s_hi = int(np.dot(d, hi.ravel()))
        return ((s_hi << _LIMB) + s_lo) % q
    return int(np.dot(digits.ravel().astype(object), weights.ravel().astype(object))) % q


def _check_pair(cek: CompareEvalKey, ct0: Ciphertext, ct1: Ciphertext, params: Params) -> None:
    ring = params.ring
    for el in (ct0.c0, ct0.c1, ct1.c0, ct1.c1, cek.parts[0]):
        if el.ring.n != ring.n or el.ring.q != ring.q:
            raise ParameterMismatchError("ciphertexts and compare-eval key use different parameters")
    expected = params.gadget_length if cek.mode == "gadget" else 1
    if len(cek.parts) != expected:
        raise ParameterMismatchError(f"{cek.mode} CEK has {len(cek.parts)} parts, expected {expected}")


def eval_cek(cek: CompareEvalKey, ct0: Ciphertext, ct1: Ciphertext, params: Params) -> int:
    """Centered constant coefficient of c_d0*scale + <decomp(c_d1), cek>."""
    _check_pair(cek, ct0, ct1, params)
    q = params.q
    d0 = (int(ct0.c0.coeffs[0]) - int(ct1.c0.coeffs[0])) % q
    d1 = (ct0.c1.coeffs - ct1.c1.coeffs) % q
    if cek.mode == "gadget":
        signed = np.where(d1 > q // 2, d1 - q, d1)
        digits = signed_digits(signed, params.gadget_base, params.gadget_length)
    else:
        digits = d1[None, :]
    v = (d0 * params.scale + _dot_mod(digits, cek.constant_weights, q)) % q
    return v - q if v > q // 2 else v


def eval_polynomial(cek: CompareEvalKey, ct0: Ciphertext, ct1: Ciphertext,
                    params: Params) -> RingElement:
    """The whole evaluation polynomial, computed with ring products."""
    _check_pair(cek, ct0, ct1, params)
    d0 = ct0.c0 - ct1.c0
    d1 = ct0.c1 - ct1.c1
    v = d0 * params.scale
    if cek.mode == "gadget":
        for digit, part in zip(gadget_decompose(d1, params).digits, cek.parts):
            v = v + digit * part
    else:
        v = v + d1 * cek.parts[0]
    return v


def _require(flavor: str, *cts: Ciphertext) -> None:
    for ct in cts:
        if ct.flavor != flavor:
            raise FlavorMismatchError(f"expected {flavor} ciphertexts, got {ct.flavor}")


def _require_gadget(cek: CompareEvalKey) -> None:
    if cek.mode != "gadget":
        raise ParameterMismatchError("comparison requires a gadget-mode compare-eval key")


def classify_three_way(value: int, params: Params) -> EvalOutcome:
    tau = params.threshold
    three_way = 0 if abs(value) < tau else (1 if value > 0 else -1)
    return EvalOutcome(value=value, three_way=three_way, noise_margin=abs(abs(value) - tau))


def cmp_basic_outcome(cek, ct0, ct1, params) -> EvalOutcome:
    _require("basic", ct0, ct1)
    _require_gadget(cek)
    return classify_three_way(eval_cek(cek, ct0, ct1, params), params)


def cmp_basic(cek: CompareEvalKey, ct0: Ciphertext, ct1: Ciphertext, params: Params) -> int:
    """-1, 0 or +1 according to the order of the two plaintexts."""
    return cmp_basic_outcome(cek, ct0, ct1, params).three_way


def cmp_fae_outcome(cek, ct_a, ct_b, params) -> EvalOutcome:
    _require("fae", ct_a, ct_b)
    _require_gadget(cek)
    value = eval_cek(cek, ct_a, ct_b, params)
    return EvalOutcome(value=value, strict=value > 0, noise_margin=abs(value))


def cmp_fae(cek: CompareEvalKey, ct_a: Ciphertext, ct_b: Ciphertext, params: Params) -> bool:
    """True iff the evaluation value is positive (a zero value maps to False)."""
    return cmp_fae_outcome(cek, ct_a, ct_b, params).strict


@dataclass(frozen=True)
class NoiseBudgetReport:
    mode: str
    flavor: str
    samples: int
    observed_max: int
    max_noise: int
    tau: int
    scale: int
    over_half_scale: int
    over_tau: int

    @property
    def within_budget(self) -> bool:
        return self.observed_max <= self.max_noise < self.tau

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["within_budget"] = self.within_budget
        return d


def noise_budget_report(triple: KeyTriple, sample_count: int, params: Params,
                        rng: np.random.Generator, flavor: str = "fae",
                        check: bool | None = None) -> NoiseBudgetReport:
    """Measure evaluation noise over random plaintext pairs.

    Noise is v - scale^2*(m0 - m1) - scale*(delta0 - delta1), with deltas
    read from the encryption transcripts.  For gadget keys the bound
    observed <= N_max < tau is asserted unless ``check`` is False.
    """
    encrypt = enc_fae if flavor == "fae" else enc_basic
    bound = params.max_plaintext
    s = params.scale
    worst = over_half = over_tau = 0
    for _ in range(sample_count):
        m0, m1 = (int(x) for x in rng.integers(-bound, bound, size=2, endpoint=True))
        ct0, t0 = encrypt(triple.public, m0, params, rng, record=True)
        ct1, t1 = encrypt(triple.public, m1, params, rng, record=True)
        v = eval_cek(triple.cek, ct0, ct1, params)
        noise = abs(v - s * s * (m0 - m1) - s * (t0.delta - t1.delta))
        worst = max(worst, noise)
        over_half += 2 * noise >= s
        over_tau += noise >= params.threshold
    report = NoiseBudgetReport(
        mode=triple.cek.mode, flavor=flavor, samples=sample_count, observed_max=worst,
        max_noise=params.max_noise, tau=params.threshold, scale=s,
        over_half_scale=over_half, over_tau=over_tau,
    )
    if check is None:
        check = triple.cek.mode == "gadget"
    if check and not report.within_budget:
        raise AssertionError(
            f"evaluation noise {worst} breaks the budget N_max={params.max_noise} < tau={params.threshold}"
        )
    return report
