"""Comparable RLWE ciphertexts: order comparison with a Compare-Eval Key."""

from .compare import (
    EvalOutcome, GadgetDigits, cmp_basic, cmp_fae, eval_cek, gadget_decompose,
    noise_budget_report,
)
from .encrypt import (
    Ciphertext, NoiseTranscript, decrypt, enc_basic, enc_fae, encode_int, encode_real,
)
from .keys import CompareEvalKey, KeyTriple, PublicKey, SecretKey, cek_identity_check, keygen
from .params import Params, default_profile, desk_profile, get_profile, validate
from .ring import Ring, RingElement

__version__ = "0.1.0"

__all__ = [
    "Ciphertext", "CompareEvalKey", "EvalOutcome", "GadgetDigits", "KeyTriple",
    "NoiseTranscript", "Params", "PublicKey", "Ring", "RingElement", "SecretKey",
    "cek_identity_check", "cmp_basic", "cmp_fae", "decrypt", "default_profile",
    "desk_profile", "enc_basic", "enc_fae", "encode_int", "encode_real", "eval_cek",
    "gadget_decompose", "get_profile", "keygen", "noise_budget_report", "validate",
]
