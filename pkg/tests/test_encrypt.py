import numpy as np
import pytest

from hades.encrypt import (
    Ciphertext, decrypt, decrypt_real, enc_basic, enc_fae, encode_int, encode_real, phase,
)
from hades.errors import NoiseOverflowError, PlaintextRangeError


def test_encode_int(desk):
    assert encode_int(0, desk) == desk.ring.zero()
    one = encode_int(1, desk)
    assert int(one.coeffs[0]) == 10_000 and not one.coeffs[1:].any()
    assert int(encode_int(-2, desk).coeffs[0]) == desk.q - 20_000
    with pytest.raises(PlaintextRangeError):
        encode_int(desk.max_plaintext + 1, desk)
    encode_int(-desk.max_plaintext, desk)


def test_encode_real(desk):
    assert encode_real(0.0, 8, desk) == desk.ring.zero()
    assert encode_real(1.5, 8, desk) == encode_int(384, desk)
    assert encode_real(-0.25, 4, desk) == encode_int(-4, desk)
    with pytest.raises(PlaintextRangeError):
        encode_real(float(desk.max_plaintext), 8, desk)


def test_basic_roundtrip(desk, desk_keys, rng):
    sk, pk = desk_keys.secret, desk_keys.public
    assert decrypt(sk, enc_basic(pk, 42, desk, rng), desk) == 42
    assert decrypt(sk, enc_basic(pk, 0, desk, rng), desk) == 0
    for m in rng.integers(-desk.max_plaintext, desk.max_plaintext, size=1000, endpoint=True):
        assert decrypt(sk, enc_basic(pk, int(m), desk, rng), desk) == m


def test_fae_roundtrip(desk, desk_keys, rng):
    sk, pk = desk_keys.secret, desk_keys.public
    assert decrypt(sk, enc_fae(pk, 42, desk, rng), desk) == 42
    for m in rng.integers(-desk.max_plaintext, desk.max_plaintext, size=1000, endpoint=True):
        assert decrypt(sk, enc_fae(pk, int(m), desk, rng), desk) == m


def test_extremes_roundtrip(desk, desk_keys, rng):
    sk, pk = desk_keys.secret, desk_keys.public
    for m in (desk.max_plaintext, -desk.max_plaintext):
        assert decrypt(sk, enc_basic(pk, m, desk, rng), desk) == m
        assert decrypt(sk, enc_fae(pk, m, desk, rng), desk) == m


def test_randomized_encryption(desk, desk_keys):
    pk = desk_keys.public
    a = enc_basic(pk, 5, desk, np.random.default_rng(1))
    b = enc_basic(pk, 5, desk, np.random.default_rng(2))
    assert a.to_bytes() != b.to_bytes()
    c = enc_basic(pk, 5, desk, np.random.default_rng(1))
    assert a.to_bytes() == c.to_bytes()


@pytest.mark.parametrize("flavor", ["basic", "fae"])
def test_transcript_reproduces_noise(desk, desk_keys, rng, flavor):
    sk, pk = desk_keys.secret, desk_keys.public
    e_pk = desk_keys.transcript.e_pk
    enc = enc_basic if flavor == "basic" else enc_fae
    for m in (0, 17, -300):
        ct, t = enc(pk, m, desk, rng, record=True)
        encoding = encode_int(m, desk) + desk.ring.constant(t.delta) + t.e_m
        residual = ct.c0 + ct.c1 * sk.s - encoding
        assert residual == t.e1 + t.e2 * sk.s - t.u * e_pk
        assert t.u.inf_norm() <= desk.u_bound
        for e in (t.e1, t.e2, t.e_m):
            assert e.inf_norm() <= desk.noise_bound
        assert abs(t.delta) <= desk.perturbation_radius
        total = phase(sk, ct) - m * desk.scale - t.delta
        assert abs(total) <= desk.ciphertext_noise_bound


def test_basic_transcript_has_no_perturbation(desk, desk_keys, rng):
    _, t = enc_basic(desk_keys.public, 3, desk, rng, record=True)
    assert t.delta == 0 and t.e_m == desk.ring.zero()


def test_ciphertext_size_constant(desk, desk_keys, rng):
    pk = desk_keys.public
    sizes = {len(enc(pk, int(m), desk, rng).to_bytes())
             for enc in (enc_basic, enc_fae) for m in (0, 1, -desk.max_plaintext, 12345)}
    assert sizes == {Ciphertext.encoded_size(desk)}


def test_fae_delta_moments(desk, desk_keys, rng):
    d = desk.perturbation_radius
    deltas = np.array([enc_fae(desk_keys.public, 1, desk, rng, record=True)[1].delta
                       for _ in range(10_000)])
    sigma = np.sqrt(d * (d + 1) / 3)
    assert abs(deltas.mean()) <= 3 * sigma / np.sqrt(10_000)
    assert deltas.min() == -d and deltas.max() == d


def test_fae_encodings_differ(desk, desk_keys, rng):
    d = desk.perturbation_radius
    pk = desk_keys.public
    differ = 0
    trials = 10_000
    for _ in range(trials):
        _, ta = enc_fae(pk, 9, desk, rng, record=True)
        _, tb = enc_fae(pk, 9, desk, rng, record=True)
        enc_a = desk.ring.constant(ta.delta) + ta.e_m
        enc_b = desk.ring.constant(tb.delta) + tb.e_m
        differ += enc_a != enc_b
    assert differ / trials >= 1 - 2 / (2 * d + 1)
    # the delta alone collides at rate 1/(2D+1)
    same_delta = sum(
        enc_fae(pk, 9, desk, rng, record=True)[1].delta == enc_fae(pk, 9, desk, rng, record=True)[1].delta
        for _ in range(2000)
    )
    assert same_delta / 2000 <= 2 / (2 * d + 1)


def test_decrypt_detects_overflow(desk, desk_keys, rng):
    ct = enc_basic(desk_keys.public, 0, desk, rng)
    half = desk.ring.constant(desk.scale // 2 - phase(desk_keys.secret, ct))
    bad = Ciphertext(ct.c0 + half, ct.c1, "basic")
    with pytest.raises(NoiseOverflowError):
        decrypt(desk_keys.secret, bad, desk)


def test_decrypt_real(desk, desk_keys, rng):
    ct = enc_basic(desk_keys.public, 384, desk, rng)
    assert decrypt_real(desk_keys.secret, ct, 8, desk) == 1.5


def test_serialization_roundtrip(desk, desk_keys, rng):
    ct = enc_fae(desk_keys.public, 77, desk, rng)
    back, end = Ciphertext.from_bytes(desk, ct.to_bytes())
    assert back == ct and end == Ciphertext.encoded_size(desk)
