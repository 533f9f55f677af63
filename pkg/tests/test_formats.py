import numpy as np
import pytest

from hades import formats
from hades.encrypt import enc_basic, enc_fae
from hades.errors import FormatError


def test_key_files_roundtrip(desk, desk_keys, literal_keys):
    params, sk = formats.load_secret_key(formats.secret_key_bytes(desk, desk_keys.secret))
    assert params == desk and sk == desk_keys.secret
    params, pk = formats.load_public_key(formats.public_key_bytes(desk, desk_keys.public))
    assert pk == desk_keys.public
    for keys in (desk_keys, literal_keys):
        blob = formats.cek_bytes(desk, keys.cek)
        _, cek = formats.load_cek(blob)
        assert cek == keys.cek
        assert len(blob) == formats.expected_size(desk, formats.TAG_CEK, cek_mode=keys.cek.mode)


def test_ciphertext_file(desk, desk_keys, rng):
    cts = [enc_basic(desk_keys.public, m, desk, rng) for m in range(5)]
    cts.append(enc_fae(desk_keys.public, 9, desk, rng))
    blob = formats.ciphertexts_bytes(desk, cts, frac_bits=8)
    assert len(blob) == formats.expected_size(desk, formats.TAG_CTX, count=6)
    params, back, frac_bits = formats.load_ciphertexts(blob)
    assert params == desk and frac_bits == 8
    assert back == cts


def test_header_layout(desk):
    blob = formats.header(desk, formats.TAG_PK)
    assert blob[:4] == b"HADS"
    assert int.from_bytes(blob[4:6], "little") == formats.FORMAT_VERSION
    assert blob.endswith(formats.TAG_PK)
    assert desk.to_text().encode() in blob


def test_wrong_tag_and_corruption(desk, desk_keys):
    pk = formats.public_key_bytes(desk, desk_keys.public)
    with pytest.raises(FormatError):
        formats.load_cek(pk)
    with pytest.raises(FormatError):
        formats.load_public_key(b"XXXX" + pk[4:])
    with pytest.raises(FormatError):
        formats.load_public_key(pk + b"\x00")
    with pytest.raises(ValueError):
        formats.load_public_key(pk[:-8])
