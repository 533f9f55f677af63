"""Binary key and ciphertext files.

Every file starts with the same header::

    b"HADS" | u16 version | u32 text length | Params profile text | 4-byte tag

followed by a tag-specific body (all integers little-endian):

    SK    one ring element
    PK    ring elements a, p0
    CEK   u8 mode, u16 part count, the parts
    CTX   u8 fractional bits, u32 record count, records
          (each record: u8 flavor, ring elements c0, c1)

A ring element is ``u32 n | u64 q | n * u64 coefficient``.
"""

from __future__ import annotations

import struct
from pathlib import Path

from .encrypt import Ciphertext
from .errors import FormatError
from .keys import CEK_MODES, CompareEvalKey, PublicKey, SecretKey
from .params import Params
from .ring import RingElement

MAGIC = b"HADS"
FORMAT_VERSION = 1
_PREFIX = struct.Struct("<4sHI")
TAG_SK, TAG_PK, TAG_CEK, TAG_CTX = b"SK\x00\x00", b"PK\x00\x00", b"CEK\x00", b"CTX\x00"

SECRET_KEY_FILE = "hades.sk"
PUBLIC_KEY_FILE = "hades.pk"
CEK_FILE = "hades.cek"
PROFILE_FILE = "params.txt"


def header(params: Params, tag: bytes) -> bytes:
    text = params.to_text().encode()
    return _PREFIX.pack(MAGIC, FORMAT_VERSION, len(text)) + text + tag


def header_size(params: Params) -> int:
    return _PREFIX.size + len(params.to_text().encode()) + 4


def parse_header(data: bytes, expected_tag: bytes | None = None) -> tuple[Params, bytes, int]:
    if len(data) < _PREFIX.size:
        raise FormatError("file too short for a header")
    magic, version, length = _PREFIX.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")
    start = _PREFIX.size
    params = Params.from_text(data[start : start + length].decode())
    offset = start + length
    tag = data[offset : offset + 4]
    if expected_tag is not None and tag != expected_tag:
        raise FormatError(f"expected {expected_tag!r} file, found {tag!r}")
    return params, tag, offset + 4


def _finish(data: bytes, offset: int) -> None:
    if offset != len(data):
        raise FormatError(f"{len(data) - offset} trailing bytes")


def secret_key_bytes(params: Params, sk: SecretKey) -> bytes:
    return header(params, TAG_SK) + sk.s.to_bytes()


def public_key_bytes(params: Params, pk: PublicKey) -> bytes:
    return header(params, TAG_PK) + pk.a.to_bytes() + pk.p0.to_bytes()


def cek_bytes(params: Params, cek: CompareEvalKey) -> bytes:
    body = struct.pack("<BH", CEK_MODES.index(cek.mode), len(cek.parts))
    return header(params, TAG_CEK) + body + b"".join(p.to_bytes() for p in cek.parts)


def ciphertexts_bytes(params: Params, cts, frac_bits: int = 0) -> bytes:
    cts = list(cts)
    body = struct.pack("<BI", frac_bits, len(cts))
    return header(params, TAG_CTX) + body + b"".join(ct.to_bytes() for ct in cts)


def load_secret_key(data: bytes) -> tuple[Params, SecretKey]:
    params, _, off = parse_header(data, TAG_SK)
    s, off = RingElement.from_bytes(params.ring, data, off)
    _finish(data, off)
    return params, SecretKey(s)


def load_public_key(data: bytes) -> tuple[Params, PublicKey]:
    params, _, off = parse_header(data, TAG_PK)
    a, off = RingElement.from_bytes(params.ring, data, off)
    p0, off = RingElement.from_bytes(params.ring, data, off)
    _finish(data, off)
    return params, PublicKey(a, p0)


def load_cek(data: bytes) -> tuple[Params, CompareEvalKey]:
    params, _, off = parse_header(data, TAG_CEK)
    mode, count = struct.unpack_from("<BH", data, off)
    if mode >= len(CEK_MODES):
        raise FormatError(f"unknown CEK mode {mode}")
    off += 3
    parts = []
    for _ in range(count):
        p, off = RingElement.from_bytes(params.ring, data, off)
        parts.append(p)
    _finish(data, off)
    return params, CompareEvalKey(CEK_MODES[mode], tuple(parts))


def load_ciphertexts(data: bytes) -> tuple[Params, list[Ciphertext], int]:
    """Returns (params, ciphertexts, fractional bits)."""
    params, _, off = parse_header(data, TAG_CTX)
    frac_bits, count = struct.unpack_from("<BI", data, off)
    off += 5
    cts = []
    for _ in range(count):
        ct, off = Ciphertext.from_bytes(params, data, off)
        cts.append(ct)
    _finish(data, off)
    return params, cts, frac_bits


def expected_size(params: Params, tag: bytes, *, count: int = 0, cek_mode: str = "gadget") -> int:
    """Exact byte length of a file with the given tag under ``params``."""
    element = RingElement.encoded_size(params.n)
    base = header_size(params)
    if tag == TAG_SK:
        return base + element
    if tag == TAG_PK:
        return base + 2 * element
    if tag == TAG_CEK:
        parts = params.gadget_length if cek_mode == "gadget" else 1
        return base + 3 + parts * element
    if tag == TAG_CTX:
        return base + 5 + count * Ciphertext.encoded_size(params)
    raise ValueError(f"unknown tag {tag!r}")


def read(path) -> bytes:
    return Path(path).read_bytes()
