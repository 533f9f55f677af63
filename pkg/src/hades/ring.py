"""Exact arithmetic in the negacyclic ring Z_q[x]/(x^n + 1).

Coefficients are stored as canonical residues in [0, q) inside read-only
int64 numpy arrays, so q must stay below 2**62.  Two multiplication engines
are provided: a limb-split schoolbook convolution (the reference) and a
negacyclic NTT for NTT-friendly moduli (q = 1 mod 2n).  Both are exact.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, ParameterMismatchError

MAX_MODULUS_BITS = 62
_ELEMENT_HEADER = struct.Struct("<IQ")

# 80-bit extended precision gives a quotient estimate good to +-2 for
# 62-bit operands, which is what _mulmod relies on.
_HAVE_WIDE_FLOAT = np.finfo(np.longdouble).nmant >= 63


def is_prime(q: int) -> bool:
    from sympy import isprime

    return bool(isprime(q))


def _mulmod(a: np.ndarray, b, q: int) -> np.ndarray:
    """Elementwise a*b mod q for residues in [0, q), q < 2**62."""
    a = np.asarray(a, dtype=np.int64)
    b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape)
    if q < (1 << 31):
        return (a * b) % q
    if not _HAVE_WIDE_FLOAT:
        prod = a.astype(object) * b.astype(object) % q
        return prod.astype(np.int64)
    quot = np.floor(a.astype(np.longdouble) * b.astype(np.longdouble) / q)
    quot = quot.astype(np.uint64)
    r = a.astype(np.uint64) * b.astype(np.uint64) - quot * np.uint64(q)
    return r.view(np.int64) % q


def _bit_reverse(k: int, bits: int) -> int:
    return int(format(k, f"0{bits}b")[::-1], 2) if bits else 0


@dataclass(frozen=True)
class Ring:
    """The ring R_q = Z_q[x]/(x^n + 1).

    ``ntt`` selects the default multiplication engine; it requires a prime
    q with q = 1 (mod 2n).
    """

    n: int
    q: int
    ntt: bool = False
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1 or self.n & (self.n - 1):
            raise ConfigurationError(f"n must be a power of 2, got {self.n}")
        if not 2 <= self.q < (1 << MAX_MODULUS_BITS):
            raise ConfigurationError(f"q must lie in [2, 2**{MAX_MODULUS_BITS}), got {self.q}")
        if self.ntt and not self.ntt_friendly:
            raise ConfigurationError(f"q={self.q} is not an NTT-friendly prime for n={self.n}")

    @cached_property
    def ntt_friendly(self) -> bool:
        return self.q % (2 * self.n) == 1 and is_prime(self.q)

    # -- constructors ---------------------------------------------------

    def element(self, coeffs) -> RingElement:
        """Build an element from arbitrary integers, reducing mod q."""
        arr = np.asarray(coeffs)
        if arr.shape != (self.n,):
            raise ParameterMismatchError(f"expected {self.n} coefficients, got shape {arr.shape}")
        if arr.dtype == object or arr.dtype.kind not in "iu":
            arr = np.array([int(c) % self.q for c in arr], dtype=np.int64)
        else:
            arr = arr.astype(np.int64) % self.q
        return RingElement(self, arr)

    def zero(self) -> RingElement:
        return RingElement(self, np.zeros(self.n, dtype=np.int64))

    def constant(self, c: int) -> RingElement:
        arr = np.zeros(self.n, dtype=np.int64)
        arr[0] = c % self.q
        return RingElement(self, arr)

    def one(self) -> RingElement:
        return self.constant(1)

    def monomial(self, k: int) -> RingElement:
        """x^k, with the negacyclic sign applied for k >= n."""
        k %= 2 * self.n
        sign = -1 if k >= self.n else 1
        arr = np.zeros(self.n, dtype=np.int64)
        arr[k % self.n] = sign % self.q
        return RingElement(self, arr)

    # -- samplers -------------------------------------------------------

    def sample_uniform(self, rng: np.random.Generator) -> RingElement:
        return RingElement(self, rng.integers(0, self.q, size=self.n, dtype=np.int64))

    def sample_bounded(self, rng: np.random.Generator, bound: int) -> RingElement:
        """Centered coefficients uniform over the integers in [-bound, bound]."""
        if bound < 1:
            raise ValueError(f"noise bound must be >= 1, got {bound}")
        signed = rng.integers(-bound, bound, size=self.n, endpoint=True, dtype=np.int64)
        return RingElement(self, signed % self.q)

    def sample_ternary(self, rng: np.random.Generator) -> RingElement:
        return self.sample_bounded(rng, 1)

    # -- NTT tables -----------------------------------------------------

    def _ntt_tables(self):
        if "psi" not in self._tables:
            if not self.ntt_friendly:
                raise ConfigurationError(f"q={self.q} is not an NTT-friendly prime for n={self.n}")
            n, q = self.n, self.q
            psi = _primitive_root_of_unity(2 * n, q)
            psi_inv = pow(psi, -1, q)
            bits = n.bit_length() - 1
            fwd = [pow(psi, _bit_reverse(k, bits), q) for k in range(n)]
            inv = [pow(psi_inv, _bit_reverse(k, bits), q) for k in range(n)]
            self._tables["psi"] = np.array(fwd, dtype=np.int64)
            self._tables["psi_inv"] = np.array(inv, dtype=np.int64)
            self._tables["n_inv"] = pow(n, -1, q)
        return self._tables["psi"], self._tables["psi_inv"], self._tables["n_inv"]

    def ntt_forward(self, coeffs: np.ndarray) -> np.ndarray:
        """Negacyclic forward transform (Cooley-Tukey, bit-reversed output)."""
        psi, _, _ = self._ntt_tables()
        q = self.q
        a = np.array(coeffs, dtype=np.int64)
        m, t = 1, self.n
        while m < self.n:
            t //= 2
            blocks = a.reshape(m, 2, t)
            u = blocks[:, 0, :].copy()
            v = _mulmod(blocks[:, 1, :], psi[m : 2 * m, None], q)
            blocks[:, 0, :] = (u + v) % q
            blocks[:, 1, :] = (u - v) % q
            m *= 2
        return a

    def ntt_inverse(self, values: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`ntt_forward` (Gentleman-Sande)."""
        _, psi_inv, n_inv = self._ntt_tables()
        q = self.q
        a = np.array(values, dtype=np.int64)
        m, t = self.n, 1
        while m > 1:
            h = m // 2
            blocks = a.reshape(h, 2, t)
            u = blocks[:, 0, :].copy()
            v = blocks[:, 1, :].copy()
            blocks[:, 0, :] = (u + v) % q
            blocks[:, 1, :] = _mulmod((u - v) % q, psi_inv[h:m, None], q)
            t *= 2
            m = h
        return _mulmod(a, n_inv, q)

    @cached_property
    def _limb_bits(self) -> int:
        # |limb_a * limb_b| summed over n terms, then folded once, fits int64.
        return (61 - (self.n.bit_length() - 1)) // 2


def _primitive_root_of_unity(order: int, q: int) -> int:
    """Smallest-generator-derived element of exact multiplicative order ``order``."""
    from sympy import factorint

    if (q - 1) % order:
        raise ConfigurationError(f"no element of order {order} modulo {q}")
    cofactor = (q - 1) // order
    prime_factors = list(factorint(order))
    for g in range(2, q):
        w = pow(g, cofactor, q)
        if all(pow(w, order // p, q) != 1 for p in prime_factors):
            return w
    raise ConfigurationError(f"no primitive {order}-th root of unity modulo {q}")


class RingElement:
    """Immutable element of a :class:`Ring`; coefficients are residues in [0, q)."""

    __slots__ = ("ring", "_c", "_ntt")

    def __init__(self, ring: Ring, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (ring.n,):
            raise ParameterMismatchError(f"expected {ring.n} coefficients, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        self.ring = ring
        self._c = coeffs
        self._ntt = None

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __repr__(self):
        head = ", ".join(str(int(c)) for c in self._c[:8])
        more = ", ..." if self.ring.n > 8 else ""
        return f"RingElement(n={self.ring.n}, q={self.ring.q}, [{head}{more}])"

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return _same_ring(self.ring, other.ring) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self.ring.n, self.ring.q, self._c.tobytes()))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return RingElement(self.ring, (-self._c) % self.ring.q)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scalar_mul(self, int(other))
        return mul(self, other)

    __rmul__ = __mul__

    def centered(self) -> np.ndarray:
        return centered_lift(self)

    def inf_norm(self) -> int:
        return inf_norm(self)

    def ntt_form(self) -> np.ndarray:
        if self._ntt is None:
            values = self.ring.ntt_forward(self._c)
            values.setflags(write=False)
            self._ntt = values
        return self._ntt

    def to_bytes(self) -> bytes:
        return _ELEMENT_HEADER.pack(self.ring.n, self.ring.q) + self._c.astype("<u8").tobytes()

    @staticmethod
    def encoded_size(n: int) -> int:
        return _ELEMENT_HEADER.size + 8 * n

    @classmethod
    def from_bytes(cls, ring: Ring, data: bytes, offset: int = 0) -> tuple[RingElement, int]:
        """Parse one element at ``offset``; returns it with the next offset."""
        n, q = _ELEMENT_HEADER.unpack_from(data, offset)
        if (n, q) != (ring.n, ring.q):
            raise ParameterMismatchError(f"element has (n={n}, q={q}), expected (n={ring.n}, q={ring.q})")
        start = offset + _ELEMENT_HEADER.size
        end = start + 8 * n
        if end > len(data):
            raise ValueError("truncated ring element")
        coeffs = np.frombuffer(data, dtype="<u8", count=n, offset=start).astype(np.int64)
        if np.any(coeffs >= q):
            raise ValueError("ring element coefficient out of range")
        return cls(ring, coeffs), end


def _same_ring(a: Ring, b: Ring) -> bool:
    return a is b or (a.n == b.n and a.q == b.q)


def _check(p: RingElement, r: RingElement) -> Ring:
    if not _same_ring(p.ring, r.ring):
        raise ParameterMismatchError(
            f"ring mismatch: (n={p.ring.n}, q={p.ring.q}) vs (n={r.ring.n}, q={r.ring.q})"
        )
    return p.ring


def add(p: RingElement, r: RingElement) -> RingElement:
    ring = _check(p, r)
    return RingElement(ring, (p._c + r._c) % ring.q)


def sub(p: RingElement, r: RingElement) -> RingElement:
    ring = _check(p, r)
    return RingElement(ring, (p._c - r._c) % ring.q)


def scalar_mul(p: RingElement, k: int) -> RingElement:
    ring = p.ring
    return RingElement(ring, _mulmod(p._c, int(k) % ring.q, ring.q))


def centered_lift(p: RingElement) -> np.ndarray:
    """Map residues to the representatives in (-q/2, q/2]."""
    q = p.ring.q
    c = p._c
    return np.where(c > q // 2, c - q, c)


def inf_norm(p: RingElement) -> int:
    return int(np.abs(centered_lift(p)).max(initial=0))


def mul(p: RingElement, r: RingElement, method: str | None = None) -> RingElement:
    """Negacyclic product.  ``method`` is "schoolbook", "ntt" or None (ring default)."""
    ring = _check(p, r)
    if method is None:
        method = "ntt" if ring.ntt else "schoolbook"
    if method == "ntt":
        if not ring.ntt_friendly:
            raise ConfigurationError(f"NTT requested but q={ring.q} is not 1 mod {2 * ring.n} and prime")
        prod = _mulmod(p.ntt_form(), r.ntt_form(), ring.q)
        return RingElement(ring, ring.ntt_inverse(prod))
    if method == "schoolbook":
        return RingElement(ring, _schoolbook(ring, p, r))
    raise ValueError(f"unknown multiplication method {method!r}")


def _limbs(ring: Ring, p: RingElement) -> list[tuple[np.ndarray, int]]:
    """Split into (limb, limb_index) pairs, each limb bounded by 2**w in magnitude."""
    w = ring._limb_bits
    signed = centered_lift(p)
    if int(np.abs(signed).max(initial=0)) < (1 << w):
        return [(signed, 0)]
    mask = (1 << w) - 1
    count = -(-ring.q.bit_length() // w)
    return [((p._c >> (w * k)) & mask, k) for k in range(count)]


def _schoolbook(ring: Ring, p: RingElement, r: RingElement) -> np.ndarray:
    n, q, w = ring.n, ring.q, ring._limb_bits
    acc: dict[int, np.ndarray] = {}
    for la, ka in _limbs(ring, p):
        for lb, kb in _limbs(ring, r):
            full = np.convolve(la, lb)
            folded = full[:n].copy()
            folded[: n - 1] -= full[n:]
            folded %= q
            k = ka + kb
            acc[k] = folded if k not in acc else (acc[k] + folded) % q
    out = np.zeros(n, dtype=np.int64)
    for k, part in acc.items():
        if k:
            part = _mulmod(part, pow(2, w * k, q), q)
        out = (out + part) % q
    return out


def constant_term_weights(r: RingElement) -> np.ndarray:
    """Vector ``w`` with const(p * r) = sum(p.coeffs * w) mod q, for any p.

    With x^n = -1 the constant coefficient of a product is
    p_0 r_0 - sum_{i>0} p_i r_{n-i}; this packs r into that form so the
    constant term costs one O(n) dot product.
    """
    c = r._c
    q = r.ring.q
    w = np.empty_like(c)
    w[0] = c[0]
    w[1:] = (-c[:0:-1]) % q
    return w
