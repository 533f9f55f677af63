import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hades.errors import ConfigurationError, ParameterMismatchError
from hades.params import find_ntt_prime
from hades.ring import (
    Ring, RingElement, add, centered_lift, inf_norm, mul, scalar_mul, sub,
)

from conftest import brute_negacyclic


def el(ring, coeffs):
    return ring.element(coeffs)


def test_add_examples(small_ring):
    R = small_ring
    p = el(R, [3, 1, 4, 1])
    assert add(R.zero(), p) == p
    assert add(el(R, [16, 0, 0, 0]), el(R, [1, 0, 0, 0])) == R.zero()
    assert list(add(el(R, [3, 5, 0, 0]), el(R, [4, 4, 0, 0])).coeffs) == [7, 9, 0, 0]


def test_mul_examples(small_ring):
    R = small_ring
    p = el(R, [3, 1, 4, 1])
    assert mul(p, R.one()) == p
    x2 = el(R, [0, 0, 1, 0])
    assert list(mul(x2, x2).coeffs) == [16, 0, 0, 0]
    assert list(mul(el(R, [1, 1, 0, 0]), el(R, [0, 0, 0, 1])).coeffs) == [16, 0, 0, 1]


def test_scalar_mul_examples(small_ring):
    R = small_ring
    p = el(R, [2, 3, 0, 0])
    assert scalar_mul(p, 1) == p
    assert scalar_mul(p, 0) == R.zero()
    assert list(scalar_mul(p, 5).coeffs) == [10, 15, 0, 0]


def test_sub_examples(small_ring):
    R = small_ring
    p = el(R, [5, 9, 0, 0])
    assert sub(p, p) == R.zero()
    assert list(sub(el(R, [1, 0, 0, 0]), el(R, [2, 0, 0, 0])).coeffs) == [16, 0, 0, 0]
    assert list(sub(p, el(R, [7, 2, 0, 0])).coeffs) == [15, 7, 0, 0]


def test_centered_lift_and_norm(small_ring):
    R = small_ring
    assert list(centered_lift(el(R, [16, 8, 9, 0]))) == [-1, 8, -8, 0]
    assert inf_norm(R.zero()) == 0
    assert inf_norm(el(R, [16, 0, 0, 0])) == 1
    assert inf_norm(el(R, [9, 3, 0, 0])) == 8


def test_mismatched_rings_rejected(small_ring):
    other = Ring(4, 13)
    with pytest.raises(ParameterMismatchError):
        add(small_ring.one(), other.one())
    with pytest.raises(ParameterMismatchError):
        mul(small_ring.one(), Ring(8, 17).one())


def test_ntt_requires_friendly_modulus():
    R = Ring(4, 19)  # 19 != 1 mod 8
    with pytest.raises(ConfigurationError):
        mul(R.one(), R.one(), method="ntt")
    with pytest.raises(ConfigurationError):
        Ring(4, 19, ntt=True)


def test_elements_are_immutable(small_ring):
    p = small_ring.element([1, 2, 3, 4])
    with pytest.raises(ValueError):
        p.coeffs[0] = 5


# -- ring axioms at n=4, q=17 against the brute-force product ------------

small_elems = st.lists(st.integers(0, 16), min_size=4, max_size=4)


@settings(max_examples=200, deadline=None)
@given(small_elems, small_elems, small_elems)
def test_ring_axioms(a, b, c):
    R = Ring(4, 17)
    A, B, C = R.element(a), R.element(b), R.element(c)
    for method in ("schoolbook", "ntt"):
        assert list(mul(A, B, method).coeffs) == brute_negacyclic(a, b, 17)
        assert mul(A, B, method) == mul(B, A, method)
        assert mul(mul(A, B, method), C, method) == mul(A, mul(B, C, method), method)
        assert mul(A, B + C, method) == mul(A, B, method) + mul(A, C, method)
    assert (A + B) + C == A + (B + C)
    assert A + B == B + A


@pytest.mark.parametrize("n", [8, 64, 256])
def test_ntt_matches_schoolbook(n):
    q = find_ntt_prime(n)
    R = Ring(n, q)
    rng = np.random.default_rng(n)
    pairs = 1000 if n <= 64 else 100
    for k in range(pairs):
        a = R.sample_uniform(rng)
        b = R.sample_ternary(rng) if k % 3 == 0 else R.sample_uniform(rng)
        assert mul(a, b, "ntt") == mul(a, b, "schoolbook")


def test_schoolbook_matches_brute_force_large_modulus():
    n = 32
    q = find_ntt_prime(n)
    R = Ring(n, q)
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = R.sample_uniform(rng), R.sample_uniform(rng)
        ref = brute_negacyclic([int(x) for x in a.coeffs], [int(x) for x in b.coeffs], q)
        assert [int(x) for x in mul(a, b, "schoolbook").coeffs] == ref


def test_ntt_roundtrip():
    R = Ring(1024, find_ntt_prime(1024), ntt=True)
    a = R.sample_uniform(np.random.default_rng(0))
    assert np.array_equal(R.ntt_inverse(R.ntt_forward(a.coeffs)), a.coeffs)


def test_multiplying_by_x_n_times_negates():
    R = Ring(16, find_ntt_prime(16))
    p = R.sample_uniform(np.random.default_rng(3))
    x = R.monomial(1)
    acc = p
    for _ in range(R.n):
        acc = acc * x
    assert acc == -p


@given(st.integers(-8, 8))
def test_centered_lift_inverts_reduction(v):
    R = Ring(4, 17)
    assert int(centered_lift(R.element([v, 0, 0, 0]))[0]) == v


def test_centered_lift_range_even_modulus():
    R = Ring(4, 16)
    vals = centered_lift(R.element([8, 9, 15, 0]))
    assert list(vals) == [8, -7, -1, 0]


def test_samplers():
    R = Ring(64, find_ntt_prime(64))
    rng = np.random.default_rng(7)
    for bound in (1, 2, 8):
        assert all(inf_norm(R.sample_bounded(rng, bound)) <= bound for _ in range(10_000 // 3))
    assert all(inf_norm(R.sample_ternary(rng)) <= 1 for _ in range(1000))
    u = R.sample_uniform(rng)
    assert u.coeffs.min() >= 0 and u.coeffs.max() < R.q
    with pytest.raises(ValueError):
        R.sample_bounded(rng, 0)


def test_bounded_sampler_hits_every_value():
    R = Ring(256, find_ntt_prime(256))
    rng = np.random.default_rng(11)
    seen = set()
    for _ in range(20):
        seen.update(int(v) for v in R.sample_bounded(rng, 3).centered())
    assert seen == set(range(-3, 4))


def test_samplers_deterministic():
    R = Ring(64, find_ntt_prime(64))
    a = R.sample_bounded(np.random.default_rng(42), 5)
    b = R.sample_bounded(np.random.default_rng(42), 5)
    assert a == b
    assert R.sample_uniform(np.random.default_rng(1)) == R.sample_uniform(np.random.default_rng(1))


def test_element_serialization_roundtrip():
    R = Ring(16, find_ntt_prime(16))
    p = R.sample_uniform(np.random.default_rng(0))
    blob = p.to_bytes()
    assert len(blob) == RingElement.encoded_size(16) == 12 + 8 * 16
    back, end = RingElement.from_bytes(R, blob)
    assert back == p and end == len(blob)
    with pytest.raises(ParameterMismatchError):
        RingElement.from_bytes(Ring(16, 17), blob)
