"""Comparison consumers: bulk encryption, sorting, range queries, scans."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..compare import cmp_basic, cmp_fae
from ..encrypt import Ciphertext, encrypt
from ..errors import FlavorMismatchError
from ..keys import CompareEvalKey, PublicKey
from ..params import Params

log = logging.getLogger(__name__)

CHUNK = 256


def encrypt_many(pk: PublicKey, values, params: Params, seed, flavor: str = "basic",
                 workers: int = 1) -> list[Ciphertext]:
    """Encrypt in fixed-size chunks, one spawned generator per chunk.

    The output depends only on ``seed``, never on ``workers``.
    """
    values = list(values)
    chunks = [values[i : i + CHUNK] for i in range(0, len(values), CHUNK)]
    seeds = np.random.SeedSequence(seed).spawn(len(chunks))

    def run(job):
        chunk, ss = job
        rng = np.random.default_rng(ss)
        return [encrypt(pk, m, params, rng, flavor) for m in chunk]

    jobs = list(zip(chunks, seeds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    return [ct for part in parts for ct in part]


class Comparator:
    """Counts comparisons; ``three_way`` dispatches on ciphertext flavor."""

    def __init__(self, cek: CompareEvalKey, params: Params):
        self.cek = cek
        self.params = params
        self.count = 0

    def basic(self, a: Ciphertext, b: Ciphertext) -> int:
        self.count += 1
        return cmp_basic(self.cek, a, b, self.params)

    def greater(self, a: Ciphertext, b: Ciphertext) -> bool:
        self.count += 1
        return cmp_fae(self.cek, a, b, self.params)


def encrypted_sort(cts: list[Ciphertext], cmp: Comparator) -> list[int]:
    """Stable merge sort of basic ciphertexts; returns the index permutation."""
    for ct in cts:
        if ct.flavor != "basic":
            raise FlavorMismatchError("sorting requires basic-flavor ciphertexts")
    order = list(range(len(cts)))
    width = 1
    while width < len(order):
        merged = []
        for lo in range(0, len(order), 2 * width):
            left = order[lo : lo + width]
            right = order[lo + width : lo + 2 * width]
            i = j = 0
            while i < len(left) and j < len(right):
                if cmp.basic(cts[left[i]], cts[right[j]]) <= 0:
                    merged.append(left[i])
                    i += 1
                else:
                    merged.append(right[j])
                    j += 1
            merged.extend(left[i:])
            merged.extend(right[j:])
        order = merged
        width *= 2
    log.info("sorted %d ciphertexts with %d comparisons", len(cts), cmp.count)
    return order


def range_query(cts: list[Ciphertext], lower: Ciphertext, upper: Ciphertext,
                cmp: Comparator) -> list[int]:
    """Indices with lower <= value <= upper, decided only through comparisons.

    For FAE data a value equal to a bound may land on either side.
    """
    flavor = lower.flavor
    if upper.flavor != flavor or any(ct.flavor != flavor for ct in cts):
        raise FlavorMismatchError("bounds and data must share one flavor")
    hits = []
    for i, ct in enumerate(cts):
        if flavor == "basic":
            ok = cmp.basic(ct, lower) >= 0 and cmp.basic(ct, upper) <= 0
        else:
            ok = not cmp.greater(lower, ct) and not cmp.greater(ct, upper)
        if ok:
            hits.append(i)
    return hits


def pairwise_scan(cts: list[Ciphertext], pivot: Ciphertext, cmp: Comparator) -> list:
    """Compare every item against ``pivot``."""
    if pivot.flavor == "basic":
        return [cmp.basic(ct, pivot) for ct in cts]
    return [cmp.greater(ct, pivot) for ct in cts]
