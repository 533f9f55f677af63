"""Frequency-analysis resistance checks for FAE ciphertexts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binomtest

from ..compare import cmp_fae_outcome
from ..encrypt import enc_fae
from ..keys import CompareEvalKey, PublicKey
from ..params import Params

RATE_BAND = (0.45, 0.55)


@dataclass
class FAReport:
    plaintext: int
    encryptions: int
    distinct_ciphertexts: int
    trials: int
    true_count: int
    true_rate: float
    ci_low: float
    ci_high: float
    eval_median: float
    eval_values: list

    @property
    def all_distinct(self) -> bool:
        return self.distinct_ciphertexts == self.encryptions

    @property
    def rate_in_band(self) -> bool:
        return RATE_BAND[0] <= self.true_rate <= RATE_BAND[1]

    @property
    def ci_contains_half(self) -> bool:
        return self.ci_low <= 0.5 <= self.ci_high

    @property
    def passed(self) -> bool:
        return self.all_distinct and self.rate_in_band

    def summary(self) -> dict:
        d = {k: v for k, v in self.__dict__.items() if k != "eval_values"}
        d.update(all_distinct=self.all_distinct, rate_in_band=self.rate_in_band,
                 ci_contains_half=self.ci_contains_half, passed=self.passed)
        return d


def fa_test(pk: PublicKey, cek: CompareEvalKey, params: Params, rng: np.random.Generator,
            trials: int = 10_000, encryptions: int = 1000, plaintext: int = 7) -> FAReport:
    """(a) distinctness of repeated encryptions, (b) equal-plaintext true-rate with a
    95% Clopper-Pearson interval, (c) the raw evaluation values for plotting."""
    seen = {enc_fae(pk, plaintext, params, rng).to_bytes() for _ in range(encryptions)}
    values = []
    hits = 0
    for _ in range(trials):
        a = enc_fae(pk, plaintext, params, rng)
        b = enc_fae(pk, plaintext, params, rng)
        out = cmp_fae_outcome(cek, a, b, params)
        hits += out.strict
        values.append(out.value)
    ci = binomtest(hits, trials).proportion_ci(0.95)
    return FAReport(
        plaintext=plaintext, encryptions=encryptions, distinct_ciphertexts=len(seen),
        trials=trials, true_count=hits, true_rate=hits / trials,
        ci_low=float(ci.low), ci_high=float(ci.high),
        eval_median=float(np.median(values)), eval_values=values,
    )


def histogram_csv(values, bins: int = 50) -> str:
    counts, edges = np.histogram(np.asarray(values, dtype=float), bins=bins)
    rows = ["bin_low,bin_high,count"]
    rows += [f"{lo:.1f},{hi:.1f},{c}" for lo, hi, c in zip(edges[:-1], edges[1:], counts)]
    return "\n".join(rows) + "\n"
