"""Synthetic stand-ins for the evaluation datasets.

Only sizes match the originals; values are drawn from documented ranges:

    bitcoin   1,085 transaction amounts, log-uniform in [1e-3, 1e3] BTC, 8 fractional bits
    covid19   340 daily case counts, integers in [0, 100000]
    hg38      34,423 genomic positions, integers in [1, 248956422] (chr1 length)
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    count: int
    low: float
    high: float
    is_real: bool = False
    frac_bits: int = 0
    path: str | None = None


SYNTHETIC = {
    "bitcoin": DatasetSpec("bitcoin", 1085, 1e-3, 1e3, is_real=True, frac_bits=8),
    "covid19": DatasetSpec("covid19", 340, 0, 100_000),
    "hg38": DatasetSpec("hg38", 34_423, 1, 248_956_422),
}


def generate(spec: DatasetSpec, seed: int = 0) -> list:
    rng = np.random.default_rng(seed)
    if spec.is_real:
        logs = rng.uniform(np.log10(spec.low), np.log10(spec.high), size=spec.count)
        return [round(float(x), 6) for x in 10.0**logs]
    vals = rng.integers(int(spec.low), int(spec.high), size=spec.count, endpoint=True)
    return [int(v) for v in vals]


def to_integers(values, frac_bits: int) -> list[int]:
    """Fixed-point integers fed to encryption."""
    if frac_bits == 0:
        return [int(v) for v in values]
    return [int(round(float(v) * (1 << frac_bits))) for v in values]


def write_csv(path, values) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for v in values:
            w.writerow([v])


class CSVError(ValueError):
    pass


def read_column(path, column: int = 0, frac_bits: int = 0, skip_header: bool = False) -> list[int]:
    """Parse one numeric column into fixed-point integers.

    Raises :class:`CSVError` naming the 1-based row of the first bad value.
    """
    out = []
    with open(Path(path), newline="") as fh:
        for rowno, row in enumerate(csv.reader(fh), 1):
            if skip_header and rowno == 1:
                continue
            if not row or all(not c.strip() for c in row):
                continue
            if column >= len(row):
                raise CSVError(f"row {rowno}: no column {column}")
            text = row[column].strip()
            try:
                if frac_bits:
                    out.append(int(round(float(text) * (1 << frac_bits))))
                else:
                    out.append(int(text))
            except ValueError:
                raise CSVError(f"row {rowno}: cannot parse {text!r}") from None
    return out
