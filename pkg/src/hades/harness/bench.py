"""Per-operation timing: KeyGen, EncBasic, EncFAE, CmpBasic, CmpFAE."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from ..compare import cmp_basic, cmp_fae
from ..encrypt import enc_basic, enc_fae
from ..keys import keygen
from ..params import Params

OPERATIONS = ("KeyGen", "EncBasic", "EncFAE", "CmpBasic", "CmpFAE")


@dataclass(frozen=True)
class BenchRecord:
    operation: str
    count: int
    total_ms: float
    mean_ms: float
    repeat_means_ms: tuple[float, ...] = ()

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")


def _clock(fn, arg) -> float:
    t0 = time.perf_counter()
    fn(arg)
    return (time.perf_counter() - t0) * 1000.0


def _paired(fn_a, fn_b, args) -> tuple[float, float]:
    """Time two operations interleaved per instance, alternating which goes first,
    so drift in machine load hits both equally."""
    ta = tb = 0.0
    for k, arg in enumerate(args):
        if k % 2:
            ta += _clock(fn_a, arg)
            tb += _clock(fn_b, arg)
        else:
            tb += _clock(fn_b, arg)
            ta += _clock(fn_a, arg)
    return ta, tb


def run_bench(params: Params, count: int = 100, repeat: int = 3, seed: int = 0) -> list[BenchRecord]:
    """Time ``count`` instances of each operation, ``repeat`` times, and average."""
    rng = np.random.default_rng(seed)
    keys = keygen(params, rng)
    pk, cek = keys.public, keys.cek
    bound = params.max_plaintext
    totals = {op: [] for op in OPERATIONS}
    for _ in range(repeat):
        msgs = [int(m) for m in rng.integers(-bound, bound, size=2 * count, endpoint=True)]
        basic = [enc_basic(pk, m, params, rng) for m in msgs]
        fae = [enc_fae(pk, m, params, rng) for m in msgs]
        totals["KeyGen"].append(sum(_clock(lambda _: keygen(params, rng), None)
                                    for _ in range(count)))
        t_basic, t_fae = _paired(lambda m: enc_basic(pk, m, params, rng),
                                 lambda m: enc_fae(pk, m, params, rng), msgs[:count])
        totals["EncBasic"].append(t_basic)
        totals["EncFAE"].append(t_fae)
        t_basic, t_fae = _paired(lambda i: cmp_basic(cek, basic[2 * i], basic[2 * i + 1], params),
                                 lambda i: cmp_fae(cek, fae[2 * i], fae[2 * i + 1], params),
                                 range(count))
        totals["CmpBasic"].append(t_basic)
        totals["CmpFAE"].append(t_fae)
    records = []
    for op in OPERATIONS:
        runs = totals[op]
        total = sum(runs) / len(runs)
        records.append(BenchRecord(op, count, total, total / count,
                                   tuple(r / count for r in runs)))
    return records


def records_to_json(records) -> str:
    return json.dumps([asdict(r) for r in records], indent=2)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["operation", "count", "total_ms", "mean_ms"])
    for r in records:
        w.writerow([r.operation, r.count, f"{r.total_ms:.6f}", f"{r.mean_ms:.6f}"])
    return buf.getvalue()
