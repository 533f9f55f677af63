"""Command-line entry point: ``hades keygen|encrypt|compare|sort|range|bench|fa-test``.

Exit codes: 0 success, 1 a statistical or correctness check failed,
2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .. import formats
from ..compare import cmp_basic, cmp_fae
from ..encrypt import encrypt
from ..errors import HadesError
from ..keys import CEK_MODES, keygen
from ..params import FLAVORS, PROFILES, get_profile
from . import datasets
from .bench import records_to_csv, records_to_json, run_bench
from .fa import fa_test, histogram_csv
from .ops import Comparator, encrypt_many, encrypted_sort, range_query

log = logging.getLogger("hades")


class UsageError(Exception):
    pass


def _rng(seed):
    return np.random.default_rng(seed)


def _dir(path: str, must_exist: bool = True) -> Path:
    p = Path(path)
    if must_exist and not p.is_dir():
        raise UsageError(f"directory not found: {p}")
    return p


def _load(path: Path, loader):
    try:
        return loader(path.read_bytes())
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}") from None


def _keys(keydir: str, need=("pk", "cek")):
    d = _dir(keydir)
    out = {}
    if "pk" in need:
        out["params"], out["pk"] = _load(d / formats.PUBLIC_KEY_FILE, formats.load_public_key)
    if "cek" in need:
        out["params"], out["cek"] = _load(d / formats.CEK_FILE, formats.load_cek)
    return out


def _write(path: Path, data) -> None:
    try:
        if isinstance(data, bytes):
            path.write_bytes(data)
        else:
            path.write_text(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_keygen(args) -> int:
    out = _dir(args.out)
    params = get_profile(args.profile, flavor=args.flavor)
    keys = keygen(params, _rng(args.seed), mode=args.cek_mode)
    written = {
        formats.PROFILE_FILE: params.to_text(),
        formats.PUBLIC_KEY_FILE: formats.public_key_bytes(params, keys.public),
        formats.CEK_FILE: formats.cek_bytes(params, keys.cek),
    }
    if args.write_secret:
        written[formats.SECRET_KEY_FILE] = formats.secret_key_bytes(params, keys.secret)
    for name, data in written.items():
        _write(out / name, data)
        print(f"wrote {out / name} ({len(data)} bytes)")
    return 0


def cmd_gen_data(args) -> int:
    spec = datasets.SYNTHETIC[args.dataset]
    values = datasets.generate(spec, args.seed)
    datasets.write_csv(args.out, values)
    print(f"wrote {len(values)} {spec.name} values to {args.out}")
    return 0


def cmd_encrypt(args) -> int:
    keys = _keys(args.keys, need=("pk",))
    params = keys["params"]
    flavor = args.flavor or params.flavor
    if flavor != params.flavor:
        raise UsageError(f"keys were provisioned for {params.flavor}, not {flavor}")
    try:
        values = datasets.read_column(args.input, args.column, args.frac_bits, args.skip_header)
    except FileNotFoundError:
        raise UsageError(f"file not found: {args.input}") from None
    except datasets.CSVError as exc:
        raise UsageError(str(exc)) from None
    if not values:
        raise UsageError(f"{args.input}: no values to encrypt")
    m_max = params.max_plaintext
    for rowno, v in enumerate(values, 1):
        if abs(v) > m_max:
            raise UsageError(f"value {v} (entry {rowno}) exceeds M_max={m_max}")
    cts = encrypt_many(keys["pk"], values, params, args.seed, flavor, workers=args.workers)
    _write(Path(args.out), formats.ciphertexts_bytes(params, cts, args.frac_bits))
    print(f"encrypted {len(cts)} values ({flavor}) -> {args.out}")
    return 0


def _ciphertexts(path: str):
    return _load(Path(path), formats.load_ciphertexts)


def cmd_compare(args) -> int:
    keys = _keys(args.keys, need=("cek",))
    params, cts, _ = _ciphertexts(args.ciphertexts)
    for idx in (args.i, args.j):
        if not 0 <= idx < len(cts):
            raise UsageError(f"index {idx} out of range (0..{len(cts) - 1})")
    a, b = cts[args.i], cts[args.j]
    if a.flavor == "basic":
        print(cmp_basic(keys["cek"], a, b, params))
    else:
        print("true" if cmp_fae(keys["cek"], a, b, params) else "false")
    return 0


def cmd_sort(args) -> int:
    keys = _keys(args.keys, need=("cek",))
    params, cts, _ = _ciphertexts(args.ciphertexts)
    cmp = Comparator(keys["cek"], params)
    perm = encrypted_sort(cts, cmp)
    _write(Path(args.out), "\n".join(map(str, perm)) + "\n")
    print(f"sorted {len(cts)} ciphertexts with {cmp.count} comparisons -> {args.out}")
    return 0


def _bound(args, which: str, keys, params, flavor, rng):
    ct_path = getattr(args, f"{which}_ct")
    value = getattr(args, which)
    if ct_path:
        _, cts, _ = _ciphertexts(ct_path)
        if len(cts) != 1:
            raise UsageError(f"{ct_path}: expected exactly one ciphertext")
        return cts[0]
    if value is None:
        raise UsageError(f"give --{which} or --{which}-ct")
    if "pk" not in keys:
        keys.update(_keys(args.keys, need=("pk",)))
    m = datasets.to_integers([value], args.frac_bits)[0]
    return encrypt(keys["pk"], m, params, rng, flavor)


def cmd_range(args) -> int:
    keys = _keys(args.keys, need=("cek",))
    params, cts, frac_bits = _ciphertexts(args.ciphertexts)
    if args.frac_bits is None:
        args.frac_bits = frac_bits
    flavor = cts[0].flavor if cts else params.flavor
    rng = _rng(args.seed)
    lower = _bound(args, "lower", keys, params, flavor, rng)
    upper = _bound(args, "upper", keys, params, flavor, rng)
    cmp = Comparator(keys["cek"], params)
    hits = range_query(cts, lower, upper, cmp)
    text = "\n".join(map(str, hits)) + ("\n" if hits else "")
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    print(f"{len(hits)} of {len(cts)} match ({cmp.count} comparisons)", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    params = get_profile(args.profile)
    records = run_bench(params, count=args.count, repeat=args.repeat, seed=args.seed)
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records)
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_fa_test(args) -> int:
    keys = _keys(args.keys)
    params = keys["params"]
    if params.flavor != "fae":
        raise UsageError("fa-test requires keys provisioned for the fae flavor")
    report = fa_test(keys["pk"], keys["cek"], params, _rng(args.seed), trials=args.trials,
                     encryptions=args.encryptions, plaintext=args.plaintext)
    out = _dir(args.out)
    _write(out / "fa_report.json", json.dumps(report.summary(), indent=2))
    _write(out / "fa_eval_histogram.csv", histogram_csv(report.eval_values))
    print(json.dumps(report.summary(), indent=2))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hades", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", type=int, default=None, help="rng seed for reproducible output")
        return p

    p = seeded(sub.add_parser("keygen", help="generate PK/CEK (and optionally SK) files"))
    p.add_argument("--profile", choices=sorted(PROFILES), default="default")
    p.add_argument("--flavor", choices=FLAVORS, default="basic")
    p.add_argument("--cek-mode", choices=CEK_MODES, default="gadget")
    p.add_argument("--write-secret", action="store_true", help="also write the secret key")
    p.add_argument("--out", required=True, help="existing output directory")
    p.set_defaults(func=cmd_keygen)

    p = seeded(sub.add_parser("gen-data", help="write a synthetic dataset as CSV"))
    p.add_argument("dataset", choices=sorted(datasets.SYNTHETIC))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_data)

    p = seeded(sub.add_parser("encrypt", help="encrypt one CSV column"))
    p.add_argument("input")
    p.add_argument("--keys", required=True)
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--skip-header", action="store_true")
    p.add_argument("--frac-bits", type=int, default=0, help="fixed-point bits for real values")
    p.add_argument("--flavor", choices=FLAVORS, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("compare", help="compare two records of a ciphertext file")
    p.add_argument("ciphertexts")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--keys", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sort", help="sort basic ciphertexts, emit the index permutation")
    p.add_argument("ciphertexts")
    p.add_argument("--keys", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sort)

    p = seeded(sub.add_parser("range", help="indices whose value lies in [lower, upper]"))
    p.add_argument("ciphertexts")
    p.add_argument("--keys", required=True)
    p.add_argument("--lower-ct")
    p.add_argument("--upper-ct")
    p.add_argument("--lower", type=float, help="plaintext bound, encrypted with the PK")
    p.add_argument("--upper", type=float)
    p.add_argument("--frac-bits", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("bench", help="per-operation timing table")
    p.add_argument("--profile", choices=sorted(PROFILES), default="default")
    p.add_argument("--count", "--counts", type=int, default=100, dest="count")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = seeded(sub.add_parser("fa-test", help="frequency-analysis statistics for FAE keys"))
    p.add_argument("--keys", required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--encryptions", type=int, default=1000)
    p.add_argument("--plaintext", type=int, default=7)
    p.add_argument("--out", required=True, help="existing report directory")
    p.set_defaults(func=cmd_fa_test)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, HadesError) as exc:
        print(f"hades {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
