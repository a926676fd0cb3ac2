"""Command-line entry point: ``wieferich <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analytics, charfun, search, store
from .arith import DomainError
from .orders import least_primitive_root, mult_order
from .primes import DEFAULT_SEGMENT, PrimeRange

CONFIG_KEYS = {"workers", "chunk", "precision", "out"}


def number(s: str) -> int:
    """Integer argument; accepts 1e15-style literals when they are exact."""
    try:
        return int(s)
    except ValueError:
        pass
    try:
        f = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not f.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    return int(f)


def read_config(path: str | None) -> dict[str, str]:
    """Parse a key=value file; blank lines and '#' comments are skipped."""
    if not path:
        return {}
    cfg = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise DomainError(f"bad config line: {raw!r}")
        cfg[key] = val.strip()
    return cfg


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None, help="worker processes (default: $WIEFERICH_WORKERS or CPU count)")
    common.add_argument("--chunk", type=number, default=None, help=f"integers per work unit (default {DEFAULT_SEGMENT})")
    common.add_argument("--precision", type=int, default=None, help="significant digits for real output (default 16)")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--config", default=None, help="key=value file for workers/chunk/precision/out")

    p = argparse.ArgumentParser(prog="wieferich", description="Wieferich-type prime searches and constants")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", parents=[common], help="search v^(p-1) == 1 mod p^k over [from, to)")
    s.add_argument("--base", type=number, required=True)
    s.add_argument("--from", dest="lo", type=number, default=2)
    s.add_argument("--to", dest="hi", type=number, required=True)
    s.add_argument("--power", type=int, default=2)
    s.add_argument("--checkpoint", default=None, help="checkpoint path (default <out>.ckpt)")
    s.add_argument("--fresh", action="store_true", help="ignore any existing checkpoint")

    s = sub.add_parser("quotient", parents=[common], help="Fermat quotient q_v(p)")
    s.add_argument("--base", type=number, required=True)
    s.add_argument("--prime", type=number, required=True)

    s = sub.add_parser("order", parents=[common], help="order profile of v mod n")
    s.add_argument("--base", type=number, required=True)
    s.add_argument("--mod", type=number, required=True)

    s = sub.add_parser("constants", parents=[common], help="series reports and constants")
    s.add_argument("--which", required=True, choices=["mertens", "artin", "omega-series", "wieferich-constant", "correction"])
    s.add_argument("--x", type=number, default=None, help="cut-off")
    s.add_argument("--base", type=number, default=2)
    s.add_argument("--trunc", type=number, default=10**4)

    s = sub.add_parser("predict", parents=[common], help="interval containing the next hit")
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--c", type=float, required=True)

    s = sub.add_parser("pairs", parents=[common], help="Wieferich pairs p < q <= limit")
    s.add_argument("--limit", type=number, required=True)

    s = sub.add_parser("abel", parents=[common], help="n <= limit with v^lambda(n) == 1 mod n^2")
    s.add_argument("--base", type=number, required=True)
    s.add_argument("--limit", type=number, required=True)

    s = sub.add_parser("verify-oracle", parents=[common], help="indicator sums vs direct orders, as CSV")
    s.add_argument("--pmax", type=number, required=True)

    s = sub.add_parser("proot", parents=[common], help="least primitive root g(p), or h(p^2) with --square")
    s.add_argument("--prime", type=number, required=True)
    s.add_argument("--square", action="store_true")
    return p


def _settings(args) -> argparse.Namespace:
    cfg = read_config(args.config)
    env_workers = os.environ.get("WIEFERICH_WORKERS")
    if args.workers is None:
        args.workers = int(cfg.get("workers") or env_workers or os.cpu_count() or 1)
    if args.chunk is None:
        args.chunk = number(cfg.get("chunk", str(DEFAULT_SEGMENT)))
    if args.precision is None:
        args.precision = int(cfg.get("precision", 16))
    if args.out is None:
        args.out = cfg.get("out")
    if args.workers < 1:
        raise DomainError("workers must be >= 1")
    return args


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2) + "\n")


def _g(x: float, digits: int) -> str:
    return format(x, f".{digits}g")


def cmd_scan(args) -> None:
    job = search.ScanJob(args.base, PrimeRange(args.lo, args.hi), args.power, args.chunk, args.workers)
    if args.out:
        store.run_scan(job, args.out, args.checkpoint, fresh=args.fresh, stream=sys.stdout)
        return
    sys.stdout.write(store.header_line(job))
    sys.stdout.flush()
    ckpt = Path(args.checkpoint) if args.checkpoint else None
    fp = store.job_fingerprint(job)
    total = 0
    for chunk_hi, hits in search.iter_chunks(job):
        for h in hits:
            sys.stdout.write(store.hit_line(h))
        sys.stdout.flush()
        total += len(hits)
        if ckpt:
            store.write_checkpoint(ckpt, store.Checkpoint(fp, chunk_hi, total, store._now()))


def cmd_constants(args) -> None:
    d = args.precision
    if args.which == "mertens":
        x = args.x or 10**6
        s, pr = analytics.mertens_sum(x), analytics.mertens_product(x)
        obj = {
            "name": "mertens",
            "x": str(x),
            "sum": _g(s.value, d),
            "loglog_plus_b0": _g(s.asymptotic, d),
            "sum_error": _g(s.error, d),
            "sum_bound": _g(s.bound, d),
            "sum_bound_holds": s.bound_holds,
            "product": _g(pr.value, d),
            "product_main": _g(pr.main, d),
            "product_lower": _g(pr.lower, d),
            "product_upper": _g(pr.upper, d),
            "product_bound_holds": pr.bound_holds,
            "provenance": {"b0": "Meissel-Mertens constant", "gamma": "Euler-Mascheroni constant"},
        }
    elif args.which == "artin":
        a = analytics.artin_constant(args.x or 10**6)
        obj = {"name": "artin", "cutoff": str(a.cutoff), "value": _g(a.value, d), "relative_remainder": _g(a.remainder, d),
               "printed": str(analytics.PRINTED_A0)}
    elif args.which == "omega-series":
        obj = analytics.omega_series(args.x or 10**4).as_dict(d)
    elif args.which == "wieferich-constant":
        obj = analytics.wieferich_constant(args.base, args.x or 10**6).as_dict(d)
    else:
        obj = analytics.correction_factor(args.base, args.trunc).as_dict(d)
    _json(args, obj)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _settings(args)
        d = args.precision
        if args.command == "scan":
            cmd_scan(args)
        elif args.command == "quotient":
            _emit(args, f"{search.fermat_quotient(args.base, args.prime)}\n")
        elif args.command == "order":
            _json(args, mult_order(args.base, args.mod).as_dict())
        elif args.command == "constants":
            cmd_constants(args)
        elif args.command == "predict":
            _json(args, analytics.predict_next(args.x, args.c).as_dict(d))
        elif args.command == "pairs":
            _emit(args, "".join(json.dumps({"p": p, "q": q}) + "\n" for p, q in search.pair_scan(args.limit)))
        elif args.command == "abel":
            _json(args, search.abel_scan(args.base, args.limit, workers=args.workers))
        elif args.command == "verify-oracle":
            rows = charfun.oracle_grid(args.pmax)
            if args.out:
                with open(args.out, "w") as fh:
                    charfun.write_discrepancy_csv(rows, fh)
            else:
                charfun.write_discrepancy_csv(rows, sys.stdout)
            print(json.dumps(charfun.summarize(rows)), file=sys.stderr)
        elif args.command == "proot":
            _emit(args, f"{least_primitive_root(args.prime, 2 if args.square else 1)}\n")
    except (DomainError, store.ResumeError) as exc:
        print(f"wieferich {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
