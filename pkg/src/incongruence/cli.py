"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 a theorem
hypothesis is not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import IncongruenceError, PreconditionError, TruncationError
from .families import FamilySpec, parse_family
from .generators import generate
from .scanner import reconcile, scan, verify_congruence
from .series import TruncatedSeries
from .sieve import certify
from .store import CacheEntry, cache_filename, find_cached, load_cache, save_cache

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _t0_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="incongruence",
                     description="q-series coefficients, incongruence sieves and "
                                 "congruence scans")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, m=False, ell=False, depth=False, t=False, t0=False):
        p.add_argument("--family", required=True, type=parse_family,
                       help="p | cphi:<k> | mock:f | mock:omega | mock:nu | "
                            "eta:<d^r,...>@N=<level>")
        if m:
            p.add_argument("--m", type=int, required=True)
        if t:
            p.add_argument("--t", type=int, required=True)
        if ell:
            p.add_argument("--ell", type=int, required=ell == "required")
        if depth:
            p.add_argument("--depth", type=int, required=depth == "required")
        if t0:
            p.add_argument("--t0", type=_t0_list, action="append",
                           help="pin seeds (comma separated, repeatable)")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--cache", help="directory of cached coefficient runs")

    common(sub.add_parser("expand", help="emit coefficients"),
           ell=True, depth="required")
    common(sub.add_parser("sieve", help="incongruence certificate"),
           m=True, ell="required", depth=True, t0=True)
    common(sub.add_parser("scan", help="scan every progression mod m"),
           m=True, ell="required", depth="required")
    common(sub.add_parser("verify", help="check one congruence"),
           m=True, t=True, ell="required", depth="required")
    common(sub.add_parser("certify", help="sieve + scan + reconcile"),
           m=True, ell="required", depth="required", t0=True)
    st = sub.add_parser("selftest", help="run the regression suite")
    st.add_argument("--seed", type=int, default=None,
                    help="seed for the randomized property checks")
    return parser


def _series(family: FamilySpec, trunc: int, modulus, cache) -> TruncatedSeries:
    if cache:
        hit = find_cached(cache, family, modulus, trunc)
        if hit is not None:
            return load_cache(hit).to_series().truncate(trunc)
    series = generate(family, trunc, modulus)
    if cache:
        path = Path(cache) / cache_filename(family, modulus, trunc)
        save_cache(CacheEntry.from_series(family, series), path)
    return series


def _seed_depth(args) -> int:
    depth = args.depth if args.depth is not None else 10 * args.m + 100
    seeds = _pinned(args)
    if seeds:
        depth = max(depth, max(seeds))
    return depth


def _pinned(args):
    if getattr(args, "t0", None) is None:
        return None
    return [t for group in args.t0 for t in group]


def _tsv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, delimiter="\t", lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _check_m(args):
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    if getattr(args, "depth", None) is not None and args.depth < 0:
        raise UsageError("--depth must be non-negative")


def cmd_expand(args):
    if args.depth < 0:
        raise UsageError("--depth must be non-negative")
    s = _series(args.family, args.depth, args.ell, args.cache)
    if args.format == "tsv":
        return EXIT_OK, _tsv([["n", "coeff"]] + [[n, c] for n, c in enumerate(s.coeffs)])
    return EXIT_OK, _dump({"family": args.family.selector, "offset24": s.offset24,
                           "modulus": s.modulus, "depth": s.trunc,
                           "coeffs": list(s.coeffs)})


def _certificate(args):
    coeffs = _series(args.family, _seed_depth(args), None, args.cache)
    return certify(args.family, coeffs, args.m, args.ell, seeds=_pinned(args))


def cmd_sieve(args):
    _check_m(args)
    cert = _certificate(args)
    if args.format == "tsv":
        rows = [["t", "witness_d", "t0"]]
        rows += [[w.t, w.d, w.t0] for _, w in sorted(cert.prohibited.items())]
        return EXIT_OK, _tsv(rows)
    return EXIT_OK, _dump(cert.to_dict())


def _scan_series(args):
    need = args.m * args.depth + args.m - 1
    return _series(args.family, need, args.ell, args.cache)


def cmd_scan(args):
    _check_m(args)
    report = scan(_scan_series(args), args.m, args.ell, args.depth, args.family)
    if args.format == "tsv":
        return EXIT_OK, report.to_tsv()
    return EXIT_OK, _dump(report.to_dict())


def cmd_verify(args):
    _check_m(args)
    if not 0 <= args.t < args.m:
        raise UsageError("--t must lie in [0, m)")
    v = verify_congruence(_scan_series(args), args.m, args.t, args.ell, args.depth)
    payload = {"family": args.family.selector, **v.to_dict()}
    code = EXIT_OK if v.passed else EXIT_VERIFY
    if args.format == "tsv":
        return code, _tsv([list(payload), list(payload.values())])
    return code, _dump(payload)


def cmd_certify(args):
    _check_m(args)
    cert = _certificate(args)
    report = scan(_scan_series(args), args.m, args.ell, args.depth, args.family)
    rec = reconcile(report, cert)
    if args.format == "tsv":
        rows = [["t", "prohibited", "witness_d", "status", "witness_n"]]
        for t, st in sorted(report.statuses.items()):
            w = cert.prohibited.get(t)
            rows.append([t, int(w is not None), "" if w is None else w.d, st.kind,
                         "" if st.witness_n is None else st.witness_n])
        return EXIT_OK, _tsv(rows)
    return EXIT_OK, _dump({"certificate": cert.to_dict(), "scan": report.to_dict(),
                           "reconciliation": rec.to_dict()})


def cmd_selftest(args, out):
    from .selftest import DEFAULT_SEED, run_all

    seed = DEFAULT_SEED if args.seed is None else args.seed
    results = run_all(seed, echo=lambda line: out.write(line + "\n"))
    failed = [r.number for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"expand": cmd_expand, "sieve": cmd_sieve, "scan": cmd_scan,
            "verify": cmd_verify, "certify": cmd_certify}


def run(argv=None, quiet: bool = False) -> int:
    err = io.StringIO() if quiet else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    if args.command == "selftest":
        return cmd_selftest(args, sys.stdout)
    try:
        code, text = COMMANDS[args.command](args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        err.write(f"precondition not met: {exc}\n")
        return EXIT_PRECONDITION
    except (TruncationError, IncongruenceError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
