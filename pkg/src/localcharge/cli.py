"""Command line interface: ``localcharge <command> [options]``.

Exit codes: 0 success, 1 gap scan found a violation, 2 invalid input,
3 stabilisation failure, 4 internal cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from .algebra.field import GFP, QQ
from .bundles import (ExtensionClassError, bundle, elementary_transform, ext_param_count,
                      ext_slots, random_extension_class, restricted_splitting_type)
from .invariants import CrossCheckError, InvariantReport, local_charge, sample_classes
from .laurent import LaurentPoly, ParseError, canonical_string, parse_laurent
from .pushforward import StabilizationError

log = logging.getLogger("localcharge")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_STABLE, EXIT_CHECK = 0, 1, 2, 3, 4

JSON_KEYS = ("k", "j", "p", "width", "height", "chi", "is_instanton", "split_class",
             "R_used", "stabilized", "height_method")
CSV_COLUMNS = ("k", "j", "p", "width", "height", "chi", "instanton", "R_used")

GLOBAL_DEFAULTS = {"format": "text", "field": "q", "rmax": None, "seed": 0, "samples": 5,
                   "quiet": False, "unsafe": False}


class InputError(ValueError):
    pass


def _rmax(text: str):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--rmax must be 'auto' or an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("--rmax must be non-negative")
    return value


def _jrange(text: str) -> list[int]:
    if ".." in text:
        a, _, b = text.partition("..")
        try:
            lo, hi = int(a), int(b)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad j-range {text!r}; expected a..b")
        return list(range(lo, hi + 1))
    try:
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad j-range {text!r}; expected an integer or a..b")


def _global_flags(parser: argparse.ArgumentParser) -> None:
    # defaults are filled in after parsing so flags work before or after the command
    s = argparse.SUPPRESS
    parser.add_argument("--format", choices=("text", "json", "csv"), default=s)
    parser.add_argument("--field", choices=("q", "gfp"), default=s,
                        help="coefficient field; gfp results are re-checked over Q")
    parser.add_argument("--unsafe", action="store_true", default=s,
                        help="with --field gfp, skip the confirmation pass over Q")
    parser.add_argument("--rmax", type=_rmax, default=s, metavar="auto|N",
                        help="u-degree truncation (default: automatic)")
    parser.add_argument("--seed", type=int, default=s)
    parser.add_argument("--samples", type=int, default=s)
    parser.add_argument("--quiet", action="store_true", default=s)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localcharge",
                                     description="Local charges of rank-2 bundles near a "
                                                 "contracted curve.")
    _global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", help="width, height and local charge of one bundle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--p", default="0",
                   help="extension class, '0', or 'generic' (random, from --seed)")
    _global_flags(p)

    p = sub.add_parser("scan", help="table of charges over a range of j")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=_jrange, required=True, metavar="a..b")
    _global_flags(p)

    p = sub.add_parser("gaps", help="check chi >= k-1 on sampled bundles")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--jmax", type=int, required=True)
    _global_flags(p)

    p = sub.add_parser("extdim", help="number of extension parameters and their slots")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    _global_flags(p)

    p = sub.add_parser("elm", help="elementary transformation of a bundle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--p", default="0")
    _global_flags(p)

    p = sub.add_parser("ring", help="relations of the cone ring and the substitution table")
    p.add_argument("--k", type=int, required=True)
    _global_flags(p)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    return args


# ---------------------------------------------------------------------------
# computation


def _check_kj(k: int, j: int) -> None:
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    if j < 0:
        raise InputError(f"j must be >= 0, got {j}")


def _extension_class(k: int, j: int, text: str, seed: int) -> LaurentPoly:
    if text.strip().lower() == "generic":
        if ext_param_count(k, j) == 0:
            return LaurentPoly()
        return random_extension_class(k, j, random.Random(f"{seed}:{k}:{j}"))
    return parse_laurent(text)


def _charge(b, args) -> InvariantReport:
    field = GFP if args.field == "gfp" else QQ
    rep = local_charge(b, field, R=args.rmax)
    if field is not QQ and not args.unsafe:
        check = local_charge(b, QQ, R=args.rmax)
        if (check.width, check.height) != (rep.width, rep.height):
            raise CrossCheckError(
                f"{field} gave width {rep.width}, height {rep.height} but Q gives "
                f"width {check.width}, height {check.height} for {b}")
        rep = check
    log.info("k=%d j=%d p=%s: w=%d h=%d chi=%d", rep.k, rep.j, rep.p, rep.width, rep.height,
             rep.chi)
    return rep


def _report_json(rep: InvariantReport) -> dict:
    d = rep.as_dict()
    return {key: d[key] for key in JSON_KEYS}


def _csv_row(rep: InvariantReport) -> str:
    p = '"' + rep.p.replace('"', '""') + '"'
    cells = [rep.k, rep.j, p, rep.width, rep.height, rep.chi,
             "true" if rep.is_instanton else "false", rep.R_used]
    return ",".join(str(c) for c in cells)


def _report_text(rep: InvariantReport) -> str:
    return (f"k={rep.k} j={rep.j} p={rep.p}\n"
            f"  width {rep.width}  height {rep.height}  chi {rep.chi}\n"
            f"  instanton {'yes' if rep.is_instanton else 'no'}  class {rep.split_class} mod {rep.k}"
            f"  R_used {rep.R_used}{'' if rep.stabilized else ' (not stabilised)'}")


def _table(reports: list[InvariantReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([_report_json(r) for r in reports])
    if fmt == "csv":
        return "\n".join([",".join(CSV_COLUMNS)] + [_csv_row(r) for r in reports])
    lines = [f"{'k':>3} {'j':>3} {'w':>3} {'h':>4} {'chi':>4} {'inst':>4}  p"]
    for r in reports:
        lines.append(f"{r.k:>3} {r.j:>3} {r.width:>3} {r.height:>4} {r.chi:>4} "
                     f"{'yes' if r.is_instanton else 'no':>4}  {r.p}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_chi(args) -> tuple[str, int]:
    _check_kj(args.k, args.j)
    p = _extension_class(args.k, args.j, args.p, args.seed)
    rep = _charge(bundle(args.k, args.j, p), args)
    if args.format == "json":
        return json.dumps(_report_json(rep)), EXIT_OK
    if args.format == "csv":
        return _table([rep], "csv"), EXIT_OK
    return _report_text(rep), EXIT_OK


def _scan_reports(k: int, js, args) -> list[InvariantReport]:
    reports = []
    for j in js:
        _check_kj(k, j)
        for p in sample_classes(k, j, args.samples, args.seed):
            reports.append(_charge(bundle(k, j, p), args))
    return reports


def cmd_scan(args) -> tuple[str, int]:
    return _table(_scan_reports(args.k, args.j, args), args.format), EXIT_OK


def cmd_gaps(args) -> tuple[str, int]:
    k = args.k
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    reports = _scan_reports(k, range(k, args.jmax + 1), args)
    bound = k - 1
    bad = [r for r in reports if r.chi < bound]
    best = min(reports, key=lambda r: r.chi, default=None)
    min_chi = best.chi if best else None
    verdict = "FAIL" if bad else "PASS"
    code = EXIT_FAIL if bad else EXIT_OK
    if args.format == "json":
        out = {"verdict": verdict, "k": k, "jmax": args.jmax, "bound": bound,
               "min_chi": min_chi, "instances": len(reports),
               "violations": [_report_json(r) for r in bad]}
        return json.dumps(out), code
    if args.format == "csv":
        return _table(reports, "csv"), code
    if bad:
        first = bad[0]
        return (f"FAIL k={k}: chi={first.chi} < {bound} at j={first.j}, p={first.p} "
                f"({len(bad)} violation(s) in {len(reports)} instances)"), code
    if best is None:
        return f"PASS k={k}: no bundles with splitting type in {k}..{args.jmax}", code
    return (f"PASS k={k}: min chi = {min_chi} over {len(reports)} instances "
            f"(bound {bound}, attained at j={best.j}, p={best.p})"), code


def cmd_extdim(args) -> tuple[str, int]:
    _check_kj(args.k, args.j)
    slots = ext_slots(args.k, args.j)
    count = ext_param_count(args.k, args.j)
    if args.format == "json":
        return json.dumps({"k": args.k, "j": args.j, "count": count,
                           "slots": [list(s) for s in slots]}), EXIT_OK
    if args.format == "csv":
        return "\n".join(["r,s"] + [f"{r},{s}" for r, s in slots]), EXIT_OK
    text = " ".join(f"({r},{s})" for r, s in slots) or "none"
    return f"count {count}\nslots {text}", EXIT_OK


def cmd_elm(args) -> tuple[str, int]:
    _check_kj(args.k, args.j)
    b = bundle(args.k, args.j, _extension_class(args.k, args.j, args.p, args.seed))
    new = elementary_transform(b)
    st = restricted_splitting_type(new)
    cls = st % args.k
    out = {"k": args.k, "j": args.j, "p": canonical_string(b.p), "new_j": new.j,
           "new_p": canonical_string(new.p), "splitting_type": st, "split_class": cls}
    if args.format == "json":
        return json.dumps(out), EXIT_OK
    if args.format == "csv":
        keys = list(out)
        vals = [f'"{v}"' if isinstance(v, str) else str(v) for v in out.values()]
        return ",".join(keys) + "\n" + ",".join(vals), EXIT_OK
    return (f"transformed p {out['new_p']}\n"
            f"splitting type {st}\nclass {cls} mod {args.k}"), EXIT_OK


def _relation_text(i: int, t: int) -> str:
    left = f"x{i}*x{i + t}"
    a, b = i + 1, i + t - 1
    right = f"x{a}^2" if a == b else f"x{a}*x{b}"
    return f"{left} - {right}"


def _substitution_text(i: int) -> str:
    if i == 0:
        return "u"
    return f"z*u" if i == 1 else f"z^{i}*u"


def cmd_ring(args) -> tuple[str, int]:
    k = args.k
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    rels = [_relation_text(i, t) for t in range(2, k + 1) for i in range(0, k - t + 1)]
    subs = {f"x{i}": _substitution_text(i) for i in range(k + 1)}
    if args.format == "json":
        return json.dumps({"k": k, "relations": rels, "substitutions": subs}), EXIT_OK
    if args.format == "csv":
        return "\n".join(["variable,image"] + [f'{x},"{v}"' for x, v in subs.items()]), EXIT_OK
    lines = [f"relations ({len(rels)})"] + [f"  {r}" for r in rels]
    lines += ["substitutions"] + [f"  {x} -> {v}" for x, v in subs.items()]
    return "\n".join(lines), EXIT_OK


COMMANDS = {"chi": cmd_chi, "scan": cmd_scan, "gaps": cmd_gaps, "extdim": cmd_extdim,
            "elm": cmd_elm, "ring": cmd_ring}


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    try:
        out, code = COMMANDS[args.command](args)
    except (ParseError, ExtensionClassError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StabilizationError as exc:
        print(f"stabilisation failure: {exc}", file=sys.stderr)
        return EXIT_STABLE
    except CrossCheckError as exc:
        print(f"cross-check mismatch: {exc}", file=sys.stderr)
        return EXIT_CHECK
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
