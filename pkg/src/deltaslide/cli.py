"""Batch command-line front end.

Exit status: 0 on success, 1 on domain errors (not binary, non-adjacent ends,
failed verification, ...), 2 on parse and usage errors.
"""

from __future__ import annotations

import argparse
import sys
from functools import reduce
from typing import Sequence, TextIO

from .classify import DEFAULT_LIMIT, check_conjecture_instance, normalize
from .core import direct_sum, handle_slide, is_delta_matroid, twist
from .errors import DeltaSlideError, ParseError
from .gf2 import binary_representation, is_binary
from .io_formats import (
    parse_bouquet,
    parse_set_system,
    serialize_bouquet,
    serialize_matrix,
    serialize_set_system,
)
from .ribbon import classify_bouquet, delta_matroid_of_bouquets, interlacement_matrix, ribbon_handle_slide
from .verify import SWEEPS, run_sweep


class _UsageError(Exception):
    """Unreadable or malformed input file; exit status 2."""


def _read(path: str, parser):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parser(text)
    except ParseError as exc:
        raise _UsageError(f"{path}: {exc}") from None


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_validate(args, out: TextIO) -> int:
    D = _read(args.set_system, parse_set_system)
    dm = is_delta_matroid(D)
    out.write(f"delta-matroid: {_yes(dm)}\n")
    out.write(f"binary: {_yes(dm and is_binary(D))}\n")
    return 0


def cmd_slide(args, out: TextIO) -> int:
    D = _read(args.set_system, parse_set_system)
    for a, b in args.over:
        D = handle_slide(D, a, b)
    out.write(serialize_set_system(D))
    return 0


def cmd_twist(args, out: TextIO) -> int:
    D = _read(args.set_system, parse_set_system)
    out.write(serialize_set_system(twist(D, args.by)))
    return 0


def cmd_sum(args, out: TextIO) -> int:
    parts = [_read(p, parse_set_system) for p in args.set_system]
    out.write(serialize_set_system(reduce(direct_sum, parts)))
    return 0


def cmd_normalize(args, out: TextIO) -> int:
    D = _read(args.set_system, parse_set_system)
    out.write(normalize(D, verify=args.verify).report())
    return 0


def cmd_classify_bouquet(args, out: TextIO) -> int:
    B = _read(args.bouquet, parse_bouquet)
    out.write(f"{classify_bouquet(B)}\n")
    return 0


def cmd_dmatroid(args, out: TextIO) -> int:
    bouquets = [_read(p, parse_bouquet) for p in args.bouquet]
    out.write(serialize_set_system(delta_matroid_of_bouquets(bouquets)))
    return 0


def cmd_represent(args, out: TextIO) -> int:
    D = _read(args.set_system, parse_set_system)
    A, M = binary_representation(D)
    if A:
        out.write(f"# twist: {' '.join(A)}\n")
    out.write(serialize_matrix(M))
    return 0


def cmd_interlace(args, out: TextIO) -> int:
    B = _read(args.bouquet, parse_bouquet)
    out.write(serialize_matrix(interlacement_matrix(B)))
    return 0


def cmd_ribbon_slide(args, out: TextIO) -> int:
    B = _read(args.bouquet, parse_bouquet)
    out.write(serialize_bouquet(ribbon_handle_slide(B, args.end, args.over)))
    return 0


def cmd_verify(args, out: TextIO) -> int:
    report = run_sweep(args.theorem, args.max_n)
    out.write(report.text())
    return 0 if report.ok else 1


def cmd_conjecture(args, out: TextIO) -> int:
    D = _read(args.set_system, parse_set_system)
    found, sig = check_conjecture_instance(D, args.limit)
    out.write(f"found: {_yes(found)}\n")
    if sig is not None:
        out.write(f"{sig}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltaslide", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("validate", help="delta-matroid and binary checks")
    p.add_argument("--set-system", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("slide", help="apply handle slides a over b, in order")
    p.add_argument("--set-system", required=True)
    p.add_argument("--over", nargs=2, action="append", required=True, metavar=("A", "B"))
    p.set_defaults(func=cmd_slide)

    p = sub.add_parser("twist", help="twist by a set of elements")
    p.add_argument("--set-system", required=True)
    p.add_argument("--by", nargs="*", default=[], metavar="E")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("sum", help="direct sum of set systems")
    p.add_argument("--set-system", nargs="+", required=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("normalize", help="canonical form of a binary delta-matroid with the empty set feasible")
    p.add_argument("--set-system", required=True)
    p.add_argument("--verify", action="store_true", help="replay the slides on the set system too")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("classify-bouquet", help="canonical form B_i,j,k of a bouquet")
    p.add_argument("--bouquet", required=True)
    p.set_defaults(func=cmd_classify_bouquet)

    p = sub.add_parser("dmatroid", help="delta-matroid of a bouquet (or disjoint union)")
    p.add_argument("--bouquet", nargs="+", required=True)
    p.set_defaults(func=cmd_dmatroid)

    p = sub.add_parser("represent", help="GF(2) matrix representing a twist of the set system")
    p.add_argument("--set-system", required=True)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("interlace", help="interlacement matrix of a bouquet")
    p.add_argument("--bouquet", required=True)
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("ribbon-slide", help="slide the edge end at a rotation position over a neighbour")
    p.add_argument("--bouquet", required=True)
    p.add_argument("--end", type=int, required=True, help="0-based position in the rotation as written")
    p.add_argument("--over", required=True, metavar="B")
    p.set_defaults(func=cmd_ribbon_slide)

    p = sub.add_parser("verify", help="exhaustive theorem sweep")
    p.add_argument("--theorem", required=True, choices=sorted(SWEEPS))
    p.add_argument("--max-n", type=int, default=None, help="largest ground set / edge count (default 4; 3 for conjecture)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="search the slide orbit for a form D_i,j,k,l")
    p.add_argument("--set-system", required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    p.set_defaults(func=cmd_conjecture)

    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, _UsageError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except DeltaSlideError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
