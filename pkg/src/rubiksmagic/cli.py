"""Command line front end.

Without arguments it lists every canonical sequence of 8 tiles::

    SEQ f=<flaps> area=<cells> Dc=<int> symcount=<int> assemblages=<int> deltaiszero=<int>
    Found <N> sequences

``-c SEQ`` prints the line for SEQ followed by one line per assemblage with
vanishing metric invariant.  A bare positional SEQ prints the same block for
SEQ and then for its canonical representative.  ``--lk``, ``--table`` and
``--export`` add the linking number and verdicts, which the original tool
did not compute.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields, replace
from fractions import Fraction

from rubiksmagic.classify import Verdict, classify, export_records, table
from rubiksmagic.linking import EmbeddingParams
from rubiksmagic.sequence import (
    MAX_TILES,
    MIN_TILES,
    Sequence,
    SequenceError,
    canonical_representative,
    enumerate_canonical,
    parse_sequence,
)


class UsageError(Exception):
    pass


def _tile_count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n % 2 or not MIN_TILES <= n <= MAX_TILES:
        raise argparse.ArgumentTypeError(
            f"tile count must be even and between {MIN_TILES} and {MAX_TILES}, got {n}"
        )
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rubiksmagic",
        description="Classify planar face-up configurations of the Rubik's Magic puzzle.",
    )
    p.add_argument("-n", type=_tile_count, default=8, metavar="N", help="number of tiles (default 8)")
    p.add_argument("-c", metavar="SEQ", dest="check", help="analyze SEQ as given")
    p.add_argument("sequence", nargs="?", help="analyze SEQ and its canonical representative")
    p.add_argument("--table", action="store_true", help="print the summary table by number of flaps, with L verdicts up to 12 tiles")
    p.add_argument("--lk", action="store_true", help="also compute the linking number L and verdicts")
    p.add_argument("--export", metavar="PATH", help="write one JSON record per sequence to PATH")
    p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="K=V",
        help="embedding parameter override, e.g. advance=1/16 or tilt=1/500,1/300",
    )
    return p


def parse_params(items: list[str]) -> EmbeddingParams:
    params = EmbeddingParams()
    names = {f.name for f in fields(EmbeddingParams)}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or key not in names:
            raise UsageError(f"bad --param {item!r}; known keys: {', '.join(sorted(names))}")
        try:
            if key == "tilt":
                tx, ty = value.split(",")
                parsed = (Fraction(tx), Fraction(ty))
            elif key == "retries":
                parsed = int(value)
            else:
                parsed = Fraction(value)
        except ValueError:
            raise UsageError(f"bad value in --param {item!r}") from None
        params = replace(params, **{key: parsed})
    try:
        params.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return params


def sequence_line(rec) -> str:
    return (
        f"{rec.sequence} f={rec.flap_count} area={rec.area} Dc={rec.delta_c} "
        f"symcount={rec.symcount} assemblages={rec.assemblage_count} "
        f"deltaiszero={len(rec.delta_zero)}"
    )


def assemblage_line(arec, with_links: bool) -> str:
    line = f" Assemblage with delta = 0: {arec.assemblage}"
    if with_links and arec.link is not None:
        lk = arec.link
        line += (
            f" [L={lk.l} Lt={lk.l_t} writhe={lk.writhe} "
            f"selfcrossings={lk.self_crossings} verdict={arec.verdict.value}]"
        )
    return line


def _block(seq: Sequence, args, params, out) -> list:
    rec = classify(seq, params, with_links=args.lk)
    print(sequence_line(rec), file=out)
    for arec in rec.delta_zero:
        print(assemblage_line(arec, args.lk), file=out)
    return [rec]


def _read_sequence(text: str) -> Sequence:
    try:
        return parse_sequence(text)
    except SequenceError as exc:
        raise UsageError(str(exc)) from None


def run(args, out) -> int:
    params = parse_params(args.param)
    records = []
    if args.check and args.sequence:
        raise UsageError("give either -c SEQ or a positional SEQ, not both")
    if args.check:
        records += _block(_read_sequence(args.check), args, params, out)
    elif args.sequence:
        seq = _read_sequence(args.sequence)
        records += _block(seq, args, params, out)
        canon, _ = canonical_representative(seq)
        print(f"Canonical representative: {canon}", file=out)
        records += _block(canon, args, params, out)
    elif args.table:
        tb = table(args.n, params)
        print(tb.format(), file=out)
        records = tb.records
    else:
        seqs = enumerate_canonical(args.n)
        for seq in seqs:
            rec = classify(seq, params, with_links=args.lk)
            line = sequence_line(rec)
            if args.lk:
                bad = sum(1 for v in rec.verdicts if v is Verdict.LINKING_NONZERO)
                line += f" [lnonzero={bad}]"
            print(line, file=out)
            records.append(rec)
        print(f"Found {len(seqs)} sequences", file=out)
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fh:
            fh.write(export_records(records))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args, sys.stdout)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
