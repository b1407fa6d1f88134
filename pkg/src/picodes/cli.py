"""Argument parsing for the `pic` command line tool."""

from __future__ import annotations

import argparse
import sys

from .algebra import GuaranteeViolation, UnsupportedRegimeError, ValidationError
from .channel import CHANNEL_KINDS, ChannelModel
from . import harness


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pic",
        description="Encode, corrupt, and list-decode polynomial ideal codes.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run structural checks on a code spec")
    verify.add_argument("--spec", required=True)
    verify.add_argument("--m", type=int, default=None,
                        help="combined-operator count for the scheme check")
    verify.add_argument("--out", default=None, help="write a JSON report here")

    encode = sub.add_parser("encode", help="encode a message file")
    encode.add_argument("--spec", required=True)
    encode.add_argument("--message", required=True)
    encode.add_argument("--out", default=None)

    corrupt = sub.add_parser("corrupt", help="apply a channel to a codeword file")
    corrupt.add_argument("--spec", required=True)
    corrupt.add_argument("--in", dest="in_path", required=True)
    corrupt.add_argument("--errors", required=True,
                         help="number of symbols to corrupt")
    corrupt.add_argument("--channel", choices=CHANNEL_KINDS,
                         default="random_symbol")
    corrupt.add_argument("--channel-file", default=None,
                         help="positions/symbols JSON for the adversarial channel")
    corrupt.add_argument("--seed", type=int, default=0)
    corrupt.add_argument("--out", default=None)

    decode = sub.add_parser("decode", help="list-decode a received word")
    decode.add_argument("--spec", required=True)
    decode.add_argument("--in", dest="in_path", required=True)
    decode.add_argument("--algorithm", choices=("johnson", "capacity"),
                        required=True)
    decode.add_argument("--m", type=int, default=None,
                        help="combined-operator count (capacity)")
    decode.add_argument("--r", type=int, default=None,
                        help="interpolation multiplicity (johnson)")
    decode.add_argument("--epsilon", type=float, default=None,
                        help="radius slack that picks the multiplicity (johnson)")
    decode.add_argument("--enum-cap", type=int, default=None,
                        help="largest solution-space size to enumerate (capacity)")
    decode.add_argument("--message", default=None,
                        help="original message file, enables the exact_match flag")
    decode.add_argument("--out", default=None)

    sweep = sub.add_parser("sweep", help="success-rate sweep over error counts")
    sweep.add_argument("--spec", required=True)
    sweep.add_argument("--algorithm", choices=("johnson", "capacity"),
                       required=True)
    sweep.add_argument("--errors", required=True, help="range A..B, inclusive")
    sweep.add_argument("--trials", type=int, default=10)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--m", type=int, default=None)
    sweep.add_argument("--r", type=int, default=None)
    sweep.add_argument("--epsilon", type=float, default=None)
    sweep.add_argument("--out", default=None)
    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return harness.cmd_verify(args.spec, m=args.m, out=args.out)
        if args.command == "encode":
            return harness.cmd_encode(args.spec, args.message, out=args.out)
        if args.command == "corrupt":
            counts = harness._parse_error_range(args.errors)
            if len(counts) != 1:
                raise ValidationError("corrupt takes a single error count")
            channel = ChannelModel(args.channel, counts[0], seed=args.seed,
                                   path=args.channel_file)
            return harness.cmd_corrupt(args.spec, args.in_path, channel,
                                       out=args.out)
        if args.command == "decode":
            return harness.cmd_decode(
                args.spec, args.in_path, args.algorithm, m=args.m, r=args.r,
                epsilon=args.epsilon, enum_cap=args.enum_cap,
                message_path=args.message, out=args.out)
        if args.command == "sweep":
            return harness.cmd_sweep(
                args.spec, args.algorithm, args.errors, args.trials, args.seed,
                m=args.m, r=args.r, epsilon=args.epsilon, out=args.out)
        raise ValidationError(f"unknown command {args.command!r}")
    except (ValidationError, UnsupportedRegimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuaranteeViolation as exc:
        print(f"guarantee violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
