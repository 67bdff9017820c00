"""Command-line interface: embed, extract, metrics, compare, capacity.

Exit codes:
    0  success
    1  usage error
    2  payload exceeds carrier capacity
    3  key or message contains the terminator byte 0x00
    4  I/O, image format or dimension mismatch
    5  key mismatch ("Key is not matching")
    6  missing terminator / not a stego carrier
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import baseline, codec, harness
from .errors import (
    CapacityExceededError,
    DeclaredLengthError,
    DimensionMismatchError,
    ImageFormatError,
    KeyMismatchError,
    MissingTerminatorError,
    StegoError,
    TerminatorInPayloadError,
)
from .image import read_image_file, write_image_file
from .metrics import fidelity_report, format_psnr

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_INVALID_PAYLOAD = 3
EXIT_IO = 4
EXIT_KEY_MISMATCH = 5
EXIT_NOT_STEGO = 6

_EXIT_CODES = [
    (CapacityExceededError, EXIT_CAPACITY),
    (TerminatorInPayloadError, EXIT_INVALID_PAYLOAD),
    (KeyMismatchError, EXIT_KEY_MISMATCH),
    (MissingTerminatorError, EXIT_NOT_STEGO),
    (DeclaredLengthError, EXIT_NOT_STEGO),
    (ImageFormatError, EXIT_IO),
    (DimensionMismatchError, EXIT_IO),
    (OSError, EXIT_IO),
    (StegoError, EXIT_IO),
]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for capacity errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_scheme(args) -> str:
    scheme = args.scheme
    if scheme == "lsb":
        scheme = f"lsb{args.k}"
    return harness.check_scheme(scheme)


def _lengths(tokens) -> list[int]:
    return [int(t) for tok in tokens for t in tok.replace(",", " ").split()]


def _message(args) -> bytes:
    if args.message is not None:
        return args.message.encode("utf-8")
    if args.message_file is not None:
        return Path(args.message_file).read_bytes()
    if args.random_len is not None:
        return harness.random_payload(args.random_len, args.seed)
    return b""


def _emit(pairs, stream=None):
    stream = stream or sys.stdout
    for k, v in pairs:
        stream.write(f"{k}={v}\n")


def _report_pairs(rep):
    return [
        ("mse", f"{rep.mse:.6f}"),
        ("rmse", f"{rep.rmse:.6f}"),
        ("psnr_db", format_psnr(rep.psnr_db)),
        ("changed_r", rep.changed_r),
        ("changed_g", rep.changed_g),
        ("changed_b", rep.changed_b),
    ]


def cmd_embed(args) -> int:
    scheme = _resolve_scheme(args)
    cover = read_image_file(args.cover)
    key = args.key.encode("utf-8")
    msg = _message(args)
    stego = harness.embed_with(scheme, cover, msg, key)
    write_image_file(stego, args.out, args.format)
    cap = harness.scheme_capacity(scheme, cover, key)
    pairs = [("scheme", scheme), ("payload_len", len(msg)), ("capacity", cap)]
    if scheme == harness.FIRST_COMPONENT:
        pairs.append(("pixels_used", len(key) + len(msg) + 2))
    _emit(pairs + _report_pairs(fidelity_report(cover, stego)))
    return EXIT_OK


def cmd_extract(args) -> int:
    scheme = _resolve_scheme(args)
    stego = read_image_file(args.stego)
    if scheme == harness.FIRST_COMPONENT:
        msg = codec.extract(stego, args.key.encode("utf-8"))
    else:
        msg = baseline.lsb_extract(stego, harness.lsb_config(scheme))
    if args.out:
        Path(args.out).write_bytes(msg)
    else:
        sys.stdout.flush()
        sys.stdout.buffer.write(msg)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_metrics(args) -> int:
    rep = fidelity_report(read_image_file(args.cover), read_image_file(args.stego))
    pairs = _report_pairs(rep)
    _emit(pairs)
    if args.csv:
        header = ",".join(k for k, _ in pairs)
        Path(args.csv).write_text(header + "\n" + ",".join(str(v) for _, v in pairs) + "\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    cover = read_image_file(args.cover)
    rows = harness.compare(
        cover,
        _lengths(args.random_len),
        args.scheme or harness.SCHEMES,
        seed=args.seed,
        trials=args.trials,
        key=args.key.encode("utf-8"),
        workers=args.workers,
    )
    sys.stdout.write(harness.to_markdown(rows))
    if any(r.scheme == harness.FIRST_COMPONENT for r in rows):
        sys.stdout.write(harness.reference_note(rows))
    if args.csv:
        Path(args.csv).write_text(harness.to_csv(rows))
    return EXIT_OK


def cmd_capacity(args) -> int:
    cover = read_image_file(args.cover)
    key = args.key.encode("utf-8")
    _emit([(s, harness.scheme_capacity(s, cover, key)) for s in harness.SCHEMES])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bluestego", description="Blue-channel image steganography with an LSB baseline.")
    sub = p.add_subparsers(dest="command", required=True)
    scheme_choices = list(harness.SCHEMES) + ["lsb"]

    def add_scheme(sp):
        sp.add_argument("--scheme", choices=scheme_choices, default=harness.FIRST_COMPONENT)
        sp.add_argument("--k", type=int, choices=(1, 2, 3), default=1, help="bits per channel for --scheme lsb")

    e = sub.add_parser("embed", help="hide a message in a cover image")
    e.add_argument("--cover", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--key", default="")
    src = e.add_mutually_exclusive_group()
    src.add_argument("--message", help="inline text, UTF-8 encoded")
    src.add_argument("--message-file", help="raw bytes read from this file")
    src.add_argument("--random-len", type=int, help="seeded random payload of this many bytes")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--format", choices=("ppm", "png"))
    add_scheme(e)
    e.set_defaults(func=cmd_embed)

    x = sub.add_parser("extract", help="recover a hidden message")
    x.add_argument("--stego", required=True)
    x.add_argument("--key", default="")
    x.add_argument("--out", help="write the payload here instead of standard output")
    add_scheme(x)
    x.set_defaults(func=cmd_extract)

    m = sub.add_parser("metrics", help="MSE / RMSE / PSNR between two images")
    m.add_argument("--cover", required=True)
    m.add_argument("--stego", required=True)
    m.add_argument("--csv")
    m.set_defaults(func=cmd_metrics)

    c = sub.add_parser("compare", help="seeded PSNR table across schemes and payload lengths")
    c.add_argument("--cover", required=True)
    c.add_argument("--random-len", nargs="+", required=True, metavar="N",
                   help="payload lengths (space or comma separated)")
    c.add_argument("--scheme", nargs="+", choices=harness.SCHEMES)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=1)
    c.add_argument("--key", default="")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--csv")
    c.set_defaults(func=cmd_compare)

    k = sub.add_parser("capacity", help="payload capacity of a cover for every scheme")
    k.add_argument("--cover", required=True)
    k.add_argument("--key", default="")
    k.set_defaults(func=cmd_capacity)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyMismatchError as exc:
        print(exc, file=sys.stderr)
        return EXIT_KEY_MISMATCH
    except (StegoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return next(code for cls, code in _EXIT_CODES if isinstance(exc, cls))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
