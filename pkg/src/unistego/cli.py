"""Command-line interface: embed, extract, detect, capacity, experiment, report.

Exit codes: 0 ok, 1 watermarked (detect), 2 capacity, 3 I/O or transport,
4 bad arguments or config, 5 no watermark found, 6 corrupt frame.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .core import SchemeId
from .errors import (
    CorruptFrame,
    InsufficientCapacity,
    NoWatermarkFound,
    NonOctetLength,
    PayloadTooLarge,
    UnknownScheme,
)
from .schemes import EmbedOptions, capacity, embed, extract
from .steganalysis import scan
from .whitespace import DEFAULT_WRAP_WIDTH

EXIT_OK = 0
EXIT_WATERMARKED = 1
EXIT_CAPACITY = 2
EXIT_IO = 3
EXIT_USAGE = 4
EXIT_NOT_FOUND = 5
EXIT_CORRUPT = 6

BOM = "\ufeff"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_text(path) -> str:
    """Read UTF-8 without newline translation; a BOM is refused since it is itself zero-width."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CliError(f"{path} is not valid UTF-8: {exc}", EXIT_IO) from None
    if text.startswith(BOM):
        raise CliError(f"{path} starts with a byte order mark", EXIT_IO)
    return text


def write_text(path, text: str) -> None:
    try:
        Path(path).write_bytes(text.encode("utf-8"))
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from None


def _scheme(name: str) -> SchemeId:
    try:
        return SchemeId(name.lower())
    except ValueError:
        raise CliError(f"unknown scheme {name!r}", EXIT_USAGE) from None


def _options(args) -> EmbedOptions:
    if args.wrap_width < 2:
        raise CliError("--wrap-width must be at least 2", EXIT_USAGE)
    return EmbedOptions(timestamp=args.timestamp, wrap_width=args.wrap_width)


def cmd_embed(args) -> int:
    scheme, opts = _scheme(args.scheme), _options(args)
    payload = args.payload if args.payload is not None else read_text(args.payload_file)
    cover = read_text(args.input)
    try:
        stego = embed(scheme, cover, payload, opts)
    except (InsufficientCapacity, PayloadTooLarge) as exc:
        raise CliError(str(exc), EXIT_CAPACITY) from None
    if args.output == "-":
        sys.stdout.buffer.write(stego.text.encode("utf-8"))
    else:
        write_text(args.output, stego.text)
    print(f"embedded {stego.embedded_bits} bits with {scheme.value}", file=sys.stderr)
    return EXIT_OK


def cmd_extract(args) -> int:
    scheme, opts = _scheme(args.scheme), _options(args)
    text = read_text(args.input)
    try:
        payload = extract(scheme, text, opts)
    except NoWatermarkFound as exc:
        raise CliError(str(exc), EXIT_NOT_FOUND) from None
    except (CorruptFrame, NonOctetLength) as exc:
        raise CliError(str(exc), EXIT_CORRUPT) from None
    sys.stdout.write(payload.as_text + "\n")
    return EXIT_OK


def cmd_detect(args) -> int:
    report = scan(read_text(args.input))
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(report.verdict)
        for key, value in report.to_dict()["census"].items():
            print(f"  {key}: {value}")
        for entry in report.to_dict()["attributions"][:3]:
            if entry["score"] > 0:
                print(f"  candidate {entry['scheme']}: {entry['score']}")
    return EXIT_WATERMARKED if report.watermarked else EXIT_OK


def cmd_capacity(args) -> int:
    opts = _options(args)
    cover = read_text(args.input)
    schemes = [_scheme(args.scheme)] if args.scheme else list(SchemeId)
    rows = [capacity(s, cover, opts).to_dict() for s in schemes]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            extra = f" (+{row['filler_bits']} filler)" if row.get("filler_bits") else ""
            print(f"{row['scheme']:<11} {row['max_payload_bits']!s:>9} bits{extra}  [{row['limiting_resource']}]")
    return EXIT_OK


def cmd_experiment(args) -> int:
    from .harness import ConfigError, HttpTransport, MockTransport, TransportError, load_config
    from .harness.runner import aggregate, run_experiment, write_matrices

    try:
        config = load_config(args.config)
    except ConfigError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    if args.parallel is not None:
        if args.parallel < 1:
            raise CliError("--parallel must be >= 1", EXIT_USAGE)
        config.parallelism = args.parallel
    if args.mock:
        try:
            transport = MockTransport.from_file(args.mock)
        except TransportError as exc:
            raise CliError(str(exc), EXIT_IO) from None
    else:
        missing = sorted({p.api_key_env for p in config.models if not os.environ.get(p.api_key_env)})
        if missing:
            raise CliError(f"API key environment variable(s) not set: {', '.join(missing)}", EXIT_IO)
        transport = HttpTransport()
    out = Path(args.out)
    if (out / "records.jsonl").exists():
        raise CliError(f"{out} already holds records; choose a fresh directory", EXIT_USAGE)
    records = run_experiment(config, args.experiment, transport, out)
    write_matrices(aggregate(records), out)
    skipped = sum(r.classification == "skipped" for r in records)
    print(f"{len(records)} records ({skipped} skipped) written to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_report(args) -> int:
    from .harness import MixedExperiments
    from .harness.report import render_table
    from .harness.runner import aggregate, load_records, write_matrices

    path = Path(args.records)
    if not path.exists():
        raise CliError(f"{path} does not exist", EXIT_IO)
    try:
        records = load_records(path)
    except (OSError, ValueError, TypeError) as exc:
        raise CliError(f"cannot load records: {exc}", EXIT_IO) from None
    if not records:
        raise CliError(f"no records in {path}", EXIT_USAGE)
    try:
        matrices = aggregate(records)
    except MixedExperiments as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    if args.out:
        write_matrices(matrices, args.out)
    sys.stdout.write(render_table(records, matrices))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unistego", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def codec_flags(p):
        p.add_argument("--timestamp", type=int, default=None, help="fixed AITSteg header time (unix seconds)")
        p.add_argument("--wrap-width", type=int, default=DEFAULT_WRAP_WIDTH, help="Shiu line width")

    p = sub.add_parser("embed", help="hide a payload in a cover text")
    p.add_argument("scheme")
    p.add_argument("input", help="cover text file (UTF-8)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("-m", "--payload", help="payload text")
    group.add_argument("--payload-file")
    p.add_argument("-o", "--output", default="-", help="output file, - for stdout")
    codec_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a payload")
    p.add_argument("scheme")
    p.add_argument("input")
    codec_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("detect", help="scan a text for invisible watermarks")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("capacity", help="payload capacity of a cover per scheme")
    p.add_argument("input")
    p.add_argument("--scheme")
    p.add_argument("--json", action="store_true")
    codec_flags(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("experiment", help="run an LLM probe experiment")
    p.add_argument("config", help="model/experiment config JSON")
    p.add_argument("--experiment", required=True, choices=["1", "2", "3"])
    p.add_argument("--mock", metavar="FIXTURES", help="replay scripted responses instead of calling endpoints")
    p.add_argument("--out", required=True, help="output directory for records and matrices")
    p.add_argument("--parallel", type=int, default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("report", help="tables and CSV matrices from stored records")
    p.add_argument("records", help="records directory or JSONL file")
    p.add_argument("--out", help="directory for CSV matrices")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"unistego: {exc}", file=sys.stderr)
        return exc.code
    except UnknownScheme as exc:
        print(f"unistego: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
