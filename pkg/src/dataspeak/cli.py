"""Command-line front end: validate specs and compile them to artifacts.

Exit codes are a stable contract: 0 success, 1 spec or data error, 2 I/O or
usage error. Diagnostics go to stderr, artifacts to stdout or --output.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path

from .compiler import compile_schedule
from .data import load_dataset
from .diagnostics import Diagnostic, PipelineError, W_NO_VOICE_MAP, has_errors, warning
from .emitters import VoiceMap, emit_schedule_json, emit_ssml, emit_trace
from .model import DataSourceRef, SpecDocument, parse_spec, validate_spec

EXIT_OK = 0
EXIT_SPEC = 1
EXIT_IO = 2


def _print_diagnostics(diags: list[Diagnostic]) -> None:
    for d in diags:
        print(d, file=sys.stderr)


def _read_spec(path: str) -> str | None:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error E_IO : cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        return None


def _load_spec(path: str) -> tuple[SpecDocument | None, int]:
    raw = _read_spec(path)
    if raw is None:
        return None, EXIT_IO
    result = parse_spec(raw)
    diags = list(result.diagnostics)
    if result.document is not None:
        diags += validate_spec(result.document)
    _print_diagnostics(diags)
    if result.document is None or has_errors(diags):
        return None, EXIT_SPEC
    return result.document, EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    _, status = _load_spec(args.spec)
    return status


def _write_output(text: str, output: str | None) -> int:
    if output is None:
        sys.stdout.write(text)
        return EXIT_OK
    # Temp-then-rename keeps a failed run from leaving a partial artifact.
    target = Path(output)
    try:
        fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name + ".")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except OSError as exc:
        print(f"error E_IO : cannot write {output}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_compile(args: argparse.Namespace) -> int:
    spec, status = _load_spec(args.spec)
    if spec is None:
        return status

    if args.prelude:
        spec = replace(spec, prelude_enabled=True)

    if args.data is not None:
        source = DataSourceRef(url=args.data)
        base_dir = Path.cwd()
    elif spec.data_source is not None:
        source = spec.data_source
        base_dir = Path(args.spec).resolve().parent
    else:
        print("error E_DATA_SOURCE data: spec has no data source and no --data was given", file=sys.stderr)
        return EXIT_SPEC

    warnings: list[Diagnostic] = []
    try:
        ds = load_dataset(source, base_dir=base_dir)
        result = compile_schedule(spec, ds)
        warnings += result.diagnostics
        schedule = result.schedule

        if args.format == "schedule":
            text = emit_schedule_json(schedule)
        elif args.format == "trace":
            text = emit_trace(schedule)
        else:
            if args.voices is not None:
                voices = VoiceMap.load(args.voices)
            else:
                voices = VoiceMap(entries={})
                warnings.append(warning(W_NO_VOICE_MAP, "no voice map given, all IDs use the default voice"))
            text = emit_ssml(schedule, voices, break_ms=args.break_ms, warnings=warnings)
    except PipelineError as exc:
        _print_diagnostics(warnings + [exc.diagnostic])
        return EXIT_SPEC
    except OSError as exc:
        print(f"error E_IO : {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO

    _print_diagnostics(warnings)
    return _write_output(text, args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dataspeak", description="Compile sonification specs to speech schedules.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and validate a spec")
    v.add_argument("spec", help="path to the spec JSON file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("compile", help="compile a spec against its data")
    c.add_argument("spec", help="path to the spec JSON file")
    c.add_argument("--data", help="override the spec's data source with this CSV/JSON file")
    c.add_argument("--format", choices=["schedule", "ssml", "trace"], default="schedule")
    c.add_argument("--output", help="write the artifact here instead of stdout")
    c.add_argument("--voices", help="voice map JSON file (ID to engine voice name)")
    c.add_argument("--prelude", action="store_true", help="prepend the mapping announcement")
    c.add_argument("--break-ms", type=int, default=300, help="SSML break between utterances (0 disables)")
    c.set_defaults(func=cmd_compile)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
