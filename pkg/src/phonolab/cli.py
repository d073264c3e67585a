"""Command-line front door; verbs mirror the HTTP API one-to-one."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .audio import CODEC_IMA_ADPCM, CODEC_PCM16, read_wav, write_wav
from .config import AppConfig, load_config
from .errors import AppError, InputOutOfRange
from .fcl import parse_fcl
from .markers import detect_markers
from .segmenter import segment_stream
from .store import (
    DataStore,
    cohort_cells_doc,
    cohort_csv,
    session_doc,
    suggestion_doc,
)
from .therapy import suggest


def _emit(payload, out_path: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)


def _open_store(cfg: AppConfig) -> DataStore:
    return DataStore.open(cfg.store_dir, segmenter=cfg.segmenter,
                          learning=cfg.learning)


def cmd_decode(args, _cfg):
    pcm = read_wav(Path(args.infile).read_bytes())
    Path(args.outfile).write_bytes(write_wav(pcm, CODEC_PCM16))
    return 0


def cmd_encode(args, _cfg):
    pcm = read_wav(Path(args.infile).read_bytes())
    Path(args.outfile).write_bytes(
        write_wav(pcm, CODEC_IMA_ADPCM, samples_per_block=args.samples_per_block))
    return 0


def cmd_markers(args, _cfg):
    pcm = read_wav(Path(args.infile).read_bytes())
    events = detect_markers(pcm)
    _emit([
        {"kind": e.kind.value, "position": e.position,
         "confidence": e.confidence}
        for e in events
    ], args.output)
    return 0


def cmd_segment(args, cfg):
    pcm = read_wav(Path(args.infile).read_bytes())
    events = detect_markers(pcm)
    segments = segment_stream(pcm, events, cfg.segmenter)
    _emit({
        "markers": [
            {"kind": e.kind.value, "position": e.position,
             "confidence": e.confidence}
            for e in events
        ],
        "segments": [
            {"id": s.id, "start": s.start, "end": s.end} for s in segments
        ],
    }, args.output)
    return 0


def cmd_infer(args, _cfg):
    system = parse_fcl(Path(args.kb).read_text("utf-8"))
    inputs = {}
    for pair in args.inputs:
        if "=" not in pair:
            raise InputOutOfRange(f"expected name=value, got {pair!r}")
        name, _, value = pair.partition("=")
        inputs[name] = float(value)
    from .fcl import infer
    outputs, trace = infer(system, inputs)
    _emit({"outputs": outputs, "trace": trace.to_dict()}, args.output)
    return 0


def cmd_suggest(args, cfg):
    store = _open_store(cfg)
    if args.child:
        record = store.suggestion_for_child(
            args.child, args.severity, args.progress)
        store.save()
        _emit(suggestion_doc(record), args.output)
    else:
        if args.severity is None or args.progress is None:
            raise InputOutOfRange(
                "without --child, both --severity and --progress are required")
        suggestion = suggest(store.kb_system(), args.severity, args.progress)
        _emit({
            "difficulty": suggestion.difficulty,
            "dosage": suggestion.dosage,
            "trace": suggestion.trace.to_dict(),
        }, args.output)
    return 0


def cmd_ingest(args, cfg):
    store = _open_store(cfg)
    session = store.ingest_session(
        args.child, Path(args.infile).read_bytes(), args.phase)
    store.save()
    _emit(session_doc(session), args.output)
    return 0


def cmd_report(args, cfg):
    store = _open_store(cfg)
    cells = store.cohort_report()
    if args.format == "csv":
        data = cohort_csv(cells)
        if args.output:
            Path(args.output).write_bytes(data)
        else:
            sys.stdout.write(data.decode("utf-8"))
    else:
        _emit({"cells": cohort_cells_doc(cells)}, args.output)
    return 0


def cmd_serve(args, cfg):
    import uvicorn

    from .service import create_app

    store = _open_store(cfg)
    host = args.host or cfg.host
    port = args.port or cfg.port
    uvicorn.run(create_app(store), host=host, port=port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phonolab",
        description="Therapy-session audio processing and suggestion toolkit",
    )
    parser.add_argument("--config", help="path to a JSON config file "
                        "(or set PHONOLAB_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decode", help="any supported WAV -> PCM16 WAV")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("encode", help="any supported WAV -> IMA-ADPCM WAV")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--samples-per-block", type=int, default=505)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("markers", help="detect START/END tones")
    p.add_argument("infile")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_markers)

    p = sub.add_parser("segment", help="detect markers and extract segments")
    p.add_argument("infile")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("infer", help="run a knowledge base on given inputs")
    p.add_argument("--kb", required=True)
    p.add_argument("inputs", nargs="+", metavar="name=value")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("suggest", help="compute a therapy suggestion")
    p.add_argument("--child")
    p.add_argument("--severity", type=float)
    p.add_argument("--progress", type=float)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("ingest", help="store a session recording")
    p.add_argument("--child", required=True)
    p.add_argument("--phase", required=True,
                   choices=["pre_test", "therapy", "post_test"])
    p.add_argument("infile")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("report", help="cohort progress report")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except AppError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
