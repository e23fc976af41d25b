"""Command-line entry point: ``sonicmix {ingest,query,inspect,validate,render,chat}``.

Exit codes: 0 ok, 1 I/O or configuration error, 2 script errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from dataclasses import asdict
from pathlib import Path

from .catalog import Catalog, CatalogError, ingest
from .dsp import AudioFileError, RenderSession, ScriptValidationError, render, write_wav
from .lang import ScriptSyntaxError, errors, parse_script, validate
from .metadata import SilentAudioError, SoundObject, extract_metadata
from .orchestrator import GeneratorError, MockGenerator, OrchestratorError, RemoteGenerator, SessionState, step

EXIT_OK, EXIT_IO, EXIT_SCRIPT = 0, 1, 2
RATES = (44100, 48000, 96000)


class _Fail(Exception):
    def __init__(self, message: str, code: int = EXIT_IO):
        super().__init__(message)
        self.code = code


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _summary(obj: SoundObject) -> str:
    return (
        f"{obj.name:<28} {obj.loudness:8.2f} LUFS  onset {obj.onset_ms:8.1f} ms  "
        f"pitch {obj.pitch_text:>10}  {obj.duration_s:7.3f} s"
    )


def _load_catalog(args) -> Catalog:
    try:
        return Catalog.load(args.catalog)
    except FileNotFoundError:
        raise _Fail(f"catalog not found: {args.catalog} (run `sonicmix ingest DIR` first)")
    except CatalogError as exc:
        raise _Fail(f"{args.catalog}: {exc}")


def _read_script(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"cannot read script: {exc}")
    try:
        return parse_script(text)
    except ScriptSyntaxError as exc:
        for d in exc.diagnostics:
            _err(f"{path}:{d}")
        raise _Fail(f"{path}: {len(exc.diagnostics)} error(s)", EXIT_SCRIPT)


def cmd_ingest(args) -> int:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            catalog = ingest(args.directory)
        except FileNotFoundError as exc:
            raise _Fail(str(exc))
    for w in caught:
        _err(f"warning: {w.message}")
    if not len(catalog):
        _err("warning: empty catalog")
    try:
        catalog.save(args.catalog)
    except OSError as exc:
        raise _Fail(f"cannot write catalog {args.catalog}: {exc}")
    if args.json:
        print(json.dumps([asdict(e) for e in catalog], indent=2))
    else:
        for entry in catalog:
            print(_summary(entry))
    return EXIT_OK


def cmd_query(args) -> int:
    result = _load_catalog(args).query(args.text, args.k)
    if args.json:
        print(json.dumps([{"name": o.name, "score": round(s, 6)} for o, s in result.hits], indent=2))
    else:
        for rank, (obj, score) in enumerate(result.hits, 1):
            print(f"{rank:>2}. {obj.name:<28} {score:.4f}  {obj.description}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    try:
        obj = extract_metadata(args.file)
    except (AudioFileError, SilentAudioError) as exc:
        raise _Fail(str(exc))
    print(json.dumps(asdict(obj), indent=2) if args.json else obj.to_record())
    return EXIT_OK


def cmd_validate(args) -> int:
    ast = _read_script(args.script)
    diags = validate(ast, _load_catalog(args), args.rate)
    for d in diags:
        _err(f"{args.script}:{d}")
    if errors(diags):
        return EXIT_SCRIPT
    print(f"{args.script}: ok ({len(ast.tracks)} track(s))")
    return EXIT_OK


def cmd_render(args) -> int:
    ast = _read_script(args.script)
    catalog = _load_catalog(args)
    diags = validate(ast, catalog, args.rate)
    for d in diags:
        _err(f"{args.script}:{d}")
    if errors(diags):
        return EXIT_SCRIPT
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            audio = render(ast, catalog, RenderSession(args.rate, args.length))
        except (AudioFileError, OSError) as exc:
            raise _Fail(f"render failed: {exc}")
    for w in caught:
        _err(f"warning: {w.message}")
    try:
        write_wav(args.output, audio, args.format)
    except OSError as exc:
        raise _Fail(f"cannot write {args.output}: {exc}")
    print(f"{args.output}: {audio.duration:.3f} s, {audio.channels} ch, {audio.sample_rate} Hz")
    return EXIT_OK


def cmd_chat(args) -> int:
    if args.mock:
        try:
            generator = MockGenerator.from_fixture(args.mock)
        except (OSError, ValueError, KeyError) as exc:
            raise _Fail(f"cannot load mock fixture: {exc}")
    else:
        try:
            generator = RemoteGenerator.from_env()
        except GeneratorError as exc:
            raise _Fail(str(exc))
    catalog = _load_catalog(args)
    out_dir = Path(args.out_dir)
    session = RenderSession(args.rate)
    state = SessionState()
    stream = open(args.prompts, encoding="utf-8") if args.prompts else sys.stdin
    try:
        for line in stream:
            prompt = line.strip()
            if not prompt:
                continue
            if prompt == ":quit":
                break
            try:
                with warnings.catch_warnings(record=True) as caught:
                    warnings.simplefilter("always")
                    state, ast, audio = step(state, prompt, generator, catalog, session)
            except (OrchestratorError, GeneratorError, ScriptValidationError) as exc:
                _err(f"turn {state.turn + 1} failed: {exc}")
                continue
            for w in caught:
                _err(f"warning: {w.message}")
            out_dir.mkdir(parents=True, exist_ok=True)
            wav = out_dir / f"turn_{state.turn}.wav"
            write_wav(wav, audio, args.format)
            decision = next(text for role, text in reversed(state.transcript) if role == "retrieval")
            script = next(text for role, text in reversed(state.transcript) if role == "assistant")
            print(f"## turn {state.turn}: {decision}")
            print(script.rstrip("\n"))
            print(f"-> {wav}")
            sys.stdout.flush()
    finally:
        if stream is not sys.stdin:
            stream.close()
    if state.turn:
        log_text = "".join(f"[{role}]\n{text.rstrip()}\n\n" for role, text in state.transcript)
        (out_dir / "session.log").write_text(log_text, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sonicmix", description="Render sound effects from recorded assets.")
    p.add_argument("--catalog", default="catalog.txt", help="catalog file (default: catalog.txt)")
    p.add_argument("--rate", type=int, choices=RATES, default=48000, help="session sample rate")
    p.add_argument("--format", choices=("pcm24", "float32"), default="pcm24", help="WAV output format")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ingest", help="build a catalog from a directory of WAV files")
    s.add_argument("directory")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("query", help="search the catalog")
    s.add_argument("text")
    s.add_argument("-k", type=int, default=5)
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("inspect", help="print the metadata of one audio file")
    s.add_argument("file")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("validate", help="check a script against the catalog")
    s.add_argument("script")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("render", help="render a script to WAV")
    s.add_argument("script")
    s.add_argument("output")
    s.add_argument("--length", type=float, default=None, help="output length in seconds (default: auto)")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("chat", help="interactive prompt-to-sound session")
    s.add_argument("--mock", metavar="FIXTURE", help="replay a mock generator fixture (no network)")
    s.add_argument("--out-dir", default=".", help="where turn_<n>.wav and session.log go")
    s.add_argument("--prompts", help="read prompts from a file instead of stdin")
    s.set_defaults(func=cmd_chat)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s",
                        stream=sys.stderr)
    try:
        return args.func(args)
    except _Fail as exc:
        _err(f"error: {exc}")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
