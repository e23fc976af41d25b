"""Semantic checks run before rendering."""

from __future__ import annotations

from collections.abc import Container

from .ast import METHODS, Diagnostic, EffectOp, ScriptAST, Span


def _ranges(sample_rate: int) -> dict[tuple[str, str], tuple[float, float, bool, bool, str]]:
    # (lo, hi, lo_inclusive, hi_inclusive, human text)
    nyq = sample_rate / 2
    inf = float("inf")
    freq = (0.0, nyq, False, False, f"frequency must be between 0 and {nyq:g} Hz (exclusive)")
    return {
        ("Volume", "targetLUFS"): (-70.0, 0.0, True, True, "targetLUFS must be in [-70, 0]"),
        ("Compressor", "threshold"): (-60.0, 0.0, True, True, "threshold must be in [-60, 0]"),
        ("Compressor", "ratio"): (1.0, inf, True, False, "ratio must be ≥ 1"),
        ("Compressor", "attack_ms"): (0.1, inf, True, False, "attack_ms must be ≥ 0.1"),
        ("Compressor", "release_ms"): (0.1, inf, True, False, "release_ms must be ≥ 0.1"),
        ("Reverb", "room_size"): (0.0, 1.0, True, True, "room_size must be in [0, 1]"),
        ("Reverb", "dry_wet"): (0.0, 1.0, True, True, "dry_wet must be in [0, 1]"),
        ("PeakFilter", "frequency"): freq,
        ("PeakFilter", "q_factor"): (0.1, 18.0, False, True, "q_factor must be in (0.1, 18]"),
        ("PeakFilter", "gain"): (-24.0, 24.0, True, True, "gain must be in [-24, 24] dB"),
        ("LowPassFilter", "frequency"): freq,
        ("HighPassFilter", "frequency"): freq,
        ("StartAt", "at"): (0.0, inf, True, False, "StartAt time must be ≥ 0"),
        ("StopAt", "at"): (0.0, inf, False, False, "StopAt time must be > 0"),
        ("StopAt", "fade_out_duration"): (0.0, inf, True, False, "fade_out_duration must be ≥ 0"),
    }


def _in_range(v: float, lo: float, hi: float, lo_inc: bool, hi_inc: bool) -> bool:
    above = v >= lo if lo_inc else v > lo
    below = v <= hi if hi_inc else v < hi
    return above and below


def _pos(span: Span | None) -> tuple[int, int]:
    return (span.line, span.column) if span else (1, 1)


def validate(ast: ScriptAST, catalog: Container[str], sample_rate: int = 48000) -> list[Diagnostic]:
    """Return diagnostics for unresolved assets, out-of-range args and repeated placements.

    ``catalog`` is anything supporting ``asset_ref in catalog``.
    """
    ranges = _ranges(sample_rate)
    out: list[Diagnostic] = []
    for track in ast.tracks:
        if track.asset_ref not in catalog:
            out.append(Diagnostic("error", f"unknown asset {track.asset_ref!r}", *_pos(track.span)))
        for op in track.chain:
            for pname, arg in zip(METHODS[op.method], op.args):
                lo, hi, lo_inc, hi_inc, text = ranges[(op.method, pname)]
                if not _in_range(arg.value, lo, hi, lo_inc, hi_inc):
                    out.append(Diagnostic("error", f"{op.method}: {text}", *_pos(arg.span or op.span)))
        starts, stops = track.ops("StartAt"), track.ops("StopAt")
        for ops in (starts, stops):
            for extra in ops[:-1]:
                out.append(Diagnostic(
                    "warning",
                    f"repeated {extra.method} on track {track.asset_ref!r}; last wins",
                    *_pos(extra.span),
                ))
        if starts and stops:
            start, stop = starts[-1].values[0], stops[-1].values[0]
            if stop <= start:
                out.append(Diagnostic("error", "StopAt time must be after StartAt time", *_pos(stops[-1].span)))
    return out


def errors(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diagnostics if d.is_error]


def last_op(ops: tuple[EffectOp, ...], method: str) -> EffectOp | None:
    found = None
    for op in ops:
        if op.method == method:
            found = op
    return found
