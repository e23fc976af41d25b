"""Script renderer: per-track processing, timeline placement and mixdown."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

from ..lang import Diagnostic, ScriptAST, Track, errors, validate
from .biquad import apply_high_pass, apply_low_pass, apply_peak_filter
from .buffer import AudioBuffer
from .dynamics import apply_compressor
from .loudness import apply_volume
from .placement import place_event
from .resample import resample
from .reverb import apply_reverb
from .wavio import read_wav


class ClippingWarning(UserWarning):
    pass


class ScriptValidationError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


class AssetSource(Protocol):
    def __contains__(self, name: object) -> bool: ...

    def asset_path(self, name: str) -> Path: ...


@dataclass(frozen=True)
class RenderSession:
    sample_rate: int = 48000
    length_s: float | None = None  # None: end of the longest track

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")
        if self.length_s is not None and self.length_s <= 0:
            raise ValueError("explicit length must be > 0")


_PROCESSORS = {
    "Volume": apply_volume,
    "Compressor": apply_compressor,
    "Reverb": apply_reverb,
    "PeakFilter": apply_peak_filter,
    "LowPassFilter": apply_low_pass,
    "HighPassFilter": apply_high_pass,
}


def render_track(track: Track, asset: AudioBuffer, sample_rate: int) -> AudioBuffer:
    buf = resample(asset, sample_rate)
    start, stop = None, None
    for op in track.chain:
        if op.method == "StartAt":
            start = op
        elif op.method == "StopAt":
            stop = op
        else:
            buf = _PROCESSORS[op.method](buf, *op.values)
    return place_event(
        buf,
        start_at=start.values[0] if start else 0.0,
        stop_at=stop.values[0] if stop else None,
        fade_out=stop.param("fade_out_duration") if stop else None,
    )


def mixdown(tracks: list[AudioBuffer], sample_rate: int, length_s: float | None = None) -> AudioBuffer:
    """Sum tracks sample-wise in the given order; no normalisation or clipping."""
    channels = max((t.channels for t in tracks), default=1)
    if length_s is None:
        frames = max((t.frames for t in tracks), default=0)
    else:
        frames = round(length_s * sample_rate)
    master = np.zeros((channels, frames))
    for t in tracks:
        t = t.to_channels(channels)
        n = min(frames, t.frames)
        master[:, :n] += t.samples[:, :n]
    out = AudioBuffer(master, sample_rate)
    if out.peak() > 1.0:
        warnings.warn(f"master peak {out.peak():.3f} exceeds full scale", ClippingWarning, stacklevel=2)
    return out


def render(ast: ScriptAST, catalog: AssetSource, session: RenderSession = RenderSession()) -> AudioBuffer:
    """Render a validated script against the assets in ``catalog``."""
    problems = errors(validate(ast, catalog, session.sample_rate))
    if problems:
        raise ScriptValidationError(problems)
    cache: dict[str, AudioBuffer] = {}
    rendered = []
    for track in ast.tracks:
        if track.asset_ref not in cache:
            cache[track.asset_ref] = read_wav(catalog.asset_path(track.asset_ref))
        rendered.append(render_track(track, cache[track.asset_ref], session.sample_rate))
    return mixdown(rendered, session.sample_rate, session.length_s)
