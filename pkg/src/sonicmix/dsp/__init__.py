"""Offline DSP engine: the eight Mixer Script methods, resampling and mixdown."""

from .biquad import apply_high_pass, apply_low_pass, apply_peak_filter
from .buffer import AudioBuffer
from .dynamics import apply_compressor
from .loudness import SilentInputWarning, apply_volume, measure_loudness
from .placement import place_event
from .render import ClippingWarning, RenderSession, ScriptValidationError, mixdown, render, render_track
from .resample import resample
from .reverb import apply_reverb
from .wavio import AudioFileError, read_wav, write_wav

__all__ = [
    "AudioBuffer",
    "AudioFileError",
    "ClippingWarning",
    "RenderSession",
    "ScriptValidationError",
    "SilentInputWarning",
    "apply_compressor",
    "apply_high_pass",
    "apply_low_pass",
    "apply_peak_filter",
    "apply_reverb",
    "apply_volume",
    "measure_loudness",
    "mixdown",
    "place_event",
    "read_wav",
    "render",
    "render_track",
    "resample",
    "write_wav",
]
