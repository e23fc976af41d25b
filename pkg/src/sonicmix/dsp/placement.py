from __future__ import annotations

import numpy as np

from .buffer import AudioBuffer

DEFAULT_FADE_OUT = 0.01


def place_event(
    buf: AudioBuffer,
    start_at: float = 0.0,
    stop_at: float | None = None,
    fade_out: float | None = None,
) -> AudioBuffer:
    """Position an event on the session timeline.

    ``stop_at`` is absolute timeline time; the fade starts there and the
    signal is cut at ``stop_at + fade_out``.
    """
    if start_at < 0:
        raise ValueError("start_at must be >= 0")
    if stop_at is not None and stop_at <= start_at:
        raise ValueError(f"stop_at ({stop_at:g}) must be after start_at ({start_at:g})")
    sr = buf.sample_rate
    lead = round(start_at * sr)
    out = np.concatenate([np.zeros((buf.channels, lead)), buf.samples], axis=1)
    if stop_at is None:
        return buf.with_samples(out)

    fade = DEFAULT_FADE_OUT if fade_out is None else fade_out
    end = round((stop_at + fade) * sr)
    out = out[:, :end]
    n = np.arange(out.shape[1]) / sr
    if fade > 0:
        gain = np.clip(1.0 - (n - stop_at) / fade, 0.0, 1.0)
    else:
        gain = (n < stop_at).astype(np.float64)
    return buf.with_samples(out * gain)
