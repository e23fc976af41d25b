from __future__ import annotations

import math

import numpy as np
from scipy.signal import firwin, resample_poly

from .buffer import AudioBuffer

TAPS_PER_PHASE = 32
KAISER_BETA = 8.6


def resample(buf: AudioBuffer, target_rate: int) -> AudioBuffer:
    """Polyphase windowed-sinc rate conversion (Kaiser, 32 taps per phase)."""
    if target_rate <= 0:
        raise ValueError("target_rate must be positive")
    if target_rate == buf.sample_rate:
        return buf
    g = math.gcd(buf.sample_rate, target_rate)
    up, down = target_rate // g, buf.sample_rate // g
    # anti-alias cutoff at the lower of the two Nyquist rates, relative to the upsampled rate
    cutoff = 0.95 / max(up, down)
    # odd length keeps the delay an integer number of upsampled samples;
    # resample_poly applies the gain of ``up`` itself
    h = firwin(TAPS_PER_PHASE * up + 1, cutoff, window=("kaiser", KAISER_BETA))
    y = resample_poly(buf.samples, up, down, axis=1, window=h)
    return AudioBuffer(y, target_rate)
