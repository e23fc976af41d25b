"""Integrated loudness (LUFS) per ITU-R BS.1770-4.

K-weighting is a high shelf followed by a high-pass. The analog
prototypes are re-derived for the buffer's sample rate, which reproduces
the published 48 kHz coefficients exactly.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import lfilter

from .buffer import AudioBuffer

BLOCK_S = 0.4
STEP_S = 0.1  # 75 % overlap
ABSOLUTE_GATE = -70.0
RELATIVE_GATE = -10.0

_SHELF_F0 = 1681.974450955533
_SHELF_GAIN_DB = 3.999843853973347
_SHELF_Q = 0.7071752369554196
_HP_F0 = 38.13547087602444
_HP_Q = 0.5003270373238773


def k_weighting(sample_rate: int):
    """Return ((b_shelf, a_shelf), (b_hp, a_hp)) for ``sample_rate``."""
    K = math.tan(math.pi * _SHELF_F0 / sample_rate)
    Vh = 10 ** (_SHELF_GAIN_DB / 20)
    Vb = Vh ** 0.4996667741545416
    a0 = 1 + K / _SHELF_Q + K * K
    shelf_b = [(Vh + Vb * K / _SHELF_Q + K * K) / a0, 2 * (K * K - Vh) / a0, (Vh - Vb * K / _SHELF_Q + K * K) / a0]
    shelf_a = [1.0, 2 * (K * K - 1) / a0, (1 - K / _SHELF_Q + K * K) / a0]

    K = math.tan(math.pi * _HP_F0 / sample_rate)
    a0 = 1 + K / _HP_Q + K * K
    hp_b = [1.0, -2.0, 1.0]
    hp_a = [1.0, 2 * (K * K - 1) / a0, (1 - K / _HP_Q + K * K) / a0]
    return (shelf_b, shelf_a), (hp_b, hp_a)


def _power_to_lufs(power: float) -> float:
    return -0.691 + 10 * math.log10(power)


def measure_loudness(buf: AudioBuffer) -> float | None:
    """Integrated loudness in LUFS, or ``None`` for silence.

    Inputs shorter than one 400 ms block are measured ungated over their
    full length.
    """
    (sb, sa), (hb, ha) = k_weighting(buf.sample_rate)
    y = lfilter(hb, ha, lfilter(sb, sa, buf.samples, axis=1), axis=1)
    # channel weights are 1.0 for mono, left and right
    block = round(BLOCK_S * buf.sample_rate)
    step = round(STEP_S * buf.sample_rate)
    n = buf.frames
    if n == 0:
        return None
    if n < block:
        power = float(np.sum(np.mean(y * y, axis=1)))
        return _power_to_lufs(power) if power > 0 else None

    sq = np.concatenate([np.zeros((y.shape[0], 1)), np.cumsum(y * y, axis=1)], axis=1)
    starts = np.arange(0, n - block + 1, step)
    z = (sq[:, starts + block] - sq[:, starts]) / block
    block_power = z.sum(axis=0)
    with np.errstate(divide="ignore"):
        block_lufs = -0.691 + 10 * np.log10(block_power)
    gated = block_lufs > ABSOLUTE_GATE
    if not gated.any():
        return None
    rel = _power_to_lufs(float(block_power[gated].mean())) + RELATIVE_GATE
    gated &= block_lufs > rel
    return _power_to_lufs(float(block_power[gated].mean()))


def apply_volume(buf: AudioBuffer, target_lufs: float) -> AudioBuffer:
    """Static gain so that the integrated loudness lands on ``target_lufs``."""
    import warnings

    measured = measure_loudness(buf)
    if measured is None:
        warnings.warn("Volume: input is silent; gain left unchanged", SilentInputWarning, stacklevel=2)
        return buf.with_samples(buf.samples.copy())
    gain = 10 ** ((target_lufs - measured) / 20)
    return buf.with_samples(buf.samples * gain)


class SilentInputWarning(UserWarning):
    pass
