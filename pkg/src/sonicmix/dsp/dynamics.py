from __future__ import annotations

import math

import numpy as np

from .buffer import AudioBuffer


def peak_envelope(x: np.ndarray, sample_rate: int, attack_ms: float, release_ms: float) -> np.ndarray:
    """Decoupled peak detector: release-limited peak hold, then attack smoothing."""
    att = math.exp(-1000.0 / (attack_ms * sample_rate))
    rel = math.exp(-1000.0 / (release_ms * sample_rate))
    out = np.empty(len(x))
    held = env = 0.0
    for i, v in enumerate(np.abs(x).tolist()):
        held = max(v, rel * held + (1.0 - rel) * v)
        env = att * env + (1.0 - att) * held
        out[i] = env
    return out


def gain_reduction_db(env_db: np.ndarray, threshold: float, ratio: float) -> np.ndarray:
    return np.minimum(0.0, (threshold - env_db) * (1.0 - 1.0 / ratio))


def apply_compressor(
    buf: AudioBuffer, threshold: float, ratio: float, attack_ms: float, release_ms: float
) -> AudioBuffer:
    """Feed-forward hard-knee compressor, linked detector, no makeup gain."""
    if ratio == 1:
        return buf.with_samples(buf.samples.copy())
    detector = np.max(np.abs(buf.samples), axis=0)
    env = peak_envelope(detector, buf.sample_rate, attack_ms, release_ms)
    with np.errstate(divide="ignore"):
        env_db = 20 * np.log10(env)
    gain = 10 ** (gain_reduction_db(env_db, threshold, ratio) / 20)
    return buf.with_samples(buf.samples * gain)
