"""RBJ cookbook biquads, applied with direct-form filtering per channel."""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import lfilter

from .buffer import AudioBuffer

BUTTERWORTH_Q = 1 / math.sqrt(2)


def _normalize(b, a):
    a0 = a[0]
    return np.array(b) / a0, np.array(a) / a0


def _check_freq(frequency: float, sample_rate: int) -> None:
    if not 0 < frequency < sample_rate / 2:
        raise ValueError(f"frequency {frequency:g} Hz outside (0, {sample_rate / 2:g}) for rate {sample_rate}")


def peaking_coeffs(frequency: float, q: float, gain_db: float, sample_rate: int):
    _check_freq(frequency, sample_rate)
    A = 10 ** (gain_db / 40)
    w0 = 2 * math.pi * frequency / sample_rate
    alpha = math.sin(w0) / (2 * q)
    cw = math.cos(w0)
    b = [1 + alpha * A, -2 * cw, 1 - alpha * A]
    a = [1 + alpha / A, -2 * cw, 1 - alpha / A]
    return _normalize(b, a)


def lowpass_coeffs(frequency: float, sample_rate: int, q: float = BUTTERWORTH_Q):
    _check_freq(frequency, sample_rate)
    w0 = 2 * math.pi * frequency / sample_rate
    alpha = math.sin(w0) / (2 * q)
    cw = math.cos(w0)
    b = [(1 - cw) / 2, 1 - cw, (1 - cw) / 2]
    a = [1 + alpha, -2 * cw, 1 - alpha]
    return _normalize(b, a)


def highpass_coeffs(frequency: float, sample_rate: int, q: float = BUTTERWORTH_Q):
    _check_freq(frequency, sample_rate)
    w0 = 2 * math.pi * frequency / sample_rate
    alpha = math.sin(w0) / (2 * q)
    cw = math.cos(w0)
    b = [(1 + cw) / 2, -(1 + cw), (1 + cw) / 2]
    a = [1 + alpha, -2 * cw, 1 - alpha]
    return _normalize(b, a)


def magnitude_db(b, a, frequency: float, sample_rate: int) -> float:
    """Analytic |H(e^jw)| in dB at ``frequency``."""
    z = np.exp(-1j * 2 * math.pi * frequency / sample_rate)
    h = (b[0] + b[1] * z + b[2] * z * z) / (a[0] + a[1] * z + a[2] * z * z)
    return float(20 * np.log10(abs(h)))


def apply_biquad(buf: AudioBuffer, b, a) -> AudioBuffer:
    return buf.with_samples(lfilter(b, a, buf.samples, axis=1))


def apply_peak_filter(buf: AudioBuffer, frequency: float, q_factor: float, gain: float) -> AudioBuffer:
    b, a = peaking_coeffs(frequency, q_factor, gain, buf.sample_rate)
    if gain == 0:
        return buf.with_samples(buf.samples.copy())
    return apply_biquad(buf, b, a)


def apply_low_pass(buf: AudioBuffer, frequency: float) -> AudioBuffer:
    return apply_biquad(buf, *lowpass_coeffs(frequency, buf.sample_rate))


def apply_high_pass(buf: AudioBuffer, frequency: float) -> AudioBuffer:
    return apply_biquad(buf, *highpass_coeffs(frequency, buf.sample_rate))
