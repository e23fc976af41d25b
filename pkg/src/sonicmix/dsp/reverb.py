"""Freeverb: eight damped feedback combs in parallel into four all-passes.

Each comb and all-pass is a fixed linear recursion, so both are run as
IIR filters (``lfilter``) with carried state instead of per-sample loops.
The tail is rendered in blocks until it falls below -90 dBFS.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .buffer import AudioBuffer

COMB_TUNING = (1116, 1188, 1277, 1356, 1422, 1491, 1557, 1617)
ALLPASS_TUNING = (556, 441, 341, 225)
STEREO_SPREAD = 23
TUNING_RATE = 44100
FIXED_GAIN = 0.015
SCALE_WET = 3.0
DAMPING = 0.5 * 0.4
ALLPASS_FEEDBACK = 0.5
TAIL_FLOOR_DB = -90.0


def comb_feedback(room_size: float) -> float:
    return 0.7 + 0.28 * room_size


def _scaled(delay: int, sample_rate: int) -> int:
    return max(1, round(delay * sample_rate / TUNING_RATE))


def _comb_filter(delay: int, feedback: float, damp: float):
    # buf[n] = x[n] + g * lp[n],  lp[n] = (1-d) y[n] + d lp[n-1],  y[n] = buf[n-D]
    b = np.zeros(delay + 2)
    b[delay], b[delay + 1] = 1.0, -damp
    a = np.zeros(delay + 1)
    a[0], a[1] = 1.0, -damp
    a[delay] += -feedback * (1 - damp)
    return b, a


def _allpass_filter(delay: int, g: float = ALLPASS_FEEDBACK):
    # Freeverb's all-pass: y[n] = -x[n] + (1+g) x[n-D] + g y[n-D]
    b = np.zeros(delay + 1)
    b[0], b[delay] = -1.0, 1.0 + g
    a = np.zeros(delay + 1)
    a[0], a[delay] = 1.0, -g
    return b, a


class _Network:
    def __init__(self, sample_rate: int, room_size: float, spread: int):
        fb = comb_feedback(room_size)
        self.combs = [_comb_filter(_scaled(d + spread, sample_rate), fb, DAMPING) for d in COMB_TUNING]
        self.allpasses = [_allpass_filter(_scaled(d + spread, sample_rate)) for d in ALLPASS_TUNING]
        self.comb_state = [np.zeros(max(len(b), len(a)) - 1) for b, a in self.combs]
        self.ap_state = [np.zeros(max(len(b), len(a)) - 1) for b, a in self.allpasses]

    def process(self, x: np.ndarray) -> np.ndarray:
        x = x * FIXED_GAIN
        acc = np.zeros(len(x))
        for i, (b, a) in enumerate(self.combs):
            y, self.comb_state[i] = lfilter(b, a, x, zi=self.comb_state[i])
            acc += y
        for i, (b, a) in enumerate(self.allpasses):
            acc, self.ap_state[i] = lfilter(b, a, acc, zi=self.ap_state[i])
        return acc * SCALE_WET


def apply_reverb(buf: AudioBuffer, room_size: float, dry_wet: float) -> AudioBuffer:
    """Mix ``(1 - dry_wet) * dry + dry_wet * wet``; the wet tail extends the output."""
    if dry_wet == 0:
        return buf.with_samples(buf.samples.copy())
    sr = buf.sample_rate
    nets = [_Network(sr, room_size, STEREO_SPREAD * ch) for ch in range(buf.channels)]
    floor = 10 ** (TAIL_FLOOR_DB / 20)
    chunks = [np.stack([net.process(ch) for net, ch in zip(nets, buf.samples)]) * dry_wet]
    block = np.zeros(sr // 2)
    while True:
        tail = np.stack([net.process(block) for net in nets]) * dry_wet
        loud = np.nonzero(np.max(np.abs(tail), axis=0) >= floor)[0]
        if len(loud) == 0:
            break
        chunks.append(tail[:, : loud[-1] + 1])
        if loud[-1] + 1 < len(block):
            break
    wet = np.concatenate(chunks, axis=1)
    out = wet
    out[:, : buf.frames] += (1 - dry_wet) * buf.samples
    return buf.with_samples(out)
