"""Per-asset acoustic metadata: loudness, onset, pitch and duration."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dsp.buffer import AudioBuffer
from .dsp.loudness import measure_loudness
from .dsp.wavio import AudioFileError, read_wav

FRAME_S = 0.010
ONSET_DROP_DB = 20.0
PITCH_MIN_HZ = 40.0
PITCH_MAX_HZ = 2000.0
PITCH_OFFSET_S = 0.050
PITCH_WINDOW_S = 0.050
VOICING_THRESHOLD = 0.5


class SilentAudioError(ValueError):
    pass


@dataclass(frozen=True)
class SoundObject:
    name: str
    description: str
    loudness: float
    onset_ms: float
    pitch_hz: float | None  # None means unpitched
    duration_s: float
    source_path: str
    sample_rate: int

    @property
    def pitch_text(self) -> str:
        return "unpitched" if self.pitch_hz is None else f"{self.pitch_hz:.3f}"

    def to_record(self) -> str:
        return "\n".join(
            [
                f"name: {self.name}",
                f"description: {self.description}",
                f"loudness: {self.loudness:.3f}",
                f"onset_ms: {self.onset_ms:.3f}",
                f"pitch_hz: {self.pitch_text}",
                f"duration_s: {self.duration_s:.3f}",
                f"source_path: {self.source_path}",
                f"sample_rate: {self.sample_rate}",
            ]
        )

    @classmethod
    def from_record(cls, text: str) -> SoundObject:
        fields = {}
        for line in text.splitlines():
            if line.strip():
                key, _, value = line.partition(":")
                fields[key.strip()] = value.strip()
        pitch = fields["pitch_hz"]
        return cls(
            name=fields["name"],
            description=fields["description"],
            loudness=float(fields["loudness"]),
            onset_ms=float(fields["onset_ms"]),
            pitch_hz=None if pitch == "unpitched" else float(pitch),
            duration_s=float(fields["duration_s"]),
            source_path=fields["source_path"],
            sample_rate=int(fields["sample_rate"]),
        )


def describe_name(stem: str) -> str:
    return re.sub(r"\s+", " ", re.sub(r"[_\-]+", " ", stem)).strip()


def _frame_rms(x: np.ndarray, frame: int) -> np.ndarray:
    n = len(x) // frame
    if n == 0:
        return np.array([np.sqrt(np.mean(x * x))]) if len(x) else np.zeros(0)
    frames = x[: n * frame].reshape(n, frame)
    rms = np.sqrt(np.mean(frames * frames, axis=1))
    rest = x[n * frame :]
    if len(rest):
        rms = np.append(rms, np.sqrt(np.mean(rest * rest)))
    return rms


def detect_onset(buf: AudioBuffer) -> float:
    """Start (ms) of the first 10 ms frame within 20 dB of the loudest frame."""
    frame = max(1, round(FRAME_S * buf.sample_rate))
    # power summed over channels so a one-sided stereo event still registers
    x = np.sqrt(np.sum(buf.samples**2, axis=0))
    rms = _frame_rms(x, frame)
    peak = rms.max() if len(rms) else 0.0
    if peak <= 0:
        raise SilentAudioError("cannot detect onset of silent audio")
    first = int(np.argmax(rms >= peak * 10 ** (-ONSET_DROP_DB / 20)))
    return first * frame * 1000.0 / buf.sample_rate


def _nccf(x: np.ndarray, window: int, lags: np.ndarray) -> np.ndarray:
    ref = x[:window]
    e0 = float(ref @ ref)
    out = np.zeros(len(lags))
    for i, lag in enumerate(lags):
        seg = x[lag : lag + window]
        denom = np.sqrt(e0 * float(seg @ seg))
        if denom > 0:
            out[i] = float(ref @ seg) / denom
    return out


def detect_pitch(buf: AudioBuffer, onset_ms: float | None = None) -> float | None:
    """Fundamental in Hz by normalised autocorrelation, or ``None`` if unpitched.

    The analysis window is centred 50 ms after the onset.
    """
    sr = buf.sample_rate
    x = buf.mono()
    if onset_ms is None:
        onset_ms = detect_onset(buf) if np.any(x) else 0.0
    min_lag = max(2, int(np.floor(sr / PITCH_MAX_HZ)))
    max_lag = int(np.ceil(sr / PITCH_MIN_HZ))
    window = round(PITCH_WINDOW_S * sr)
    if len(x) < window + max_lag + 2:
        # short input: halve the window and cap the lag range to what fits
        window = len(x) // 2
        max_lag = min(max_lag, len(x) - window - 2)
        if max_lag <= min_lag:
            return None
    span = window + max_lag + 2
    centre = round((onset_ms / 1000.0 + PITCH_OFFSET_S) * sr)
    start = int(np.clip(centre - span // 2, 0, len(x) - span))
    seg = x[start : start + span]
    lags = np.arange(min_lag - 1, max_lag + 2)
    r = _nccf(seg, window, lags)
    inner = r[1:-1]
    best = float(inner.max()) if len(inner) else 0.0
    if best < VOICING_THRESHOLD:
        return None
    # earliest local maximum close to the global one avoids octave-down picks
    for i in range(1, len(r) - 1):
        if r[i] >= 0.9 * best and r[i] >= r[i - 1] and r[i] >= r[i + 1]:
            break
    a, b, c = r[i - 1], r[i], r[i + 1]
    denom = a - 2 * b + c
    shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
    hz = sr / (lags[i] + shift)
    if not PITCH_MIN_HZ <= hz <= PITCH_MAX_HZ:
        return None
    return float(hz)


def analyse(buf: AudioBuffer, path: str | Path) -> SoundObject:
    path = Path(path)
    if buf.frames == 0 or not np.any(buf.samples):
        raise SilentAudioError(f"{path}: zero or silent audio")
    loudness = measure_loudness(buf)
    if loudness is None:
        raise SilentAudioError(f"{path}: zero or silent audio")
    onset = detect_onset(buf)
    return SoundObject(
        name=path.stem,
        description=describe_name(path.stem),
        loudness=loudness,
        onset_ms=onset,
        pitch_hz=detect_pitch(buf, onset),
        duration_s=buf.duration,
        source_path=str(path),
        sample_rate=buf.sample_rate,
    )


def extract_metadata(path: str | Path) -> SoundObject:
    """Read an audio file and build its sound object.

    Raises AudioFileError for unreadable files and SilentAudioError for
    empty or all-zero audio.
    """
    try:
        buf = read_wav(path)
    except FileNotFoundError as exc:
        raise AudioFileError(f"{path}: file not found") from exc
    return analyse(buf, path)
